"""Boundary and derivative on a triangle glued to a quad."""
import numpy as np

from polywedge import Chain, DiscreteForm, apply_boundary, boundary_matrix, build_complex, evaluate, exterior_derivative

spacer = "_" * 60

# A triangle (0, 1, 2) and a quad (2, 1, 3, 4) sharing the edge 1-2.
# Edges are given explicitly so their ids and directions are easy to read off.
edges = [(0, 1), (1, 2), (2, 0), (1, 3), (3, 4), (4, 2)]
c = build_complex([(0, 1, 2), (2, 1, 3, 4)], 5, edges=edges)
print("V, E, F =", c.n_vertices, c.n_edges, c.n_faces)
print("on the boundary:", c.boundary_flag)

print(spacer)
print("\nThe boundary of the quad, as a chain on the six edges:")
print(boundary_matrix(c, 2).column(1))
print("The quad walks edge 1 backwards, so it gets -1 there.")

print(spacer)
beta = DiscreteForm(1, [0.5, -1.25, 2.0, 0.125, 3.5, -0.75], c)
d = exterior_derivative(beta)
print("\nbeta =", beta.values)
print("d beta =", d.values)
b = beta.values
print("-b1 + b3 + b4 + b5 =", -b[1] + b[3] + b[4] + b[5])

# Stokes: integrating d beta over a face is integrating beta over its boundary
quad = Chain.unit(c, 2, 1)
print("\n<d beta, quad> =", evaluate(d, quad), " <beta, boundary quad> =", evaluate(beta, apply_boundary(c, quad)))

print(spacer)
x = DiscreteForm(0, np.arange(5.0) ** 2, c)
print("\nd d x =", exterior_derivative(exterior_derivative(x)).values)
