"""Betti numbers and the cup pairing on a quad torus."""
import numpy as np

from polywedge import (
    DiscreteForm,
    betti_numbers,
    build_complex,
    cohomologous,
    cup,
    exterior_derivative,
    gen_form,
    is_closed,
    is_exact,
)

spacer = "_" * 60

# 4x4 grid of quads with opposite sides glued; vertex 4*i + j sits at (i, j)
vid = lambda i, j: 4 * (i % 4) + (j % 4)
faces = [(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)) for i in range(4) for j in range(4)]
c = build_complex(faces, 16)
print(betti_numbers(c).to_text())

print(spacer)


def ring_cocycle(direction):
    # +1 on every edge crossing from ring 0 to ring 1 in one grid direction
    vals = np.zeros(c.n_edges)
    for e, (t, h) in enumerate(c.edges):
        ti, hi = divmod(t, 4), divmod(h, 4)
        if ti[1 - direction] != hi[1 - direction]:
            continue
        step = (ti[direction], hi[direction])
        vals[e] = {(0, 1): 1.0, (1, 0): -1.0}.get(step, 0.0)
    return DiscreteForm(1, vals, c)


a, b = ring_cocycle(0), ring_cocycle(1)
print("\nclosed:", is_closed(a), is_closed(b))
print("exact:", bool(is_exact(a)), bool(is_exact(b)))
print("a ~ b:", cohomologous(a, b))

print(spacer)
print("\nsum over all faces of a^b:", cup(a, b).values.sum())
print("sum over all faces of b^a:", cup(b, a).values.sum())
x = gen_form(0, c, 0)
moved = a + exterior_derivative(x)
print("after adding an exact form to a:", cup(moved, b).values.sum())
