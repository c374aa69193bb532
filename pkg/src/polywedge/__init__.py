"""Discrete exterior calculus on polygonal surface meshes.

Chains and cochains on oriented polygonal 2-pseudomanifolds, the
boundary and coboundary operators, a cup (wedge) product defined on
faces with any number of sides, exact real cohomology, and a harness of
property checks for the product's algebraic identities.
"""

from .complex import (
    Chain,
    IncidenceMatrix,
    PolygonalComplex,
    apply_boundary,
    boundary_matrix,
    build_complex,
    coherently_orient,
    star_cells,
)
from .cohomology import CohomologyReport, betti_numbers, cohomologous, exact_rank, is_exact
from .errors import *  # noqa: F403
from .forms import DiscreteForm, add, evaluate, exterior_derivative, is_closed, scale
from .meshio import (
    RawMesh,
    load_complex,
    load_form,
    parse_obj,
    parse_off,
    read_form,
    serialize_obj,
    serialize_off,
    write_form,
)
from .verify import PropertyReport, check_property, gen_complex, gen_form
from .wedge import (
    FaceLocalEdgeView,
    cubical_cup_values,
    cup,
    cup00,
    cup01,
    cup02,
    cup11,
    cup_values,
    face_local_view,
    simplicial_cup_values,
)
from .whitney import whitney_cup_triangle_oracle

__version__ = "0.1.0"
