"""The polygonal cup (wedge) product.

For a ``p``-gon face ``(v_0, ..., v_{p-1})`` with face-local edge values
``alpha(i) = alpha(v_i, v_{i+1})``::

    (a0 ∪ b0)(v)     = a(v) b(v)
    (a0 ∪ b1)(vi,vj) = (a(vi) + a(vj)) / 2 * b(vi,vj)
    (a0 ∪ b2)(f)     = mean_i a(v_i) * b(f)
    (a1 ∪ b1)(f)     = sum_{s=1}^{(p-1)//2} (1/2 - s/p)
                           * sum_i a(i) (b(i+s) - b(i-s))

Triangles and quadrilaterals reproduce the simplicial (coefficient 1/6)
and cubical (coefficient 1/4) products; :func:`simplicial_cup_values`
and :func:`cubical_cup_values` implement those two independently for
cross-checking.

The ``*_values`` functions work on raw arrays of any numeric dtype,
including object arrays of :class:`fractions.Fraction` for exact
evaluation. The :class:`DiscreteForm` wrappers use float64.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .complex import PolygonalComplex
from .errors import ComplexMismatch, DegreeOverflow
from .forms import DiscreteForm

__all__ = [
    "FaceLocalEdgeView",
    "face_local_view",
    "cup_coefficient",
    "cup11_face",
    "cup_values",
    "cup",
    "cup00",
    "cup01",
    "cup02",
    "cup11",
    "simplicial_cup_values",
    "cubical_cup_values",
]


@dataclass(frozen=True)
class FaceLocalEdgeView:
    """Edges of one face in slot order with their incidence signs.

    Slot ``i`` is the oriented side ``(v_i, v_{(i+1) % p})``, equal to
    ``signs[i] * edges[edge_ids[i]]``.
    """

    face: int
    edge_ids: tuple[int, ...]
    signs: tuple[int, ...]

    def read(self, values) -> np.ndarray:
        """Face-local values of a 1-form given its stored edge values."""
        values = np.asarray(values)
        return values[list(self.edge_ids)] * np.asarray(self.signs, dtype=values.dtype)


def face_local_view(c: PolygonalComplex, face: int) -> FaceLocalEdgeView:
    return FaceLocalEdgeView(face, c.face_edges[face], c.face_signs[face])


def cup_coefficient(p: int, s: int) -> Fraction:
    """Weight ``1/2 - s/p`` of offset ``s`` on a ``p``-gon."""
    return Fraction(p - 2 * s, 2 * p)


def _weight(p, s, exact):
    # (p - 2s) / 2p as one correctly rounded division
    return cup_coefficient(p, s) if exact else (p - 2 * s) / (2 * p)


def _cup11_rows(al, bl, exact):
    """Row-wise product of face-local 1-form values, shape (n, p) -> (n,)."""
    p = al.shape[1]
    out = np.zeros(al.shape[0], dtype=object if exact else np.float64)
    if exact:
        out[:] = Fraction(0)
    for s in range(1, (p - 1) // 2 + 1):
        diff = np.roll(bl, -s, axis=1) - np.roll(bl, s, axis=1)
        out = out + _weight(p, s, exact) * (al * diff).sum(axis=1)
    return out


def cup11_face(alpha_local, beta_local):
    """Product of two 1-forms on a single face from face-local slot values."""
    al = np.asarray(alpha_local)
    bl = np.asarray(beta_local)
    if al.shape != bl.shape or al.ndim != 1:
        raise ValueError("face-local values must be equal-length vectors")
    exact = al.dtype == object or bl.dtype == object
    return _cup11_rows(al[None, :], bl[None, :], exact)[0]


def _is_exact(*arrays):
    return any(np.asarray(x).dtype == object for x in arrays)


def _empty(n, exact):
    return np.empty(n, dtype=object) if exact else np.empty(n, dtype=np.float64)


def _cup00(c, a, b):
    return a * b


def _cup01(c, a, b):
    edges = np.asarray(c.edges, dtype=np.intp).reshape(-1, 2)
    return (a[edges[:, 0]] + a[edges[:, 1]]) / 2 * b


def _cup02(c, a, b):
    exact = _is_exact(a, b)
    out = _empty(c.n_faces, exact)
    for p, (ids, verts, _, _) in c.face_groups.items():
        out[ids] = a[verts].sum(axis=1) / p * b[ids]
    return out


def _cup11(c, a, b):
    exact = _is_exact(a, b)
    out = _empty(c.n_faces, exact)
    for p, (ids, _, eids, signs) in c.face_groups.items():
        sg = signs.astype(object) if exact else signs
        out[ids] = _cup11_rows(a[eids] * sg, b[eids] * sg, exact)
    return out


_KERNELS = {(0, 0): _cup00, (0, 1): _cup01, (0, 2): _cup02, (1, 1): _cup11}


def cup_values(c: PolygonalComplex, k: int, a, l: int, b) -> np.ndarray:
    """Cup product on raw value arrays; returns values on (k+l)-cells."""
    if k + l > 2:
        raise DegreeOverflow(f"cup of degrees {k} and {l} exceeds 2")
    a = np.asarray(a)
    b = np.asarray(b)
    if (k, l) in _KERNELS:
        return _KERNELS[(k, l)](c, a, b)
    # (1,0) and (2,0): swap; the sign (-1)^(k*l) is +1 here
    return _KERNELS[(l, k)](c, b, a)


def cup(a: DiscreteForm, b: DiscreteForm) -> DiscreteForm:
    """Polygonal cup product of a k-form and an l-form, k + l <= 2."""
    if a.complex is not b.complex:
        raise ComplexMismatch("forms live on different complexes")
    k, l = a.degree, b.degree
    if k + l > 2:
        raise DegreeOverflow(f"cup of degrees {k} and {l} exceeds 2")
    return DiscreteForm(k + l, cup_values(a.complex, k, a.values, l, b.values), a.complex)


def _typed(a, b, k, l):
    if a.degree != k or b.degree != l:
        raise ValueError(f"expected degrees ({k}, {l}), got ({a.degree}, {b.degree})")
    return cup(a, b)


def cup00(a: DiscreteForm, b: DiscreteForm) -> DiscreteForm:
    return _typed(a, b, 0, 0)


def cup01(a: DiscreteForm, b: DiscreteForm) -> DiscreteForm:
    return _typed(a, b, 0, 1)


def cup02(a: DiscreteForm, b: DiscreteForm) -> DiscreteForm:
    return _typed(a, b, 0, 2)


def cup11(a: DiscreteForm, b: DiscreteForm) -> DiscreteForm:
    return _typed(a, b, 1, 1)


# -- reference products on triangles and quadrilaterals ----------------------

def _reference_cup_values(c, k, a, l, b, p_req, w02, w11):
    if k + l > 2:
        raise DegreeOverflow(f"cup of degrees {k} and {l} exceeds 2")
    a = np.asarray(a)
    b = np.asarray(b)
    if k > l:
        k, l, a, b = l, k, b, a
    exact = _is_exact(a, b)
    w02 = w02 if exact else float(w02)
    w11 = w11 if exact else float(w11)

    def edge_val(x, vi, vj):
        e, s = c.edge_sign(vi, vj)
        return s * x[e]

    if (k, l) == (0, 0):
        return np.array([a[v] * b[v] for v in range(c.vertex_count)], dtype=a.dtype)
    if (k, l) == (0, 1):
        out = [(a[t] + a[h]) / 2 * edge_val(b, t, h) for t, h in c.edges]
        return np.array(out, dtype=object if exact else np.float64)
    out = []
    for fid, verts in enumerate(c.faces):
        if len(verts) != p_req:
            raise ValueError(f"face {fid} has {len(verts)} vertices, expected {p_req}")
        n = p_req
        if (k, l) == (0, 2):
            out.append(w02 * sum(a[v] for v in verts) * b[fid])
        else:
            total = 0
            for i in range(n):
                vi, vi1, vi2, vim = verts[i], verts[(i + 1) % n], verts[(i + 2) % n], verts[(i - 1) % n]
                total += edge_val(a, vi, vi1) * (edge_val(b, vi1, vi2) - edge_val(b, vim, vi))
            out.append(w11 * total)
    return np.array(out, dtype=object if exact else np.float64)


def simplicial_cup_values(c: PolygonalComplex, k: int, a, l: int, b) -> np.ndarray:
    """Cup product on an all-triangle complex from the simplicial formulas."""
    return _reference_cup_values(c, k, a, l, b, 3, Fraction(1, 3), Fraction(1, 6))


def cubical_cup_values(c: PolygonalComplex, k: int, a, l: int, b) -> np.ndarray:
    """Cup product on an all-quadrilateral complex from the cubical formulas."""
    return _reference_cup_values(c, k, a, l, b, 4, Fraction(1, 4), Fraction(1, 4))
