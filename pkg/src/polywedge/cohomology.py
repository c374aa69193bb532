"""Real cohomology of polygonal complexes.

Ranks are computed exactly over the rationals; floating point only
enters when recovering a primitive of a user-supplied float form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple

import numpy as np

from .complex import IncidenceMatrix, PolygonalComplex, boundary_matrix
from .errors import DegreeMismatch, DegreeOutOfRange, NotClosed
from .forms import DiscreteForm, exterior_derivative, is_closed

__all__ = [
    "CohomologyReport",
    "Exactness",
    "exact_rank",
    "betti_numbers",
    "is_exact",
    "cohomologous",
    "EXACT_TOL",
]

EXACT_TOL = 1e-8


@dataclass(frozen=True)
class CohomologyReport:
    betti: tuple[int, int, int]
    rank_d0: int
    rank_d1: int
    euler: int

    def to_text(self) -> str:
        b0, b1, b2 = self.betti
        return (
            f"b0={b0} b1={b1} b2={b2}\n"
            f"rank_d0={self.rank_d0} rank_d1={self.rank_d1}\n"
            f"euler={self.euler}\n"
        )


class Exactness(NamedTuple):
    exact: bool
    primitive: DiscreteForm | None
    residual: float

    def __bool__(self):
        return self.exact


def _integer_rows(m):
    """Sparse rows ``{col: int}`` of an integer matrix."""
    if isinstance(m, IncidenceMatrix):
        rows = [dict() for _ in range(m.rows)]
        for (r, c), v in m.entries.items():
            if v:
                rows[r][c] = int(v)
        return rows
    arr = np.asarray(m, dtype=object)
    if arr.ndim != 2:
        raise ValueError("exact_rank expects a 2-d matrix")
    rows = []
    for row in arr:
        d = {}
        for c, v in enumerate(row):
            if v != 0:
                if int(v) != v:
                    raise ValueError("exact_rank expects integer entries")
                d[c] = int(v)
        rows.append(d)
    return rows


def _normalize(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _rank_of_rows(rows) -> int:
    """Fraction-free row reduction of sparse integer rows.

    Each incoming row is reduced against the pivot rows found so far by
    cross-multiplication ``row := p * row - r * pivot`` followed by
    division by the row content, so entries stay integral and small.
    """
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = _normalize(row)
                break
            a, b = piv[col], row[col]
            new = {c: a * v for c, v in row.items()}
            for c, v in piv.items():
                new[c] = new.get(c, 0) - b * v
            row = _normalize({c: v for c, v in new.items() if v})
    return len(pivots)


def exact_rank(m) -> int:
    """Rank over the rationals of an integer matrix, with no tolerance."""
    return _rank_of_rows(_integer_rows(m))


def betti_numbers(c: PolygonalComplex) -> CohomologyReport:
    rank_d0 = exact_rank(boundary_matrix(c, 1))
    rank_d1 = exact_rank(boundary_matrix(c, 2))
    b0 = c.vertex_count - rank_d0
    b1 = c.n_edges - rank_d0 - rank_d1
    b2 = c.n_faces - rank_d1
    return CohomologyReport((b0, b1, b2), rank_d0, rank_d1, c.euler_characteristic)


def _rational_column(values):
    fr = [Fraction(float(v)) for v in values]
    den = 1
    for f in fr:
        den = lcm(den, f.denominator)
    return [int(f * den) for f in fr]


def _in_image_exact(m: IncidenceMatrix, values) -> bool:
    # a = d x is solvable iff rank [d | a] == rank d, with d = m.T
    rows = [dict() for _ in range(m.cols)]
    for (r, c), v in m.entries.items():
        rows[c][r] = v
    base = _rank_of_rows([dict(r) for r in rows])
    col = _rational_column(values)
    for i, v in enumerate(col):
        if v:
            rows[i][m.rows] = v
    return _rank_of_rows(rows) == base


def is_exact(a: DiscreteForm, tol: float = EXACT_TOL, *, exact: bool = False) -> Exactness:
    """Decide whether ``a = d x`` for some form ``x`` of one degree lower.

    The primitive is the minimum-norm least-squares solution. With
    ``exact=True`` the decision is made by an exact rank test over the
    rationals (the float values are taken as exact binary fractions); the
    primitive and residual are still reported from the least-squares fit.
    """
    if a.degree not in (1, 2):
        raise DegreeOutOfRange(f"exactness is defined for degrees 1 and 2, got {a.degree}")
    m = boundary_matrix(a.complex, a.degree)
    dmat = m.toarray().T.astype(np.float64)
    x, *_ = np.linalg.lstsq(dmat, a.values, rcond=None)
    prim = DiscreteForm(a.degree - 1, x, a.complex)
    res = exterior_derivative(prim).values - a.values
    residual = float(np.max(np.abs(res))) if res.size else 0.0
    if exact:
        ok = _in_image_exact(m, a.values)
    else:
        ok = residual <= tol
    return Exactness(ok, prim if ok else None, residual)


def cohomologous(a: DiscreteForm, b: DiscreteForm, tol: float = EXACT_TOL) -> bool:
    """Whether two closed forms differ by an exact form."""
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees {a.degree} and {b.degree} differ")
    for name, f in (("first", a), ("second", b)):
        if not is_closed(f, tol):
            raise NotClosed(f"{name} form is not closed")
    diff = a - b
    if diff.degree == 0:
        # no (-1)-forms: only the zero 0-form is exact
        return bool(np.max(np.abs(diff.values), initial=0.0) <= tol)
    return is_exact(diff, tol).exact
