"""Exact Whitney-form integration on the reference triangle.

Wilson's cup product of two cochains on a simplex ``c`` integrates the
wedge of their Whitney forms over ``c``. Here everything is done with
rational arithmetic: forms are polynomials in the barycentric coordinates
``x0, x1, x2`` times wedge monomials ``dx_i ∧ dx_j ...``, and integrals
use the Dirichlet formula::

    ∫_simplex x0^a0 ... xk^ak  dx1 ... dxk = a0! ... ak! / (a0 + ... + ak + k)!

in the chart ``(x1, ..., xk)`` of the k-simplex ``(v0, ..., vk)``, with
``x0 = 1 - x1 - ... - xk``. This chart is positively oriented for the
vertex order ``(v0, ..., vk)`` and gives the simplex unit measure for its
own Whitney form, which is the normalization the simplicial cup
coefficients assume.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial

from .errors import UnsupportedDegreePair

__all__ = ["whitney_form", "wedge", "integrate", "whitney_cup_triangle_oracle"]

# A polynomial: {(a0, a1, a2): Fraction}. A form: {sorted index tuple: polynomial}.


def _poly_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c != 0}


def _poly_add(p, q, sign=1):
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + sign * c
    return {m: c for m, c in out.items() if c != 0}


def _var(i):
    m = [0, 0, 0]
    m[i] = 1
    return {tuple(m): Fraction(1)}


def _merge_sign(left, right):
    """Sign of sorting ``left + right``, or 0 if an index repeats."""
    if set(left) & set(right):
        return 0
    seq = list(left) + list(right)
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


def wedge(f, g):
    out = {}
    for k1, p1 in f.items():
        for k2, p2 in g.items():
            s = _merge_sign(k1, k2)
            if s == 0:
                continue
            key = tuple(sorted(k1 + k2))
            out[key] = _poly_add(out.get(key, {}), _poly_mul(p1, p2), s)
    return {k: p for k, p in out.items() if p}


def whitney_form(cell):
    """Whitney form of the oriented simplex ``cell`` (vertex indices in 0..2).

    ``W(v0..vp) = p! * sum_i (-1)^i x_{vi} dx_v0 ∧ .. (omit i) .. ∧ dx_vp``.
    """
    cell = tuple(int(v) for v in cell)
    if len(set(cell)) != len(cell) or not all(0 <= v <= 2 for v in cell):
        raise ValueError(f"{cell} is not a simplex of the reference triangle")
    p = len(cell) - 1
    out = {}
    for i, v in enumerate(cell):
        rest = cell[:i] + cell[i + 1:]
        sign = (-1) ** i * _perm_sign(rest) * factorial(p)
        key = tuple(sorted(rest))
        out[key] = _poly_add(out.get(key, {}), _var(v), sign)
    return {k: p for k, p in out.items() if p}


def _perm_sign(seq):
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def _pullback_coefficient(key, dim):
    """Coefficient of ``dx1 ∧ ... ∧ dx_dim`` in the pullback of ``dx_key``.

    On the face ``(v0, ..., v_dim)`` we have ``x_m = 0`` for ``m > dim``
    and ``dx0 = -(dx1 + ... + dx_dim)``.
    """
    if len(key) != dim:
        raise ValueError("form degree must equal the cell dimension")
    if dim == 0:
        return 1
    # expand each differential into chart differentials 1..dim
    expansions = []
    for i in key:
        if i == 0:
            expansions.append([(j, -1) for j in range(1, dim + 1)])
        elif i <= dim:
            expansions.append([(i, 1)])
        else:
            return 0
    total = 0
    for choice in product(*expansions):
        idx = [j for j, _ in choice]
        if len(set(idx)) != dim:
            continue
        coeff = 1
        for _, s in choice:
            coeff *= s
        total += coeff * _perm_sign(idx)
    return total


def _monomial_integral(m, dim):
    if any(m[i] for i in range(dim + 1, 3)):
        return Fraction(0)
    num = 1
    for i in range(dim + 1):
        num *= factorial(m[i])
    return Fraction(num, factorial(sum(m[: dim + 1]) + dim))


def integrate(form, dim):
    """Integral of ``form`` over the reference simplex ``(v0, ..., v_dim)``."""
    total = Fraction(0)
    for key, poly in form.items():
        c = _pullback_coefficient(key, dim)
        if c == 0:
            continue
        if dim == 0:
            # evaluation at v0: x0 = 1, x1 = x2 = 0
            total += c * sum((coef for m, coef in poly.items() if m[1] == 0 and m[2] == 0), Fraction(0))
        else:
            total += c * sum((coef * _monomial_integral(m, dim) for m, coef in poly.items()), Fraction(0))
    return total


def _as_cell(x):
    return (int(x),) if isinstance(x, int) else tuple(int(v) for v in x)


def whitney_cup_triangle_oracle(p: int, q: int, i, j) -> Fraction:
    """Exact ``∫_c W(i) ∧ W(j)`` over the reference (p+q)-simplex ``c``.

    ``i`` is a ``p``-simplex and ``j`` a ``q``-simplex of the reference
    triangle ``(0, 1, 2)``, given as vertex tuples (a vertex may be a
    bare int). The result is the value of Wilson's cup of the two basis
    cochains on ``c = (0, ..., p+q)``.
    """
    if p < 0 or q < 0 or p + q > 2:
        raise UnsupportedDegreePair(f"degrees ({p}, {q}) are not supported")
    ci, cj = _as_cell(i), _as_cell(j)
    if len(ci) != p + 1 or len(cj) != q + 1:
        raise ValueError(f"basis cells {ci}, {cj} do not have degrees ({p}, {q})")
    return integrate(wedge(whitney_form(ci), whitney_form(cj)), p + q)
