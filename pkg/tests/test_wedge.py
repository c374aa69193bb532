from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polywedge import (
    ComplexMismatch,
    DegreeOverflow,
    DiscreteForm,
    build_complex,
    cup,
    cup00,
    cup01,
    cup02,
    cup11,
    cup_values,
    exterior_derivative,
    face_local_view,
    gen_complex,
    gen_form,
)
from polywedge.wedge import cubical_cup_values, cup11_face, cup_coefficient, simplicial_cup_values


def polygon(p):
    """Single p-gon whose edges are stored along the face orientation."""
    return build_complex([tuple(range(p))], p, edges=[(i, (i + 1) % p) for i in range(p)])


def indicator(c, degree, i):
    v = np.zeros(c.cell_count(degree))
    v[i] = 1.0
    return DiscreteForm(degree, v, c)


# Independent Fraction oracle: the product formula read straight off the
# definition, one face at a time, with edge values looked up by vertex pair.
def oracle_cup11(c, a, b):
    def val(x, t, h):
        for e, (et, eh) in enumerate(c.edges):
            if (et, eh) == (t, h):
                return Fraction(x[e])
            if (et, eh) == (h, t):
                return -Fraction(x[e])
        raise KeyError((t, h))

    out = []
    for f in c.faces:
        p = len(f)
        al = [val(a, f[i], f[(i + 1) % p]) for i in range(p)]
        bl = [val(b, f[i], f[(i + 1) % p]) for i in range(p)]
        total = Fraction(0)
        for s in range(1, (p - 1) // 2 + 1):
            w = Fraction(1, 2) - Fraction(s, p)
            total += w * sum(al[i] * (bl[(i + s) % p] - bl[(i - s) % p]) for i in range(p))
        out.append(total)
    return out


def test_cup00():
    c = build_complex([(0, 1, 2)], 3)
    a = DiscreteForm(0, [2.0, 0.0, 1.0], c)
    b = DiscreteForm(0, [3.0, 5.0, 1.0], c)
    assert cup00(a, b).values.tolist() == [6.0, 0.0, 1.0]
    assert np.array_equal(cup00(a, b).values, cup00(b, a).values)
    assert np.array_equal(cup00(DiscreteForm.constant(c), b).values, b.values)


def test_cup01_substitution():
    c = build_complex([(0, 1, 2)], 3)
    a = DiscreteForm(0, [1.0, 3.0, 0.0], c)
    b = DiscreteForm(1, [2.0, 0.0, 0.0], c)  # edge 0 = (0, 1)
    assert cup01(a, b).values[0] == 4.0
    assert np.array_equal(cup01(DiscreteForm.constant(c, 2.5), b).values, 2.5 * b.values)


def test_cup02_substitution():
    c = build_complex([(0, 1, 2)], 3)
    a = DiscreteForm(0, [1.0, 2.0, 3.0], c)
    b = DiscreteForm(2, [3.0], c)
    assert cup02(a, b).values[0] == 6.0


def test_cup02_unit_on_pentagon(pentagon):
    b = DiscreteForm(2, [0.7], pentagon)
    assert cup02(DiscreteForm.constant(pentagon), b).values[0] == 0.7


@pytest.mark.parametrize(
    "p, expected",
    [(3, Fraction(1, 6)), (4, Fraction(1, 4)), (5, Fraction(3, 10))],
)
def test_cup11_adjacent_indicators(p, expected):
    c = polygon(p)
    a, b = indicator(c, 1, 0), indicator(c, 1, 1)
    assert cup11(a, b).values[0] == float(expected)
    assert cup11(b, a).values[0] == -float(expected)
    frac = lambda f: np.array([Fraction(x) for x in f.values], dtype=object)
    exact = cup_values(c, 1, frac(a), 1, frac(b))
    assert exact[0] == expected


def test_pentagon_oracle_by_hand():
    # offset 1 weight 3/10 pairs slot 0 with slot 1; offset 2 (weight 1/10) never reaches slot 1
    assert cup_coefficient(5, 1) == Fraction(3, 10)
    assert cup_coefficient(5, 2) == Fraction(1, 10)
    c = polygon(5)
    assert oracle_cup11(c, indicator(c, 1, 0).values, indicator(c, 1, 1).values) == [Fraction(3, 10)]


def test_even_polygon_excludes_antipodal_offset():
    assert cup_coefficient(6, 3) == 0
    c = polygon(6)
    # slots 0 and 3 are antipodal, so their product vanishes
    assert cup11(indicator(c, 1, 0), indicator(c, 1, 3)).values[0] == 0.0


def test_cup11_matches_fraction_oracle():
    for seed in range(6):
        c = gen_complex(seed, "mixed")
        a, b = gen_form(10 + seed, c, 1), gen_form(20 + seed, c, 1)
        ref = oracle_cup11(c, a.values, b.values)
        got = cup11(a, b).values
        assert np.max(np.abs(got - np.array([float(x) for x in ref]))) <= 1e-12


def test_dispatch_and_errors(triquad):
    a0, a1, a2 = (gen_form(q, triquad, q) for q in (0, 1, 2))
    assert cup(a1, a0).degree == 1
    assert np.array_equal(cup(a1, a0).values, cup(a0, a1).values)
    assert np.array_equal(cup(a2, a0).values, cup(a0, a2).values)
    with pytest.raises(DegreeOverflow):
        cup(a1, a2)
    with pytest.raises(DegreeOverflow):
        cup(a2, a2)
    other = build_complex([(0, 1, 2), (2, 1, 3, 4)], 5)
    with pytest.raises(ComplexMismatch):
        cup(a0, gen_form(0, other, 0))


def test_unit_is_exact():
    c = gen_complex(11, "mixed")
    one = DiscreteForm.constant(c)
    for q in (0, 1, 2):
        a = gen_form(q, c, q)
        assert np.array_equal(cup(one, a).values, a.values)
        assert np.array_equal(cup(a, one).values, a.values)


def test_zero_factor():
    c = gen_complex(12, "mixed")
    for k, l in [(0, 0), (0, 1), (0, 2), (1, 1)]:
        out = cup(gen_form(1, c, k), DiscreteForm.zero(c, l))
        assert not out.values.any()


def _leibniz01_by_expansion(alpha, beta_local):
    """Both sides of the (0,1) Leibniz rule on one face, in Fractions.

    ``alpha`` are vertex values and ``beta_local`` face-local edge values
    in slot order.
    """
    n = len(alpha)
    lhs = sum((alpha[i] + alpha[(i + 1) % n]) / 2 * beta_local[i] for i in range(n))
    dalpha = [alpha[(i + 1) % n] - alpha[i] for i in range(n)]
    first = Fraction(0)
    for s in range(1, (n - 1) // 2 + 1):
        w = Fraction(n - 2 * s, 2 * n)
        first += w * sum(dalpha[i] * (beta_local[(i + s) % n] - beta_local[(i - s) % n]) for i in range(n))
    second = sum(alpha, Fraction(0)) / n * sum(beta_local, Fraction(0))
    return lhs, first + second


def test_triquad_leibniz01_exact(triquad):
    rng = np.random.default_rng(3)
    a = DiscreteForm(0, rng.uniform(-1, 1, 5), triquad)
    b = DiscreteForm(1, rng.uniform(-1, 1, 6), triquad)
    lhs = exterior_derivative(cup(a, b)).values
    rhs = (cup(exterior_derivative(a), b) + cup(a, exterior_derivative(b))).values
    for f, verts in enumerate(triquad.faces):
        view = face_local_view(triquad, f)
        al = [Fraction(a.values[v]) for v in verts]
        bl = [Fraction(x) for x in view.read(b.values)]
        exp_l, exp_r = _leibniz01_by_expansion(al, bl)
        assert exp_l == exp_r
        assert abs(lhs[f] - float(exp_l)) <= 1e-12
        assert abs(rhs[f] - float(exp_r)) <= 1e-12


def test_leibniz00_on_edge():
    c = gen_complex(4, "disk")
    a, b = gen_form(1, c, 0), gen_form(2, c, 0)
    lhs = exterior_derivative(cup(a, b)).values
    rhs = (cup(exterior_derivative(a), b) + cup(a, exterior_derivative(b))).values
    assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_face_local_view_signs(triquad):
    view = face_local_view(triquad, 1)
    assert view.edge_ids == (1, 3, 4, 5)
    assert view.signs == (-1, 1, 1, 1)
    b = np.arange(6, dtype=float)
    assert view.read(b).tolist() == [-1.0, 3.0, 4.0, 5.0]


def test_simplicial_and_cubical_references():
    for seed in range(4):
        tri = gen_complex(seed, "triangles")
        quad = gen_complex(seed, "quads")
        for c, ref in ((tri, simplicial_cup_values), (quad, cubical_cup_values)):
            a, b = gen_form(seed, c, 1), gen_form(seed + 50, c, 1)
            assert np.max(np.abs(ref(c, 1, a.values, 1, b.values) - cup11(a, b).values)) <= 1e-15
            a0, b2 = gen_form(seed, c, 0), gen_form(seed + 50, c, 2)
            assert np.max(np.abs(ref(c, 0, a0.values, 2, b2.values) - cup02(a0, b2).values)) <= 1e-15
    with pytest.raises(ValueError):
        simplicial_cup_values(polygon(4), 1, np.zeros(4), 1, np.zeros(4))


def test_rotation_invariance_single_face():
    rng = np.random.default_rng(0)
    for p in range(3, 13):
        al, bl = rng.uniform(-1, 1, p), rng.uniform(-1, 1, p)
        base = cup11_face(al, bl)
        for s in range(p):
            assert abs(cup11_face(np.roll(al, s), np.roll(bl, s)) - base) <= 1e-12


vectors = st.integers(3, 12).flatmap(
    lambda p: st.tuples(
        *[st.lists(st.floats(-1, 1, allow_nan=False), min_size=p, max_size=p) for _ in range(3)],
        st.floats(-1, 1, allow_nan=False),
    )
)


@settings(max_examples=200, deadline=None)
@given(vectors)
def test_face_product_skew_and_bilinear(data):
    a, b, e, t = data
    a, b, e = map(np.asarray, (a, b, e))
    assert abs(cup11_face(a, b) + cup11_face(b, a)) <= 1e-12
    lhs = cup11_face(t * a + e, b)
    assert abs(lhs - (t * cup11_face(a, b) + cup11_face(e, b))) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 12), st.integers(0, 2**32 - 1))
def test_face_product_exact_skew(p, seed):
    rng = np.random.default_rng(seed)
    a = np.array([Fraction(int(x), 7) for x in rng.integers(-20, 21, p)], dtype=object)
    b = np.array([Fraction(int(x), 5) for x in rng.integers(-20, 21, p)], dtype=object)
    assert cup11_face(a, b) == -cup11_face(b, a)
