import numpy as np
import pytest

from polywedge import (
    Chain,
    ComplexMismatch,
    DegreeMismatch,
    DegreeOutOfRange,
    DiscreteForm,
    add,
    apply_boundary,
    build_complex,
    evaluate,
    exterior_derivative,
    gen_complex,
    gen_form,
    is_closed,
    scale,
)


@pytest.fixture
def tri3():
    return build_complex([(0, 1, 2)], 3)


def form(c, degree, values):
    return DiscreteForm(degree, values, c)


def test_add(tri3):
    a = form(tri3, 0, [1, 2, 3])
    assert add(a, form(tri3, 0, [0, 0, 0])).values.tolist() == [1, 2, 3]
    assert add(a, form(tri3, 0, [-1, -2, -3])).values.tolist() == [0, 0, 0]
    b = form(tri3, 0, [0.5, 1.5, 0.0])
    assert add(b, form(tri3, 0, [0.25, 0.25, 0.0])).values.tolist() == [0.75, 1.75, 0.0]


def test_add_errors(tri3):
    other = build_complex([(0, 1, 2)], 3)
    with pytest.raises(DegreeMismatch):
        add(form(tri3, 0, [1, 2, 3]), form(tri3, 1, [1, 2, 3]))
    with pytest.raises(ComplexMismatch):
        add(form(tri3, 0, [1, 2, 3]), form(other, 0, [1, 2, 3]))


def test_scale(tri3):
    a = form(tri3, 1, [1, -3, 0.5])
    assert np.array_equal(scale(1, a).values, a.values)
    assert not scale(0, a).values.any()
    assert scale(2, a).values.tolist() == [2, -6, 1]
    assert (2 * a).values.tolist() == [2, -6, 1]


def test_vector_space_laws():
    c = gen_complex(2, "mixed")
    a, b, e = (gen_form(s, c, 1) for s in (1, 2, 3))
    assert np.array_equal((a + b).values, (b + a).values)
    assert np.allclose(((a + b) + e).values, (a + (b + e)).values, atol=1e-15, rtol=0)
    assert np.allclose((2.5 * (a + b)).values, (2.5 * a + 2.5 * b).values, atol=1e-15, rtol=0)


def test_form_length_checked(tri3):
    with pytest.raises(ValueError):
        form(tri3, 1, [1, 2])


def test_evaluate(tri3):
    a = form(tri3, 1, [4.0, -1.0, 2.5])
    for i in range(3):
        assert evaluate(a, Chain.unit(tri3, 1, i)) == a.values[i]
    assert evaluate(a, Chain.zero(tri3, 1)) == 0.0
    with pytest.raises(DegreeMismatch):
        evaluate(a, Chain.zero(tri3, 2))


def test_triquad_derivative(triquad):
    beta = form(triquad, 1, [0.3, -1.7, 2.9, 0.125, 5.5, -0.75])
    b = beta.values
    d = exterior_derivative(beta)
    assert d.degree == 2
    assert d.values[1] == -b[1] + b[3] + b[4] + b[5]
    assert evaluate(beta, apply_boundary(triquad, Chain.unit(triquad, 2, 1))) == d.values[1]


def test_derivative_of_constant_vanishes():
    c = gen_complex(7, "sphere")
    assert not exterior_derivative(DiscreteForm.constant(c, 3.7)).values.any()


def test_dd_zero_integer_inputs_exact():
    rng = np.random.default_rng(0)
    for seed in range(10):
        c = gen_complex(seed, "mixed")
        a = form(c, 0, rng.integers(-10**6, 10**6, c.n_vertices).astype(float))
        assert not exterior_derivative(exterior_derivative(a)).values.any()


def test_dd_zero_float_inputs_bounded():
    for seed in range(10):
        c = gen_complex(seed, "mixed")
        a = gen_form(seed, c, 0)
        dd = exterior_derivative(exterior_derivative(a)).values
        assert np.max(np.abs(dd)) <= 1e-12


def test_derivative_of_two_form_is_empty(triquad):
    d = exterior_derivative(form(triquad, 2, [1.0, 2.0]))
    assert d.degree == 3 and d.values.size == 0
    with pytest.raises(DegreeOutOfRange):
        exterior_derivative(d)


def test_stokes_duality():
    rng = np.random.default_rng(5)
    for seed in range(8):
        c = gen_complex(seed, ("mixed", "torus", "disk", "sphere")[seed % 4])
        for q in (0, 1):
            a = gen_form(seed, c, q)
            chain = Chain(q + 1, rng.integers(-5, 6, c.cell_count(q + 1)))
            lhs = evaluate(exterior_derivative(a), chain)
            rhs = evaluate(a, apply_boundary(c, chain))
            assert lhs == pytest.approx(rhs, abs=1e-12)


def test_is_closed(tri3):
    assert is_closed(DiscreteForm.constant(tri3, 2.0))
    assert not is_closed(form(tri3, 0, [0.0, 1.0, 0.0]))
    assert is_closed(form(tri3, 2, [123.0]))
    assert is_closed(exterior_derivative(form(tri3, 0, [0.1, 0.7, -0.2])))


def test_forms_are_immutable(tri3):
    a = form(tri3, 0, [1, 2, 3])
    with pytest.raises(ValueError):
        a.values[0] = 5
