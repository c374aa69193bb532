"""Discrete differential forms (real cochains) and the exterior derivative."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complex import Chain, PolygonalComplex, boundary_matrix
from .errors import ComplexMismatch, DegreeMismatch, DegreeOutOfRange

__all__ = [
    "DiscreteForm",
    "add",
    "scale",
    "evaluate",
    "exterior_derivative",
    "is_closed",
    "CLOSED_TOL",
]

CLOSED_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DiscreteForm:
    """A real-valued q-cochain on a :class:`PolygonalComplex`.

    ``values[i]`` is the value on cell ``i`` of degree ``q`` in its stored
    orientation; reading through the opposite orientation gives the
    negated value. Degree 3 is allowed only as the empty form returned by
    the derivative of a 2-form.
    """

    degree: int
    values: np.ndarray
    complex: PolygonalComplex

    def __post_init__(self):
        if self.degree not in (0, 1, 2, 3):
            raise DegreeOutOfRange(f"forms have degree 0..2, got {self.degree}")
        vals = np.array(self.values, dtype=np.float64)
        expected = self.complex.cell_count(self.degree)
        if vals.shape != (expected,):
            raise ValueError(
                f"{self.degree}-form needs {expected} values, got shape {vals.shape}"
            )
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, complex: PolygonalComplex, degree: int) -> DiscreteForm:
        return cls(degree, np.zeros(complex.cell_count(degree)), complex)

    @classmethod
    def constant(cls, complex: PolygonalComplex, value: float = 1.0) -> DiscreteForm:
        """The constant 0-form; ``value=1`` gives the unit of the cup product."""
        return cls(0, np.full(complex.vertex_count, float(value)), complex)

    def __len__(self):
        return self.values.size

    def __getitem__(self, i):
        return self.values[i]

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1.0, other))

    def __neg__(self):
        return scale(-1.0, self)

    def __mul__(self, t):
        if isinstance(t, DiscreteForm):
            return NotImplemented
        return scale(t, self)

    __rmul__ = __mul__

    def __repr__(self):
        return f"DiscreteForm(degree={self.degree}, values={self.values!r})"


def _check_compatible(a: DiscreteForm, b: DiscreteForm) -> None:
    if a.complex is not b.complex:
        raise ComplexMismatch("forms live on different complexes")
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees {a.degree} and {b.degree} differ")


def add(a: DiscreteForm, b: DiscreteForm) -> DiscreteForm:
    _check_compatible(a, b)
    return DiscreteForm(a.degree, a.values + b.values, a.complex)


def scale(t: float, a: DiscreteForm) -> DiscreteForm:
    return DiscreteForm(a.degree, float(t) * a.values, a.complex)


def evaluate(a: DiscreteForm, chain: Chain) -> float:
    """Pairing of a cochain with a chain: ``sum_i chain[i] * a[i]``."""
    if a.degree != chain.degree:
        raise DegreeMismatch(f"{a.degree}-form paired with a {chain.degree}-chain")
    if chain.coefficients.shape != a.values.shape:
        raise ValueError("chain and form have different cell counts")
    return float(np.dot(chain.coefficients.astype(np.float64), a.values))


def exterior_derivative(a: DiscreteForm) -> DiscreteForm:
    """Coboundary: ``(da)(c) = sum_c' [c : c'] a(c')``.

    The derivative of a 2-form is the empty 3-form since a 2-complex has
    no 3-cells.
    """
    if a.degree == 2:
        return DiscreteForm(3, np.empty(0), a.complex)
    if a.degree not in (0, 1):
        raise DegreeOutOfRange(f"no derivative for degree {a.degree}")
    m = boundary_matrix(a.complex, a.degree + 1)
    return DiscreteForm(a.degree + 1, m.rmatvec(a.values), a.complex)


def is_closed(a: DiscreteForm, tol: float = CLOSED_TOL) -> bool:
    if a.degree >= 2:
        return True
    da = exterior_derivative(a)
    return bool(da.values.size == 0 or np.max(np.abs(da.values)) <= tol)
