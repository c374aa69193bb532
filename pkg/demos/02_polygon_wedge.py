"""The cup product on single polygons."""
from fractions import Fraction

import numpy as np

from polywedge import DiscreteForm, build_complex, cup
from polywedge.wedge import cup11_face, cup_coefficient

spacer = "_" * 60


def polygon(p):
    return build_complex([tuple(range(p))], p, edges=[(i, (i + 1) % p) for i in range(p)])


# Two 1-forms that are 1 on a single edge each, on neighbouring sides of a p-gon.
print("product of neighbouring edge indicators on a p-gon:")
for p in range(3, 9):
    c = polygon(p)
    a, b = np.zeros(p), np.zeros(p)
    a[0], b[1] = 1.0, 1.0
    ab = cup(DiscreteForm(1, a, c), DiscreteForm(1, b, c)).values[0]
    print(f"  p={p}:  a^b = {ab:+.4f}   b^a = {cup(DiscreteForm(1, b, c), DiscreteForm(1, a, c)).values[0]:+.4f}")

print(spacer)
print("\nweights (p - 2s) / 2p for each offset s:")
for p in range(3, 9):
    ws = [cup_coefficient(p, s) for s in range(1, (p - 1) // 2 + 1)]
    print(f"  p={p}:", ", ".join(str(w) for w in ws))

print(spacer)
# Exact arithmetic works too: pass object arrays of Fractions.
al = np.array([Fraction(1), Fraction(0), Fraction(-2), Fraction(1, 3), Fraction(0)], dtype=object)
bl = np.array([Fraction(0), Fraction(1), Fraction(1), Fraction(0), Fraction(5)], dtype=object)
print("\nexact pentagon product:", cup11_face(al, bl), " reversed:", cup11_face(bl, al))

print(spacer)
# The constant 0-form is a unit.
c = polygon(6)
one = DiscreteForm.constant(c)
beta = DiscreteForm(1, np.linspace(-1, 1, 6), c)
print("\n1 ^ beta == beta:", np.array_equal(cup(one, beta).values, beta.values))
