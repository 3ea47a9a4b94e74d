from fractions import Fraction

import pytest

from moduli_euler.elliptic import (
    MINUS_ONE,
    ORDER_FOUR,
    ORDER_SIX,
    ORDER_THREE,
    jordan_totient,
    rotation_fixed,
    smooth_character,
    smooth_genus_one,
    translation_fixed,
)
from moduli_euler.symseries import partitions, rank, schur_expand


def test_points_of_exact_order():
    assert [jordan_totient(m) for m in range(1, 7)] == [1, 3, 8, 12, 24, 24]


def test_translation_fixed_loci():
    # configurations of n distinct points up to translation
    assert [translation_fixed((1,) * n) for n in range(1, 5)] == [1, -1, 2, -6]
    # x2 = x1 + t with t of exact order 2
    assert translation_fixed((2,)) == 3
    assert translation_fixed((2, 1)) == 0


def test_rotation_orbits_cover_the_curve():
    # Riemann-Hurwitz: the quotient of E by a rotation of order m is a line
    for rot in (MINUS_ONE, ORDER_FOUR, ORDER_THREE, ORDER_SIX):
        ramification = sum(orbits * (rot.order - s) for s, orbits in rot.short.items())
        assert ramification == 2 * rot.order
        assert rot.fixed == rot.short.get(1, 0)


def test_minus_one_on_two_torsion():
    # n distinct two-torsion points, divided by the four translations
    assert rotation_fixed(MINUS_ONE, (1,)) == 1
    assert rotation_fixed(MINUS_ONE, (1, 1)) == 3


def test_low_genus_one_characters():
    s = smooth_genus_one(4)
    assert schur_expand(s, 1, 0) == {(1,): 1}
    assert schur_expand(s, 2, 0) == {(2,): 1}
    assert schur_expand(s, 3, 0) == {(3,): 1, (1, 1, 1): -1}
    assert schur_expand(s, 4, 0) == {(3, 1): 1, (2, 1, 1): -1}
    assert [rank(s, n, 0) for n in range(1, 5)] == [1, 1, 0, 0]


@pytest.mark.parametrize("n", range(1, 9))
def test_multiplicities_are_integers(n):
    s = smooth_genus_one(n)
    assert all(m.denominator == 1 for m in schur_expand(s, n, 0).values())
    assert all(isinstance(smooth_character(lam), Fraction) for lam in partitions(n))
