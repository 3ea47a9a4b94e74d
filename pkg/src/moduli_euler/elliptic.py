"""S_n-equivariant Euler characteristic of the smooth genus-one moduli space.

The character value at a permutation sigma is the Euler characteristic of
its fixed locus on the coarse space (Lefschetz).  Over a point j of the
j-line the fibre is Z/A, where Z = F(E, n)/E and A = Aut(E, 0), so

    chi(sigma) = sum over strata of chi(stratum) * (1/|A|) sum_a chi(Z^{a sigma}).

For a = 1 the fixed locus consists of translation-invariant configurations.
For a != 1 every affine map y -> a y + t is conjugate by a translation to
y -> a y, so Z^{a sigma} is the set of configurations with
x_{sigma(i)} = a x_i, divided by the fixed points of a.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Dict

from sympy import factorint

from .symseries import Partition, SymSeries, TruncationCaps, partitions, z_lambda


@dataclass(frozen=True)
class Rotation:
    """A non-trivial automorphism of (E, 0) described by its orbit structure.

    ``short`` maps an orbit size s < order to the number of such orbits.
    """

    order: int
    fixed: int
    short: Dict[int, int]


MINUS_ONE = Rotation(2, 4, {1: 4})
ORDER_FOUR = Rotation(4, 2, {1: 2, 2: 1})
ORDER_THREE = Rotation(3, 3, {1: 3})
ORDER_SIX = Rotation(6, 1, {1: 1, 2: 1, 3: 1})

# (Euler characteristic of the stratum of the j-line, non-trivial automorphisms)
STRATA = (
    (-1, (MINUS_ONE,)),
    (1, (MINUS_ONE, ORDER_FOUR, ORDER_FOUR)),
    (1, (MINUS_ONE, ORDER_THREE, ORDER_THREE, ORDER_SIX, ORDER_SIX)),
)


def falling(x: int, k: int) -> int:
    return prod(x - i for i in range(k))


def jordan_totient(m: int) -> int:
    """Number of points of exact order m on an elliptic curve."""
    out = m * m
    for p in factorint(m):
        out = out * (p * p - 1) // (p * p)
    return out


def translation_fixed(lam: Partition) -> int:
    """chi(Z^sigma) for sigma of cycle type lam."""
    n = sum(lam)
    if all(part == 1 for part in lam):
        return (-1) ** (n - 1) * factorial(n - 1)
    m = lam[0]
    if any(part != m for part in lam):
        return 0
    k = len(lam)
    return jordan_totient(m) * m ** (k - 1) * (-1) ** (k - 1) * factorial(k - 1)


def rotation_fixed(rot: Rotation, lam: Partition) -> Fraction:
    """chi(Z^{a sigma}) for a rotation a of (E, 0)."""
    cycles = Counter(lam)
    if any(rot.order % s for s in cycles):
        return Fraction(0)
    branch = sum(rot.short.values())
    count = falling(2 - branch, cycles.get(rot.order, 0)) * rot.order ** cycles.get(rot.order, 0)
    for s, orbits in rot.short.items():
        c = cycles.get(s, 0)
        count *= falling(orbits, c) * s**c
    return Fraction(count, rot.fixed)


def smooth_character(lam: Partition) -> Fraction:
    total = Fraction(0)
    for euler, rotations in STRATA:
        group = 1 + len(rotations)
        lefschetz = translation_fixed(lam) + sum(rotation_fixed(a, lam) for a in rotations)
        total += euler * Fraction(lefschetz, group)
    return total


def smooth_genus_one(n_max: int) -> SymSeries:
    """sum_{n >= 1} of the S_n-equivariant Euler characteristic of M_{1,n}."""
    terms = {}
    for n in range(1, n_max + 1):
        for lam in partitions(n):
            terms[(0, lam)] = smooth_character(lam) / z_lambda(lam)
    return SymSeries(terms, TruncationCaps(n_max, 0))
