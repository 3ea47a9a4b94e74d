"""Genus-zero inputs: open and compactified moduli, planted trees, star series."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

from .cyclecomb import phi
from .symseries import (
    SymSeries,
    TruncationCaps,
    compose_univariate,
    partial,
    plethysm,
    psi,
)
from .wreath import BiSymSeries


def _caps0(n: int) -> TruncationCaps:
    return TruncationCaps(n, 0)


def log_series(n_max: int) -> SymSeries:
    """sum_n phi(n)/n log(1 + p_n), the open moduli M_{0,n+2} restricted to S_n."""
    terms = {}
    for n in range(1, n_max + 1):
        for k in range(1, n_max // n + 1):
            terms[(0, (n,) * k)] = Fraction(phi(n), n) * Fraction((-1) ** (k + 1), k)
    return SymSeries(terms, _caps0(n_max))


@dataclass
class A0Family:
    a0: SymSeries
    a0_p1: SymSeries
    a0_p1p1: SymSeries
    a0_p2: SymSeries


def a0_family(caps: TruncationCaps) -> A0Family:
    """Equivariant Euler characteristics of M_{0,n} and the derivatives used later.

    The second p1-derivative and the p2-derivative are returned in closed
    form; ``check_a0_family`` compares them against differentiation.
    """
    top = caps.n + 2
    c = _caps0(top)
    p1 = SymSeries.p(1, c)
    p2 = SymSeries.p(2, c)
    one = SymSeries.const(1, c)
    a0 = (one + p1) ** 2 * log_series(top) / 2 - (p1 * 2 + p1 * p1 * 3 + p2) / 4
    a0 = a0.truncate(c)
    inv = compose_univariate(lambda k: (-1) ** k, p2.with_caps(_caps0(caps.n)))
    a0_p2 = ((one + p1) ** 2).with_caps(_caps0(caps.n)) * inv / 4 - Fraction(1, 4)
    return A0Family(
        a0=a0,
        a0_p1=partial(a0, "p1").truncate(_caps0(caps.n + 1)),
        a0_p1p1=log_series(caps.n),
        a0_p2=a0_p2.truncate(_caps0(caps.n)),
    )


def check_a0_family(fam: A0Family) -> bool:
    n = fam.a0_p1p1.caps.n
    second = partial(partial(fam.a0, "p1"), "p1").truncate(_caps0(n))
    by_p2 = partial(fam.a0, "p2").truncate(_caps0(n))
    return second == fam.a0_p1p1 and by_p2 == fam.a0_p2


@dataclass
class StableTrees:
    planted: SymSeries
    abar0: SymSeries


def stable_tree_series(caps: TruncationCaps) -> StableTrees:
    """Compactified genus-zero moduli as a sum over stable trees.

    ``planted`` solves R = a0' o (p1 + R); the unrooted sum follows from the
    dissymmetry identity  vertex-rooted + edge-rooted - flag-rooted.
    """
    c = _caps0(caps.n)
    fam = a0_family(c)
    a0 = fam.a0.truncate(c)
    a0_p1 = fam.a0_p1.truncate(c)
    p1 = SymSeries.p(1, c)
    planted = SymSeries.zero(c)
    for _ in range(caps.n + 1):
        planted = plethysm(a0_p1, p1 + planted, c)
    h2 = SymSeries({(0, (1, 1)): Fraction(1, 2), (0, (2,)): Fraction(1, 2)}, c, exact=True)
    abar0 = plethysm(a0, p1 + planted, c) + plethysm(h2, planted, c) - planted * planted
    return StableTrees(planted, abar0)


def cat_series(caps: TruncationCaps) -> BiSymSeries:
    """Two-pointed chains of open rational curves, as an S_2 x S_n bi-series."""
    c = _caps0(caps.n)
    fam = a0_family(c)
    geometric = lambda k: 1  # noqa: E731
    f1 = compose_univariate(geometric, fam.a0_p1p1, c)
    f2 = (fam.a0_p2 * 2 + 1) * compose_univariate(geometric, psi(2, fam.a0_p1p1), c)
    return BiSymSeries(f1, f2)


def star_series(r: int, caps: TruncationCaps, trees: StableTrees = None) -> SymSeries:
    """Fixed-point census of genus-zero maps with one extra point sent to a fixed point.

    Planted localisation trees satisfy T = Phi o (p1 + r q/(1-q) T) where
    Phi = 1 + p1 + R lists the vertex moduli; the two unstable corollas are
    removed at the end.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    top = caps.n + caps.d
    if trees is None or trees.planted.caps.n < top:
        trees = stable_tree_series(_caps0(top))
    vertex = trees.planted.truncate(_caps0(top)) + SymSeries.p(1, _caps0(top)) + 1
    # the vertex series carries no q, so it is known in every q-degree
    vertex = SymSeries(vertex.terms, TruncationCaps(top, caps.d))
    edges = SymSeries({(w, ()): r for w in range(1, caps.d + 1)}, caps)
    p1 = SymSeries.p(1, caps)
    tree = SymSeries.const(1, caps)
    for _ in range(top + 1):
        tree = plethysm(vertex, p1 + edges * tree, caps)
    return tree - 1 - p1


@dataclass
class Genus0Bundle:
    caps: TruncationCaps
    r: int
    a0: SymSeries
    abar0: SymSeries
    cat: BiSymSeries
    star: SymSeries

    def to_json(self) -> dict:
        return {
            "caps": {"n": self.caps.n, "d": self.caps.d},
            "r": self.r,
            "a0": self.a0.to_json(),
            "abar0": self.abar0.to_json(),
            "cat": self.cat.to_json(),
            "star": self.star.to_json(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data: Dict) -> "Genus0Bundle":
        return cls(
            TruncationCaps(data["caps"]["n"], data["caps"]["d"]),
            int(data["r"]),
            SymSeries.from_json(data["a0"]),
            SymSeries.from_json(data["abar0"]),
            BiSymSeries.from_json(data["cat"]),
            SymSeries.from_json(data["star"]),
        )


def genus0_bundle(r: int, caps: TruncationCaps) -> Genus0Bundle:
    trees = stable_tree_series(_caps0(caps.n + caps.d))
    fam = a0_family(_caps0(caps.n))
    return Genus0Bundle(
        caps=caps,
        r=r,
        a0=fam.a0.truncate(_caps0(caps.n)),
        abar0=trees.abar0.truncate(_caps0(caps.n)),
        cat=cat_series(caps),
        star=star_series(r, caps, trees),
    )
