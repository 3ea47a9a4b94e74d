"""Hyperoctahedral groups, their cycle-index map and S_2-plethysm.

Elements of Lambda(S_2) are polynomials in two families of generators
``P_i`` and ``Q_i``; a monomial is stored as ``(d, P, Q)`` with ``P`` and
``Q`` weakly decreasing index tuples and ``d`` an extra q-grading.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .symseries import CapStarvation, SymSeries, TruncationCaps, arith, normalize, partial, psi

WreathKey = Tuple[int, Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class SignedPerm:
    """An element of B_k acting on signed points (i, +1) and (i, -1).

    ``perm[i]`` is the image of point i (0-based) and ``signs[i]`` the sign
    picked up on the way.
    """

    signs: Tuple[int, ...]
    perm: Tuple[int, ...]

    def __post_init__(self):
        k = len(self.perm)
        if len(self.signs) != k:
            raise ValueError("signs and permutation have different lengths")
        if sorted(self.perm) != list(range(k)):
            raise ValueError(f"not a permutation of 0..{k - 1}: {self.perm}")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @property
    def k(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, k: int) -> "SignedPerm":
        return cls((1,) * k, tuple(range(k)))

    def __call__(self, point: int, sign: int = 1) -> Tuple[int, int]:
        return self.perm[point], sign * self.signs[point]

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        """Composition: apply ``other`` first."""
        perm = tuple(self.perm[other.perm[i]] for i in range(self.k))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(self.k))
        return SignedPerm(signs, perm)

    def inverse(self) -> "SignedPerm":
        perm = [0] * self.k
        signs = [1] * self.k
        for i, j in enumerate(self.perm):
            perm[j] = i
            signs[j] = self.signs[i]
        return SignedPerm(tuple(signs), tuple(perm))

    def cycles(self) -> Iterable[Tuple[int, ...]]:
        seen = set()
        for start in range(self.k):
            if start in seen:
                continue
            cyc = []
            i = start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self.perm[i]
            yield tuple(cyc)


def cycle_map(g: SignedPerm) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Cycle type split by sign: even cycles go to P, odd to Q."""
    ps, qs = [], []
    for cyc in g.cycles():
        sign = 1
        for i in cyc:
            sign *= g.signs[i]
        (ps if sign == 1 else qs).append(len(cyc))
    return normalize(ps), normalize(qs)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class WreathPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[WreathKey, object] = ()):
        clean: Dict[WreathKey, Fraction] = defaultdict(Fraction)
        for (d, ps, qs), c in dict(terms).items():
            clean[(d, normalize(ps), normalize(qs))] += _frac(c)
        self.terms = {k: v for k, v in clean.items() if v != 0}

    def __add__(self, other: "WreathPoly") -> "WreathPoly":
        out = defaultdict(Fraction, self.terms)
        for k, v in other.terms.items():
            out[k] += v
        return WreathPoly(out)

    def __sub__(self, other: "WreathPoly") -> "WreathPoly":
        return self + other * -1

    def __mul__(self, c) -> "WreathPoly":
        c = _frac(c)
        return WreathPoly({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def shift(self, d: int) -> "WreathPoly":
        """Multiply by q**d."""
        return WreathPoly({(dd + d, ps, qs): c for (dd, ps, qs), c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, WreathPoly) and self.terms == other.terms

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*q^{d}*P{list(ps)}Q{list(qs)}" for (d, ps, qs), c in sorted(self.terms.items()))
        return f"WreathPoly({body or '0'})"

    def to_json(self) -> list:
        rows = []
        for (d, ps, qs), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], list(kv[0][1]), list(kv[0][2]))):
            rows.append({"d": d, "p": list(ps), "q": list(qs), "num": str(c.numerator), "den": str(c.denominator)})
        return rows

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, rows) -> "WreathPoly":
        return cls({(int(r["d"]), tuple(r["p"]), tuple(r["q"])): Fraction(int(r["num"]), int(r["den"])) for r in rows})


def ind_trivial_char(group: Iterable[SignedPerm], d: int = 0) -> WreathPoly:
    """Frobenius characteristic of the trivial rep of H induced to B_k."""
    elements = set(group)
    if not elements:
        raise ValueError("empty group")
    for a in elements:
        for b in elements:
            if a * b not in elements:
                raise ValueError("element set is not closed under composition")
    out: Dict[WreathKey, Fraction] = defaultdict(Fraction)
    weight = Fraction(1, len(elements))
    for g in elements:
        ps, qs = cycle_map(g)
        out[(d, ps, qs)] += weight
    return WreathPoly(out)


@dataclass(frozen=True)
class BiSymSeries:
    """A pair (f1, f2) standing for 1/2 p1^2 (x) f1 + 1/2 p2 (x) f2."""

    f1: SymSeries
    f2: SymSeries

    def to_json(self) -> dict:
        return {"f1": self.f1.to_json(), "f2": self.f2.to_json()}

    @classmethod
    def from_json(cls, data) -> "BiSymSeries":
        return cls(SymSeries.from_json(data["f1"]), SymSeries.from_json(data["f2"]))


def restrict_two(f: SymSeries) -> BiSymSeries:
    """Restriction from S_{n+2} to S_2 x S_n."""
    return BiSymSeries(partial(partial(f, "p1"), "p1"), partial(f, "p2") * 2)


def s2_plethysm(w: WreathPoly, f: BiSymSeries, caps: TruncationCaps) -> SymSeries:
    """P_n -> psi_n(f1), Q_n -> psi_n(f2); the q-grading of w is kept."""
    parts = []
    for g in (f.f1, f.f2):
        if not g.exact and g.caps.n < caps.n:
            raise CapStarvation("bi-series too short for S_2-plethysm", TruncationCaps(caps.n, 0))
        if g.caps.d < caps.d and any(d for (d, _) in g.terms):
            raise CapStarvation("bi-series has q-terms beyond its caps", TruncationCaps(caps.n, caps.d))
        # a q-free series is known in every q-degree
        parts.append(SymSeries({k: v for k, v in g.terms.items() if sum(k[1]) <= caps.n}, caps, g.exact))
    f1, f2 = parts
    cache: Dict[Tuple[str, int], SymSeries] = {}

    def gen(kind: str, i: int) -> SymSeries:
        if (kind, i) not in cache:
            cache[(kind, i)] = psi(i, f1 if kind == "P" else f2)
        return cache[(kind, i)]

    total = SymSeries.zero(caps)
    for (d, ps, qs), c in sorted(w.terms.items()):
        if d > caps.d:
            continue
        term = SymSeries.monomial((), caps, d=d, c=c)
        for i in ps:
            term = arith(term, gen("P", i), "mul", caps)
        for i in qs:
            term = arith(term, gen("Q", i), "mul", caps)
        total = arith(total, term, "add", caps)
    total.exact = False
    return total
