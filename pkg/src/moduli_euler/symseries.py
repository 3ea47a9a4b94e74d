"""Truncated graded symmetric functions in the power-sum basis.

A series is a finite map ``(d, partition) -> Fraction`` meaning
``sum c * q**d * p_partition``.  Every series carries truncation caps
``(n, d)``: coefficients with Lambda-degree above ``n`` or q-degree above
``d`` are unknown and never stored.  Series built from honest polynomials
can be flagged ``exact``; their caps are then only a storage bound.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple

Partition = Tuple[int, ...]
Key = Tuple[int, Partition]


class CapStarvation(ValueError):
    """Raised when an input series is not known far enough for the request."""

    def __init__(self, message: str, required: "TruncationCaps"):
        super().__init__(f"{message}; required caps n={required.n}, d={required.d}")
        self.required = required


@dataclass(frozen=True, order=True)
class TruncationCaps:
    n: int
    d: int

    def __post_init__(self):
        if self.n < 0 or self.d < 0:
            raise ValueError(f"caps must be non-negative, got n={self.n}, d={self.d}")

    def covers(self, other: "TruncationCaps") -> bool:
        return self.n >= other.n and self.d >= other.d

    def meet(self, other: "TruncationCaps") -> "TruncationCaps":
        return TruncationCaps(min(self.n, other.n), min(self.d, other.d))


# ---------------------------------------------------------------- partitions

def normalize(parts: Iterable[int]) -> Partition:
    parts = tuple(sorted(parts, reverse=True))
    if parts and parts[-1] <= 0:
        raise ValueError(f"partition parts must be positive: {parts}")
    return parts


@lru_cache(maxsize=None)
def partitions(n: int, largest: Optional[int] = None) -> Tuple[Partition, ...]:
    """All partitions of n in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def multiplicities(lam: Partition) -> Dict[int, int]:
    m: Dict[int, int] = defaultdict(int)
    for part in lam:
        m[part] += 1
    return dict(m)


@lru_cache(maxsize=None)
def z_lambda(lam: Partition) -> int:
    """Size of the centraliser of a permutation of cycle type lam."""
    out = 1
    for part, mult in multiplicities(lam).items():
        out *= part**mult * factorial(mult)
    return out


def merge(a: Partition, b: Partition) -> Partition:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


# ---------------------------------------------------------------- the series

def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class SymSeries:
    __slots__ = ("terms", "caps", "exact")

    def __init__(self, terms: Mapping[Key, object], caps: TruncationCaps, exact: bool = False):
        clean: Dict[Key, Fraction] = {}
        for (d, lam), c in terms.items():
            c = _frac(c)
            if c == 0:
                continue
            lam = normalize(lam)
            if d < 0:
                raise ValueError("negative q-degree")
            if sum(lam) > caps.n or d > caps.d:
                continue
            clean[(d, lam)] = clean.get((d, lam), Fraction(0)) + c
        self.terms = {k: v for k, v in clean.items() if v != 0}
        self.caps = caps
        self.exact = exact

    # constructors
    @classmethod
    def zero(cls, caps: TruncationCaps) -> "SymSeries":
        return cls({}, caps, exact=True)

    @classmethod
    def const(cls, c, caps: TruncationCaps) -> "SymSeries":
        return cls({(0, ()): c}, caps, exact=True)

    @classmethod
    def monomial(cls, lam: Iterable[int], caps: TruncationCaps, d: int = 0, c=1) -> "SymSeries":
        return cls({(d, normalize(lam)): c}, caps, exact=True)

    @classmethod
    def p(cls, k: int, caps: TruncationCaps) -> "SymSeries":
        return cls.monomial((k,), caps)

    @classmethod
    def q(cls, d: int, caps: TruncationCaps) -> "SymSeries":
        return cls.monomial((), caps, d=d)

    # access
    def coeff(self, d: int, lam: Iterable[int]) -> Fraction:
        lam = normalize(lam)
        if not self.exact and (sum(lam) > self.caps.n or d > self.caps.d):
            raise CapStarvation("coefficient outside caps", TruncationCaps(sum(lam), d))
        return self.terms.get((d, lam), Fraction(0))

    def piece(self, n: int, d: int) -> Dict[Partition, Fraction]:
        """Coefficients of the (Lambda-degree n, q-degree d) component."""
        if not self.exact and (n > self.caps.n or d > self.caps.d):
            raise CapStarvation("component outside caps", TruncationCaps(n, d))
        return {lam: c for (dd, lam), c in self.terms.items() if dd == d and sum(lam) == n}

    def constant(self) -> Fraction:
        return self.terms.get((0, ()), Fraction(0))

    def has_lambda_free_terms(self) -> bool:
        return any(not lam for (_, lam) in self.terms)

    def truncate(self, caps: TruncationCaps) -> "SymSeries":
        if not self.exact and not self.caps.covers(caps):
            raise CapStarvation("cannot truncate to larger caps", caps)
        return SymSeries(self.terms, caps, self.exact)

    def with_caps(self, caps: TruncationCaps) -> "SymSeries":
        """Relabel an exact series with new caps (storage bound only)."""
        return SymSeries(self.terms, caps, exact=self.exact)

    def map_coefficients(self, fn: Callable[[Fraction], object]) -> "SymSeries":
        return SymSeries({k: fn(v) for k, v in self.terms.items()}, self.caps, self.exact)

    def __iter__(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SymSeries):
            caps = _meet_caps(self, other)
            return _restrict(self.terms, caps) == _restrict(other.terms, caps)
        return NotImplemented

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*q^{d}*p{list(lam)}" for (d, lam), c in self) or "0"
        return f"SymSeries({body}; caps n={self.caps.n}, d={self.caps.d})"

    # arithmetic
    def __add__(self, other):
        return arith(self, _lift(other, self), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return arith(self, _lift(other, self), "sub")

    def __rsub__(self, other):
        return arith(_lift(other, self), self, "sub")

    def __neg__(self):
        return self.map_coefficients(lambda c: -c)

    def __mul__(self, other):
        if isinstance(other, SymSeries):
            return arith(self, other, "mul")
        c = _frac(other)
        return self.map_coefficients(lambda x: x * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = _frac(other)
        return self.map_coefficients(lambda x: x / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers need compose_univariate")
        out = SymSeries.const(1, self.caps)
        for _ in range(k):
            out = out * self
        return out

    # serialisation
    def to_json(self) -> dict:
        rows = []
        for (d, lam), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], list(kv[0][1]))):
            rows.append({"d": d, "partition": list(lam), "num": str(c.numerator), "den": str(c.denominator)})
        return {"caps": {"n": self.caps.n, "d": self.caps.d}, "terms": rows}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data: Mapping) -> "SymSeries":
        caps = TruncationCaps(int(data["caps"]["n"]), int(data["caps"]["d"]))
        terms: Dict[Key, Fraction] = {}
        for row in data["terms"]:
            lam = tuple(int(x) for x in row["partition"])
            if list(lam) != sorted(lam, reverse=True):
                raise ValueError(f"partition not weakly decreasing: {lam}")
            key = (int(row["d"]), lam)
            if key in terms:
                raise ValueError(f"duplicate term {key}")
            terms[key] = Fraction(int(row["num"]), int(row["den"]))
        return cls(terms, caps)

    @classmethod
    def loads(cls, text: str) -> "SymSeries":
        return cls.from_json(json.loads(text))


def _lift(x, like: SymSeries) -> SymSeries:
    if isinstance(x, SymSeries):
        return x
    return SymSeries.const(x, like.caps)


def _meet_caps(a: SymSeries, b: SymSeries) -> TruncationCaps:
    if a.exact and b.exact:
        return TruncationCaps(max(a.caps.n, b.caps.n), max(a.caps.d, b.caps.d))
    if a.exact:
        return b.caps
    if b.exact:
        return a.caps
    return a.caps.meet(b.caps)


def _restrict(terms: Mapping[Key, Fraction], caps: TruncationCaps) -> Dict[Key, Fraction]:
    return {k: v for k, v in terms.items() if k[0] <= caps.d and sum(k[1]) <= caps.n}


def _buckets(terms: Mapping[Key, Fraction]) -> Dict[Tuple[int, int], list]:
    out: Dict[Tuple[int, int], list] = defaultdict(list)
    for (d, lam), c in terms.items():
        out[(d, sum(lam))].append((lam, c))
    return out


def arith(a: SymSeries, b: SymSeries, kind: str, caps: Optional[TruncationCaps] = None) -> SymSeries:
    """Sum, difference or product truncated to the common caps."""
    natural = _meet_caps(a, b)
    if caps is None:
        caps = natural
    elif not natural.covers(caps):
        raise CapStarvation(f"operands too short for {kind}", caps)
    exact = a.exact and b.exact
    if kind in ("add", "sub"):
        sign = 1 if kind == "add" else -1
        out = dict(_restrict(a.terms, caps))
        for k, v in _restrict(b.terms, caps).items():
            out[k] = out.get(k, Fraction(0)) + sign * v
        return SymSeries(out, caps, exact)
    if kind != "mul":
        raise ValueError(f"unknown operation {kind!r}")
    out: Dict[Key, Fraction] = defaultdict(Fraction)
    bb = _buckets(_restrict(b.terms, caps))
    for (da, na), rows_a in _buckets(_restrict(a.terms, caps)).items():
        for (db, nb), rows_b in bb.items():
            if da + db > caps.d or na + nb > caps.n:
                continue
            d = da + db
            for lam, ca in rows_a:
                for mu, cb in rows_b:
                    out[(d, merge(lam, mu))] += ca * cb
    return SymSeries(out, caps, exact)


# ---------------------------------------------------------------- operations

def psi(m: int, f: SymSeries) -> SymSeries:
    """Adams operation: p_k -> p_{mk}, q -> q**m."""
    if m < 1:
        raise ValueError("Adams operations are indexed by positive integers")
    terms = {(m * d, tuple(m * x for x in lam)): c for (d, lam), c in f.terms.items()}
    return SymSeries(terms, f.caps, f.exact)


def plethysm(f: SymSeries, g: SymSeries, caps: TruncationCaps) -> SymSeries:
    """Compose f after g.  Rationals and q in f are left untouched by g."""
    if g.constant() != 0 and not f.exact:
        raise ValueError("plethysm needs g without constant term unless f is a polynomial")
    if not g.exact and not g.caps.covers(caps):
        raise CapStarvation("inner series too short for plethysm", caps)
    # every factor psi_k(g) raises n + d by at least k unless g has a constant
    if g.constant() != 0:
        need_n = max((sum(lam) for (_, lam) in f.terms), default=0)
    elif g.has_lambda_free_terms():
        need_n = caps.n + caps.d
    else:
        need_n = caps.n
    need = TruncationCaps(need_n, caps.d)
    if not f.exact and not f.caps.covers(need):
        raise CapStarvation("outer series too short for plethysm", need)

    g = g.with_caps(caps) if g.exact else g.truncate(caps)
    adams: Dict[int, SymSeries] = {}
    products: Dict[Partition, SymSeries] = {(): SymSeries.const(1, caps).with_caps(caps)}
    gconst = g.constant() != 0

    def product(lam: Partition) -> SymSeries:
        if lam in products:
            return products[lam]
        k = lam[0]
        if k not in adams:
            adams[k] = psi(k, g)
        res = product(lam[1:]) * adams[k]
        products[lam] = res
        return res

    out: Dict[Key, Fraction] = defaultdict(Fraction)
    for (d, lam), c in sorted(f.terms.items()):
        if d > caps.d:
            continue
        if not gconst and sum(lam) > caps.n + caps.d - d:
            continue
        for (d2, mu), c2 in product(lam).terms.items():
            if d + d2 <= caps.d:
                out[(d + d2, mu)] += c * c2
    return SymSeries(out, caps, exact=f.exact and g.exact)


def partial(f: SymSeries, variable: str) -> SymSeries:
    """Derivative with respect to p1 or p2."""
    k = {"p1": 1, "p2": 2}.get(variable)
    if k is None:
        raise ValueError(f"can only differentiate in p1 or p2, not {variable!r}")
    out: Dict[Key, Fraction] = defaultdict(Fraction)
    for (d, lam), c in f.terms.items():
        mult = lam.count(k)
        if mult:
            rest = list(lam)
            rest.remove(k)
            out[(d, tuple(rest))] += c * mult
    caps = f.caps if f.exact else TruncationCaps(max(f.caps.n - k, 0), f.caps.d)
    return SymSeries(out, caps, f.exact)


def compose_univariate(u: Callable[[int], object], f: SymSeries, caps: Optional[TruncationCaps] = None) -> SymSeries:
    """sum_k u(k) f**k for f without constant term."""
    if f.constant() != 0:
        raise ValueError("univariate composition needs f without constant term")
    if caps is None:
        caps = f.caps
    if not f.exact and not f.caps.covers(caps):
        raise CapStarvation("series too short for composition", caps)
    f = f.with_caps(caps) if f.exact else f.truncate(caps)
    out = SymSeries.const(u(0), caps).with_caps(caps)
    power = SymSeries.const(1, caps).with_caps(caps)
    for k in range(1, caps.n + caps.d + 1):
        power = power * f
        if not power.terms:
            break
        c = _frac(u(k))
        if c:
            out = out + power * c
    out.exact = False
    return out


def rank(f: SymSeries, n: int, d: int) -> Fraction:
    """Dimension of the virtual representation in degree (n, d)."""
    return factorial(n) * f.coeff(d, (1,) * n)


# ---------------------------------------------------------------- characters

def _beta(nu: Partition, length: int) -> Tuple[int, ...]:
    nu = nu + (0,) * (length - len(nu))
    return tuple(nu[i] + length - 1 - i for i in range(length))


def _from_beta(beta: Iterable[int]) -> Partition:
    beta = sorted(beta, reverse=True)
    length = len(beta)
    parts = tuple(beta[i] - (length - 1 - i) for i in range(length))
    return tuple(x for x in parts if x > 0)


@lru_cache(maxsize=None)
def character(nu: Partition, lam: Partition) -> int:
    """Irreducible S_n character chi^nu at cycle type lam (Murnaghan-Nakayama)."""
    if sum(nu) != sum(lam):
        raise ValueError("shape and cycle type have different sizes")
    if not lam:
        return 1
    k, rest = lam[0], lam[1:]
    beta = _beta(nu, len(nu))
    occupied = set(beta)
    total = 0
    for b in beta:
        if b - k < 0 or (b - k) in occupied:
            continue
        height = sum(1 for x in beta if b - k < x < b)
        new = _from_beta([x if x != b else b - k for x in beta])
        total += (-1) ** height * character(new, rest)
    return total


def schur_expand(f: SymSeries, n: int, d: int) -> Dict[Partition, Fraction]:
    """Multiplicities of each irreducible in the (n, d) component."""
    piece = f.piece(n, d)
    out = {}
    for nu in partitions(n):
        m = sum((c * character(nu, lam) for lam, c in piece.items()), Fraction(0))
        if m:
            out[nu] = m
    return out


def to_power_sums(mults: Mapping[Partition, object], n: int, caps: TruncationCaps, d: int = 0) -> SymSeries:
    """Inverse of schur_expand for one component."""
    terms: Dict[Key, Fraction] = defaultdict(Fraction)
    for nu, m in mults.items():
        if sum(nu) != n:
            raise ValueError(f"shape {nu} is not a partition of {n}")
        for lam in partitions(n):
            terms[(d, lam)] += _frac(m) * character(tuple(nu), lam) / z_lambda(lam)
    return SymSeries(terms, caps, exact=True)


def hall_inner(a: Mapping[Partition, object], b: Mapping[Partition, object]) -> Fraction:
    """Hall inner product of two power-sum expansions of equal degree."""
    return sum((_frac(c) * _frac(b[lam]) * z_lambda(lam) for lam, c in a.items() if lam in b), Fraction(0))


def schur_power_sums(nu: Partition) -> Dict[Partition, Fraction]:
    n = sum(nu)
    return {lam: Fraction(character(nu, lam), z_lambda(lam)) for lam in partitions(n) if character(nu, lam)}
