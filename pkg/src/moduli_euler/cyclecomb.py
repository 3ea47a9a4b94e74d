"""Decorated k-cycles: closed-form orbit counts and a brute-force census.

A decoration of the k-cycle assigns a positive weight to every edge
(weights summing to d) and one of r+1 colours to every vertex so that
adjacent vertices differ.  The dihedral group D_k, embedded in B_k via its
action on half-edges, permutes decorations.
"""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, FrozenSet, List, Tuple

from sympy import divisors, totient
from sympy.functions.combinatorial.numbers import mobius as _mobius

from .wreath import SignedPerm, WreathPoly, ind_trivial_char

DEFAULT_GUARD = 10**7


class ResourceGuard(RuntimeError):
    """An enumeration would exceed the configured size limit."""


def mobius(n: int) -> int:
    return int(_mobius(n))


def phi(n: int) -> int:
    return int(totient(n))


# ------------------------------------------------------------- closed forms

def _binom_weights(j: int, l: int, k: int, d: int) -> int:
    """C(d*l/k - 1, l - 1) when k divides d*l, else 0."""
    if (d * l) % k:
        return 0
    top = d * l // k - 1
    return comb(top, l - 1) if top >= 0 else 0


def fg_polys(j: int, k: int, d: int, r: int) -> Tuple[int, int]:
    """The pair (F, G) evaluated at r."""
    f = 0
    for l in divisors(j):
        b = _binom_weights(j, l, k, d)
        if b:
            f += mobius(j // l) * b * (r**l + (-1) ** l * r)
    g = 0
    if j % 2 == 0:
        for l in divisors(j // 2):
            b = _binom_weights(j, l, k, d)
            if b:
                g += mobius(j // (2 * l)) * b * (r ** (l + 1) + r**l)
    return f, g


def theta(j: int, k: int, d: int, r: int) -> Fraction:
    if k % j:
        raise ValueError(f"{j} does not divide {k}")
    total = sum(fg_polys(i, k, d, r)[0] for i in divisors(k // j))
    return Fraction(phi(j), 2 * k) * total


def eta(k: int, d: int, r: int) -> Fraction:
    return Fraction(sum(fg_polys(j, k, d, r)[1] for j in divisors(k)), 4)


def theta_eta(k: int, d: int, r: int) -> Tuple[Dict[int, Fraction], Fraction]:
    return {j: theta(j, k, d, r) for j in divisors(k)}, eta(k, d, r)


def path_chromatic(k: int, x: int) -> int:
    """Proper colourings of a path with k edges using x colours."""
    return x * (x - 1) ** k


def cycle_chromatic(k: int, x: int) -> int:
    """Proper colourings of a k-cycle using x colours."""
    return (x - 1) ** k + (-1) ** k * (x - 1)


def dihedral_moebius(a: int, b: int, reflected: bool, k: int) -> int:
    """Moebius value from <rho^a> (or a reflection subgroup) up to index-b subgroup.

    With ``reflected`` the bottom is the rotation group <rho^a> and the top
    contains reflections; otherwise both are of the same kind.
    """
    if k % a or k % b or a % b:
        return 0
    m = mobius(a // b)
    return -(a // b) * m if reflected else m


@dataclass(frozen=True, order=True)
class SubgroupClass:
    """Conjugacy class of a possible stabiliser: <rho^j> or <rho^j, rho tau>."""

    kind: str
    j: int

    def __post_init__(self):
        if self.kind not in ("rot", "rotrefl"):
            raise ValueError(f"unknown subgroup kind {self.kind!r}")

    def label(self) -> str:
        return f"Rot({self.j})" if self.kind == "rot" else f"RotRefl({self.j})"

    @classmethod
    def parse(cls, text: str) -> "SubgroupClass":
        text = text.strip()
        for kind, prefix in (("rotrefl", "RotRefl("), ("rot", "Rot(")):
            if text.startswith(prefix) and text.endswith(")"):
                return cls(kind, int(text[len(prefix):-1]))
        raise ValueError(f"cannot parse subgroup class {text!r}")


def subgroup_classes(k: int) -> List[SubgroupClass]:
    out = [SubgroupClass("rot", j) for j in divisors(k)]
    if k % 2 == 0:
        out += [SubgroupClass("rotrefl", j) for j in divisors(k) if j % 2 == 0]
    return out


def gamma_formula(cls: SubgroupClass, k: int, d: int, r: int) -> Fraction:
    """Number of orbits of decorations whose stabiliser lies in cls."""
    if k % cls.j:
        return Fraction(0)
    f, g = fg_polys(cls.j, k, d, r)
    if cls.kind == "rot":
        return Fraction(f, 2 * cls.j) - Fraction(g, 4)
    if k % 2 or cls.j % 2:
        return Fraction(0)
    return Fraction(g, 2)


def gamma_labelled_formula(cls: SubgroupClass, k: int, d: int, r: int) -> Fraction:
    """Number of decorations whose stabiliser is exactly the class representative."""
    if k % cls.j:
        return Fraction(0)
    f, g = fg_polys(cls.j, k, d, r)
    if cls.kind == "rot":
        return f - Fraction(cls.j * g, 2)
    if k % 2 or cls.j % 2:
        return Fraction(0)
    return Fraction(g)


def fixed_count_formula(cls: SubgroupClass, k: int, d: int, r: int) -> int:
    """Decorations fixed by the class representative."""
    if cls.kind == "rot":
        j = cls.j
        if (d * j) % k:
            return 0
        return comb(d * j // k - 1, j - 1) * cycle_chromatic(j, r + 1)
    l = cls.j // 2
    if (d * l) % k:
        return 0
    return comb(d * l // k - 1, l - 1) * path_chromatic(l, r + 1)


# ------------------------------------------------------------- the group

def rotation(k: int, a: int = 1) -> SignedPerm:
    return SignedPerm((1,) * k, tuple((i + a) % k for i in range(k)))


def reflection(k: int, c: int = 0) -> SignedPerm:
    """rho^c tau, where tau reverses the cycle and swaps the half-edges."""
    return SignedPerm((-1,) * k, tuple((c + k - 1 - i) % k for i in range(k)))


@lru_cache(maxsize=None)
def dihedral_group(k: int) -> Tuple[SignedPerm, ...]:
    return tuple(rotation(k, a) for a in range(k)) + tuple(reflection(k, c) for c in range(k))


def generate(gens, k: int) -> FrozenSet[SignedPerm]:
    group = {SignedPerm.identity(k)}
    frontier = list(group)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in group:
                    group.add(y)
                    new.append(y)
        frontier = new
    return frozenset(group)


def representative(cls: SubgroupClass, k: int) -> FrozenSet[SignedPerm]:
    gens = [rotation(k, cls.j)]
    if cls.kind == "rotrefl":
        gens.append(reflection(k, 1))
    return generate(gens, k)


def describe(g: SignedPerm) -> Tuple[str, int]:
    """('rot', a) for rho^a or ('refl', c) for rho^c tau."""
    k = g.k
    if all(s == 1 for s in g.signs):
        return "rot", g.perm[0]
    return "refl", (g.perm[0] - (k - 1)) % k


def classify(group: FrozenSet[SignedPerm]) -> Tuple[SubgroupClass, bool]:
    """Normal form of a subgroup of D_k and whether it fixes a vertex."""
    k = next(iter(group)).k
    rots = [a for kind, a in map(describe, group) if kind == "rot"]
    refls = [c for kind, c in map(describe, group) if kind == "refl"]
    j = k // len(rots)
    if not refls:
        return SubgroupClass("rot", j), True
    # rho^c tau reverses no edge exactly when k is even and c odd
    vertex_fixing = k % 2 == 0 and refls[0] % 2 == 1
    return SubgroupClass("rotrefl", j), vertex_fixing


# ------------------------------------------------------------- decorations

Decoration = Tuple[Tuple[int, ...], Tuple[int, ...]]


def decoration_count(k: int, d: int, r: int) -> int:
    if d < k:
        return 0
    return comb(d - 1, k - 1) * cycle_chromatic(k, r + 1)


def compositions(d: int, k: int):
    for cuts in itertools.combinations(range(1, d), k - 1):
        bounds = (0,) + cuts + (d,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


def colourings(k: int, r: int):
    for cols in itertools.product(range(r + 1), repeat=k):
        if all(cols[i] != cols[(i + 1) % k] for i in range(k)):
            yield cols


def act(g: SignedPerm, deco: Decoration) -> Decoration:
    """Push a decoration forward along g.

    Edge i joins the +half-edge of vertex i to the -half-edge of vertex i+1.
    """
    weights, cols = deco
    k = g.k
    new_cols = [0] * k
    new_weights = [0] * k
    for i in range(k):
        target, sign = g(i, 1)
        new_cols[target] = cols[i]
        edge = target if sign == 1 else (target - 1) % k
        new_weights[edge] = weights[i]
    return tuple(new_weights), tuple(new_cols)


def stabiliser(deco: Decoration, k: int) -> FrozenSet[SignedPerm]:
    return frozenset(g for g in dihedral_group(k) if act(g, deco) == deco)


@dataclass
class Census:
    k: int
    d: int
    r: int
    orbits: Dict[SubgroupClass, Fraction] = field(default_factory=dict)
    exact: Dict[SubgroupClass, int] = field(default_factory=dict)
    fixed: Dict[SubgroupClass, int] = field(default_factory=dict)
    representatives: List[Tuple[Decoration, FrozenSet[SignedPerm]]] = field(default_factory=list)
    total: int = 0


def enumerate_and_classify(k: int, d: int, r: int, guard: int = DEFAULT_GUARD) -> Census:
    """Enumerate every decoration and sort them by stabiliser class."""
    size = decoration_count(k, d, r)
    if size > guard:
        raise ResourceGuard(f"{size} decorations for k={k}, d={d}, r={r} exceed the guard {guard}")
    group = dihedral_group(k)
    reps = {cls: representative(cls, k) for cls in subgroup_classes(k)}
    orbits: Dict[SubgroupClass, Fraction] = defaultdict(Fraction)
    exact: Counter = Counter()
    fixed: Counter = Counter()
    representatives = []
    total = 0
    for weights in compositions(d, k):
        for cols in colourings(k, r):
            deco = (weights, cols)
            total += 1
            stab = stabiliser(deco, k)
            cls, vertex_fixing = classify(stab)
            if not vertex_fixing:
                raise AssertionError(f"decoration {deco} fixed by an edge-fixing reflection")
            orbits[cls] += Fraction(len(stab), len(group))
            for c, h in reps.items():
                if h == stab:
                    exact[c] += 1
                if h <= stab:
                    fixed[c] += 1
            if deco == min(act(g, deco) for g in group):
                representatives.append((deco, stab))
    census = Census(k, d, r, dict(orbits), dict(exact), dict(fixed), representatives, total)
    return census


# ------------------------------------------------------------- lattice check

@lru_cache(maxsize=None)
def subgroups(k: int) -> Tuple[FrozenSet[SignedPerm], ...]:
    group = dihedral_group(k)
    found = {generate([], k)}
    for a in group:
        for b in group:
            found.add(generate([a, b], k))
    return tuple(sorted(found, key=len))


def lattice_moebius(k: int) -> Dict[Tuple[int, int], int]:
    """Moebius function of the subgroup lattice of D_k by direct recursion."""
    subs = subgroups(k)
    mu: Dict[Tuple[int, int], int] = {}
    for i, h in enumerate(subs):
        for t, kk in enumerate(subs):
            if not h <= kk:
                continue
            if i == t:
                mu[(i, t)] = 1
                continue
            mu[(i, t)] = -sum(mu[(i, s)] for s, l in enumerate(subs) if (i, s) in mu and h <= l < kk)
    return mu


# ------------------------------------------------------------- assembly

def _closed_piece(k: int, d: int, r: int) -> WreathPoly:
    thetas, et = theta_eta(k, d, r)
    terms: Dict = defaultdict(Fraction)
    if k % 2 == 0:
        terms[(d, (2,) * (k // 2 - 1), (1, 1))] += et
    for j, t in thetas.items():
        terms[(d, (j,) * (k // j), ())] += t
    return WreathPoly(terms)


def dih_series(r: int, d_max: int, mode: str = "closed", guard: int = DEFAULT_GUARD) -> WreathPoly:
    """Sum over d <= d_max and 2 <= k <= d of the decorated-cycle characters."""
    if mode not in ("closed", "bruteforce"):
        raise ValueError(f"unknown mode {mode!r}")
    total = WreathPoly()
    for d in range(2, d_max + 1):
        for k in range(2, d + 1):
            if mode == "closed":
                total = total + _closed_piece(k, d, r)
                continue
            census = enumerate_and_classify(k, d, r, guard)
            for cls, count in census.orbits.items():
                total = total + ind_trivial_char(representative(cls, k), d) * count
    return total


def census_rows(k_range, d_range, r_range) -> List[Tuple[int, int, int, str, Fraction]]:
    rows = []
    for d in d_range:
        for k in k_range:
            if k < 2 or k > d:
                continue
            for r in r_range:
                for cls in subgroup_classes(k):
                    rows.append((k, d, r, cls.label(), gamma_formula(cls, k, d, r)))
    return rows
