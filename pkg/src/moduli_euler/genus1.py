"""Genus-one assembly: the no-rational-tail series, rational tails, binomial data."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy

from . import tables
from .cyclecomb import DEFAULT_GUARD, dih_series, divisors, enumerate_and_classify, eta, phi, theta, theta_eta
from .elliptic import smooth_genus_one
from .genus0 import a0_family, cat_series, star_series
from .symseries import (
    CapStarvation,
    Partition,
    SymSeries,
    TruncationCaps,
    compose_univariate,
    partitions,
    plethysm,
    psi,
    schur_expand,
    to_power_sums,
)
from .wreath import BiSymSeries, WreathPoly, ind_trivial_char, s2_plethysm


def _caps0(n: int) -> TruncationCaps:
    return TruncationCaps(n, 0)


# ------------------------------------------------------------- degree zero

def nrt_zero_from_smooth(n_max: int, smooth: Optional[SymSeries] = None) -> SymSeries:
    """Stable genus-one curves without rational tails, from the smooth ones.

    The boundary of this locus consists of cycles of smooth rational curves;
    their contribution is expressed through the genus-zero derivatives.
    """
    c = _caps0(n_max)
    if smooth is None:
        smooth = smooth_genus_one(n_max)
    fam = a0_family(c)
    second, dot = fam.a0_p1p1, fam.a0_p2
    doubled = psi(2, second)
    geometric = compose_univariate(lambda k: 1, doubled, c)
    cycles = (dot * (dot + 1) + doubled / 4) * geometric
    for n in range(1, n_max + 1):
        log = compose_univariate(lambda k: Fraction(-1, k) if k else 0, psi(n, second), c)
        cycles = cycles - log * Fraction(phi(n), 2 * n)
    return smooth.truncate(c) + cycles


def load_nrt_zero(path) -> SymSeries:
    series = SymSeries.loads(Path(path).read_text())
    if any(d for (d, _) in series.terms):
        raise ValueError("the degree-zero series must not contain q")
    return series


@dataclass
class Backsolve:
    series: SymSeries
    determined: List[Partition]
    invisible: List[Partition]


def _solve(rows: List[List[Fraction]], rhs: List[Fraction]) -> List[Fraction]:
    a = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows])
    b = sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for x in rhs])
    try:
        sol, params = a.gauss_jordan_solve(b)
    except ValueError as exc:
        raise ValueError("linear system is inconsistent") from exc
    if params.shape[0]:
        raise ValueError("linear system is underdetermined")
    return [Fraction(int(x.p), int(x.q)) for x in sol]


def backsolve_nrt_zero(
    table: Mapping[int, tables.Cell] = tables.FULL_D1,
    r_samples: Sequence[int] = (1, 2, 3),
) -> Backsolve:
    """Recover the degree-zero series from the degree-one table.

    In degree one only monomials containing p1 can contribute, so exactly
    those coefficients up to Lambda-degree max(n) + 1 are determined.
    """
    n_top = max(table)
    caps = TruncationCaps(n_top, 1)
    unknowns = [lam for m in range(1, n_top + 2) for lam in partitions(m) if 1 in lam]
    invisible = [lam for m in range(1, n_top + 2) for lam in partitions(m) if 1 not in lam]
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    big = TruncationCaps(n_top + 1, 1)
    for r in r_samples:
        inner = SymSeries.p(1, caps) + star_series(r, caps)
        images = [plethysm(SymSeries.monomial(lam, big), inner, caps) * (r + 1) for lam in unknowns]
        for n in sorted(table):
            target = to_power_sums(tables.cell_at(table[n], r), n, caps, d=1)
            for mu in partitions(n):
                rows.append([img.coeff(1, mu) for img in images])
                rhs.append(target.coeff(1, mu))
    values = _solve(rows, rhs)
    series = SymSeries({(0, lam): v for lam, v in zip(unknowns, values)}, _caps0(n_top + 1))
    return Backsolve(series, unknowns, invisible)


def complete_backsolve(solved: Backsolve, source: SymSeries) -> SymSeries:
    """Take determined coefficients from the back-solve and the rest from source."""
    terms = {k: v for k, v in source.terms.items() if k[1] not in solved.determined}
    for (d, lam), v in solved.series.terms.items():
        terms[(d, lam)] = v
    return SymSeries(terms, source.caps)


# ------------------------------------------------------------- positive degree

def _geometric_power(m: int, f: SymSeries, caps: TruncationCaps) -> SymSeries:
    """(1 - f)**(-m)."""
    return compose_univariate(lambda i: comb(m + i - 1, i), f, caps)


def dih_cat_closed(r: int, caps: TruncationCaps) -> SymSeries:
    """Positive-degree part of the no-rational-tail series in closed form."""
    c = _caps0(caps.n)
    fam = a0_family(c)
    second, dot = fam.a0_p1p1, fam.a0_p2
    reflected = (dot * 2 + 1) ** 2
    powers: Dict[Tuple[int, int], SymSeries] = {}

    def power(j: int, m: int) -> SymSeries:
        if (j, m) not in powers:
            powers[(j, m)] = _geometric_power(m, psi(j, second), c)
        return powers[(j, m)]

    terms: Dict = defaultdict(Fraction)
    for d in range(2, caps.d + 1):
        for k in range(2, d + 1):
            pieces = []
            if k % 2 == 0:
                e = eta(k, d, r)
                if e:
                    pieces.append((e, reflected * power(2, k // 2 + 1)))
            for j in divisors(k):
                t = theta(j, k, d, r)
                if t:
                    pieces.append((t, power(j, k // j)))
            for coeff, series in pieces:
                for (_, lam), v in series.terms.items():
                    terms[(d, lam)] += coeff * v
    return SymSeries(terms, caps)


def point_count(d: int, r: int) -> Fraction:
    """Fixed points of the unmarked degree-d no-rational-tail locus."""
    total = Fraction(0)
    for k in range(2, d + 1):
        thetas, e = theta_eta(k, d, r)
        total += e + sum(thetas.values(), Fraction(0))
    return total


def dih_cat_plethysm(r: int, caps: TruncationCaps, mode: str = "closed", cat: Optional[BiSymSeries] = None) -> SymSeries:
    """The decorated-cycle character composed with caterpillars."""
    if cat is None:
        cat = cat_series(_caps0(caps.n))
    return s2_plethysm(dih_series(r, caps.d, mode), cat, caps)


def nrt_oracle(r: int, caps: TruncationCaps, guard: int = DEFAULT_GUARD) -> SymSeries:
    """Positive-degree no-rational-tail series assembled graph by graph.

    Every orbit of decorated cycles contributes the induced character of its
    stabiliser; no closed-form orbit counts are used.
    """
    cat = cat_series(_caps0(caps.n))
    total = WreathPoly()
    for d in range(2, caps.d + 1):
        for k in range(2, d + 1):
            census = enumerate_and_classify(k, d, r, guard)
            for _deco, stab in census.representatives:
                total = total + ind_trivial_char(stab, d)
    return s2_plethysm(total, cat, caps)


def nrt_series(r: int, caps: TruncationCaps, nrt_zero: SymSeries) -> SymSeries:
    """Generating series of torus-fixed genus-one maps without rational tails."""
    if nrt_zero.caps.n < caps.n:
        raise CapStarvation("degree-zero series too short", _caps0(caps.n))
    base = SymSeries(nrt_zero.truncate(_caps0(caps.n)).terms, caps) * (r + 1)
    return base + dih_cat_closed(r, caps)


def full_series(
    r: int,
    caps: TruncationCaps,
    nrt_zero: SymSeries,
    star: Optional[SymSeries] = None,
) -> SymSeries:
    """All torus-fixed genus-one maps: attach rational tails to the core."""
    padded = TruncationCaps(caps.n + caps.d, caps.d)
    if star is None:
        star = star_series(r, caps)
    inner = SymSeries.p(1, caps) + star.truncate(caps)
    return plethysm(nrt_series(r, padded, nrt_zero), inner, caps)


CONVENTIONS = ("normalised", "literal")


def rt_series(
    r: int,
    caps: TruncationCaps,
    nrt_zero: SymSeries,
    convention: str = "normalised",
    star: Optional[SymSeries] = None,
) -> SymSeries:
    """Contribution of maps that contract the genus-one core.

    ``normalised`` attaches the star series itself, ``literal`` attaches
    r + 1 copies of it.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if star is None:
        star = star_series(r, caps)
    tails = star.truncate(caps) * (r + 1 if convention == "literal" else 1)
    padded = _caps0(caps.n + caps.d)
    core = SymSeries(nrt_zero.truncate(padded).terms, TruncationCaps(padded.n, caps.d)) * (r + 1)
    return plethysm(core, SymSeries.p(1, caps) + tails, caps)


# ------------------------------------------------------------- binomial data

def binomial_decompose(values: Mapping[int, object], top: int, with_zero: bool = False) -> Dict[int, Fraction]:
    """Write r -> values[r] as sum_k a(k) C(r + 1, k) for k <= top.

    Uses exactly as many samples as unknowns (the smallest r first).
    """
    ks = list(range(0 if with_zero else 1, top + 1))
    rs = sorted(values)[: len(ks)]
    if len(rs) < len(ks):
        raise ValueError(f"need {len(ks)} samples, got {len(rs)}")
    rows = [[Fraction(comb(r + 1, k)) for k in ks] for r in rs]
    sol = _solve(rows, [Fraction(values[r]) for r in rs])
    return {k: a for k, a in zip(ks, sol) if a}


def binomial_evaluate(coeffs: Mapping[int, object], r: int) -> Fraction:
    return sum((Fraction(a) * comb(r + 1, k) for k, a in coeffs.items()), Fraction(0))


@dataclass
class InterpolationReport:
    shape: Partition
    coeffs: Dict[int, Fraction]
    integral: bool
    predicted: Fraction
    observed: Fraction
    zero_term: Fraction

    @property
    def ok(self) -> bool:
        return self.integral and self.predicted == self.observed and self.zero_term == 0


def interpolation_check(samples: Mapping[int, Mapping[Partition, object]], d: int) -> List[InterpolationReport]:
    """Fit on r = 1..d+1, predict r = d+2, and confirm no C(r+1, 0) term."""
    rs = sorted(samples)
    if len(rs) < d + 2:
        raise ValueError(f"need samples at r = 1..{d + 2}")
    shapes = sorted({s for r in rs for s in samples[r]})
    out = []
    for shape in shapes:
        vals = {r: Fraction(samples[r].get(shape, 0)) for r in rs}
        coeffs = binomial_decompose({r: vals[r] for r in rs[: d + 1]}, d + 1)
        extended = binomial_decompose({r: vals[r] for r in rs[: d + 2]}, d + 1, with_zero=True)
        out.append(
            InterpolationReport(
                shape=shape,
                coeffs=coeffs,
                integral=all(a.denominator == 1 for a in coeffs.values()),
                predicted=binomial_evaluate(coeffs, rs[d + 1]),
                observed=vals[rs[d + 1]],
                zero_term=extended.get(0, Fraction(0)),
            )
        )
    return out


def schur_cell(series: SymSeries, n: int, d: int) -> Dict[Partition, Fraction]:
    return schur_expand(series, n, d)


def binomial_table(
    compute, n_values: Iterable[int], d: int, r_values: Sequence[int]
) -> Dict[int, Dict[Partition, Dict[int, Fraction]]]:
    """Binomial coefficients of every Schur multiplicity, from per-r series.

    ``compute(r)`` must return a series covering every requested (n, d).
    """
    n_values = list(n_values)
    per_r = {r: compute(r) for r in r_values}
    out: Dict[int, Dict[Partition, Dict[int, Fraction]]] = {}
    for n in n_values:
        cells = {r: schur_expand(per_r[r], n, d) for r in r_values}
        shapes = sorted({s for c in cells.values() for s in c}, reverse=True)
        out[n] = {s: binomial_decompose({r: cells[r].get(s, 0) for r in r_values}, d + 1) for s in shapes}
    return out
