"""Command-line front end.

    moduli-euler table --genus1 --d 1 --n 0..3 --r 1..3
    moduli-euler table --points --d 2..8
    moduli-euler verify --suite gamma --k 6 --d 6 --r 3
    moduli-euler census --k 2..4 --d 2..4 --r 1
    moduli-euler export-genus0 --n 4 --d 2 --r 1 --output bundle.json
    moduli-euler backsolve-n --complete --output n.json

Ranges "a..b" include both ends.  For verify a single number is an upper
bound.  Exit codes: 0 success, 2 configuration
error, 3 verification failure, 4 resource guard.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .cyclecomb import (
    DEFAULT_GUARD,
    ResourceGuard,
    census_rows,
    dih_series,
    enumerate_and_classify,
    fixed_count_formula,
    gamma_formula,
    gamma_labelled_formula,
    lattice_moebius,
    subgroup_classes,
    subgroups,
)
from .genus0 import Genus0Bundle, genus0_bundle
from .genus1 import (
    CONVENTIONS,
    backsolve_nrt_zero,
    binomial_decompose,
    complete_backsolve,
    dih_cat_closed,
    dih_cat_plethysm,
    full_series,
    interpolation_check,
    load_nrt_zero,
    nrt_oracle,
    nrt_series,
    nrt_zero_from_smooth,
    point_count,
    rt_series,
)
from .symseries import (
    CapStarvation,
    SymSeries,
    TruncationCaps,
    hall_inner,
    partitions,
    plethysm,
    psi,
    schur_expand,
    schur_power_sums,
    to_power_sums,
)

log = logging.getLogger("moduli_euler")

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY, EXIT_GUARD = 0, 2, 3, 4
CACHE_ENV = "MODULI_EULER_CACHE"


class ConfigError(ValueError):
    pass


def parse_range(text: str) -> List[int]:
    """'3', '1..4' (inclusive) or a comma list of either."""
    out: List[int] = []
    try:
        for chunk in text.split(","):
            if ".." in chunk:
                lo, hi = chunk.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise ConfigError(f"empty range {chunk!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(chunk))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad range {text!r}") from exc
    return sorted(set(out))


def fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def shape_label(shape: Tuple[int, ...]) -> str:
    return "(" + ",".join(map(str, shape)) + ")"


@dataclass
class RunConfig:
    command: str
    n_values: List[int] = field(default_factory=list)
    d_values: List[int] = field(default_factory=list)
    r_values: List[int] = field(default_factory=list)
    k_values: List[int] = field(default_factory=list)
    kind: str = "genus1"
    mode: str = "closed"
    fmt: str = "csv"
    n_source: str = "hybrid"
    n_file: Optional[str] = None
    convention: str = "normalised"
    output: Optional[str] = None
    guard: int = DEFAULT_GUARD

    @property
    def n_max(self) -> int:
        return max(self.n_values, default=0)

    @property
    def d_max(self) -> int:
        return max(self.d_values, default=0)

    def validate(self) -> None:
        for name in ("n_values", "d_values", "r_values", "k_values"):
            if any(v < 0 for v in getattr(self, name)):
                raise ConfigError(f"{name[0]} must be non-negative")
        if self.command == "table":
            if not self.d_values:
                raise ConfigError("--d is required")
            if self.kind != "points" and not self.n_values:
                raise ConfigError("--n is required")
            if any(r < 1 for r in self.r_values):
                raise ConfigError("r must be positive")
            if self.r_values and len(self.r_values) < self.d_max + 1:
                raise ConfigError(f"need at least {self.d_max + 1} values of r for degree {self.d_max}")


# ------------------------------------------------------------- shared inputs

def degree_zero_series(config: RunConfig, n_top: int) -> SymSeries:
    """The degree-zero series N up to Lambda-degree n_top."""
    if config.n_file:
        series = load_nrt_zero(config.n_file)
        if series.caps.n < n_top:
            raise CapStarvation(f"{config.n_file} only reaches n = {series.caps.n}", TruncationCaps(n_top, 0))
        return series
    smooth = nrt_zero_from_smooth(max(n_top, 4))
    if config.n_source == "smooth":
        return smooth
    return complete_backsolve(backsolve_nrt_zero(), smooth)


def cached_bundle(r: int, caps: TruncationCaps) -> Genus0Bundle:
    """Genus-zero inputs, read from MODULI_EULER_CACHE when a covering bundle exists."""
    root = os.environ.get(CACHE_ENV)
    path = Path(root) / f"genus0-r{r}-n{caps.n}-d{caps.d}.json" if root else None
    if path is not None and path.exists():
        log.info("loading genus-0 bundle %s", path)
        return Genus0Bundle.from_json(json.loads(path.read_text()))
    log.info("computing genus-0 bundle r=%d caps=(n=%d, d=%d)", r, caps.n, caps.d)
    bundle = genus0_bundle(r, caps)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(bundle.dumps())
        log.info("wrote %s", path)
    return bundle


# ------------------------------------------------------------- table

def table_rows(config: RunConfig) -> List[Dict]:
    """Rows {n, d, shape, k, a} with a(k) the binomial coefficients of each multiplicity."""
    rows: List[Dict] = []
    if config.kind == "points":
        for d in config.d_values:
            rs = config.r_values or list(range(1, d + 2))
            if len(rs) < d + 1:
                raise ConfigError(f"need at least {d + 1} values of r for degree {d}")
            coeffs = binomial_decompose({r: point_count(d, r) for r in rs}, d + 1)
            rows.extend({"n": 0, "d": d, "shape": (), "k": k, "a": a} for k, a in sorted(coeffs.items(), reverse=True))
        return rows
    caps = TruncationCaps(config.n_max, config.d_max)
    rs = config.r_values or list(range(1, config.d_max + 2))
    nrt_zero = degree_zero_series(config, caps.n + caps.d)
    per_r: Dict[int, SymSeries] = {}
    for r in rs:
        if config.kind == "nrt":
            per_r[r] = nrt_series(r, caps, nrt_zero)
            continue
        star = cached_bundle(r, caps).star
        if config.kind == "genus1":
            per_r[r] = full_series(r, caps, nrt_zero, star)
        else:
            per_r[r] = rt_series(r, caps, nrt_zero, config.convention, star)
    for d in config.d_values:
        for n in config.n_values:
            cells = {r: schur_expand(per_r[r], n, d) for r in rs}
            shapes = sorted({s for c in cells.values() for s in c}, reverse=True)
            for shape in shapes:
                coeffs = binomial_decompose({r: cells[r].get(shape, 0) for r in rs}, d + 1)
                rows.extend({"n": n, "d": d, "shape": shape, "k": k, "a": a} for k, a in sorted(coeffs.items(), reverse=True))
    return rows


def render_table(rows: List[Dict], style: str) -> str:
    if style == "json":
        data = [{"n": r["n"], "d": r["d"], "shape": list(r["shape"]), "k": r["k"], "a": fmt(r["a"])} for r in rows]
        return json.dumps(data, sort_keys=True, indent=1) + "\n"
    if style == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "d", "shape", "k", "a"])
        for r in rows:
            writer.writerow([r["n"], r["d"], shape_label(r["shape"]), r["k"], fmt(r["a"])])
        return buf.getvalue()
    if style == "md":
        grouped: Dict[Tuple, List[str]] = {}
        for r in rows:
            grouped.setdefault((r["d"], r["n"], r["shape"]), []).append(f"{fmt(r['a'])}C(r+1,{r['k']})")
        lines = ["| d | n | irreducible | multiplicity |", "|---|---|---|---|"]
        for (d, n, shape), terms in grouped.items():
            name = "s" + shape_label(shape) if shape else "1"
            lines.append(f"| {d} | {n} | {name} | {' + '.join(terms).replace('+ -', '- ')} |")
        return "\n".join(lines) + "\n"
    raise ConfigError(f"unknown format {style!r}")


# ------------------------------------------------------------- verify

SuiteResult = Tuple[bool, Dict]


def _upto(values: List[int], default: int, start: int) -> List[int]:
    """A single value is an upper bound; longer lists are taken as given."""
    if not values:
        return list(range(start, default + 1))
    if len(values) == 1:
        return list(range(start, values[0] + 1))
    return values


def suite_gamma(config: RunConfig) -> SuiteResult:
    ks = _upto(config.k_values, 6, 2)
    ds = _upto(config.d_values, 6, 2)
    rs = _upto(config.r_values, 3, 1)
    mismatches = []
    checked = 0
    for d in ds:
        for k in ks:
            if k < 2 or k > d:
                continue
            for r in rs:
                census = enumerate_and_classify(k, d, r, config.guard)
                for cls in subgroup_classes(k):
                    pairs = (
                        ("orbits", gamma_formula(cls, k, d, r), census.orbits.get(cls, 0)),
                        ("exact", gamma_labelled_formula(cls, k, d, r), census.exact.get(cls, 0)),
                        ("fixed", fixed_count_formula(cls, k, d, r), census.fixed.get(cls, 0)),
                    )
                    for what, formula, counted in pairs:
                        checked += 1
                        if Fraction(formula) != Fraction(counted):
                            mismatches.append(f"k={k} d={d} r={r} {cls.label()} {what}: {fmt(formula)} != {fmt(counted)}")
    return not mismatches, {"checked": checked, "mismatches": mismatches}


def suite_dih(config: RunConfig) -> SuiteResult:
    d_max = config.d_max or 5
    rs = _upto(config.r_values, 2, 1)
    bad = [r for r in rs if dih_series(r, d_max, "closed") != dih_series(r, d_max, "bruteforce", config.guard)]
    return not bad, {"d_max": d_max, "r": rs, "mismatched_r": bad}


def suite_dihcat(config: RunConfig) -> SuiteResult:
    caps = TruncationCaps(config.n_max or 5, config.d_max or 4)
    rs = _upto(config.r_values, 2, 1)
    bad = []
    for r in rs:
        closed = dih_cat_closed(r, caps)
        for mode in ("closed", "bruteforce"):
            if dih_cat_plethysm(r, caps, mode) != closed:
                bad.append(f"r={r} {mode}")
    return not bad, {"caps": [caps.n, caps.d], "mismatches": bad}


def suite_nrt(config: RunConfig) -> SuiteResult:
    caps = TruncationCaps(config.n_max or 4, config.d_max or 4)
    rs = _upto(config.r_values, 2, 1)
    bad = [r for r in rs if nrt_oracle(r, caps, config.guard) != dih_cat_closed(r, caps)]
    return not bad, {"caps": [caps.n, caps.d], "mismatched_r": bad}


def suite_poly(config: RunConfig) -> SuiteResult:
    d_max = config.d_max or 3
    n_max = config.n_max or 2
    caps = TruncationCaps(n_max, d_max)
    nrt_zero = degree_zero_series(config, caps.n + caps.d)
    series = {r: full_series(r, caps, nrt_zero, cached_bundle(r, caps).star) for r in range(1, d_max + 3)}
    failures = []
    checked = 0
    for d in range(1, d_max + 1):
        for n in range(0, n_max + 1):
            samples = {r: schur_expand(series[r], n, d) for r in range(1, d + 3)}
            for rep in interpolation_check(samples, d):
                checked += 1
                if not rep.ok:
                    failures.append(f"n={n} d={d} {shape_label(rep.shape)}")
    return not failures, {"checked": checked, "failures": failures}


def _random_series(rng: random.Random, caps: TruncationCaps, constant: bool = False) -> SymSeries:
    terms = {}
    for n in range(0 if constant else 1, caps.n + 1):
        for lam in partitions(n):
            if rng.random() < 0.6:
                terms[(0, lam)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return SymSeries(terms, caps)


def suite_plethysm(config: RunConfig) -> SuiteResult:
    rng = random.Random(20240917)
    caps = TruncationCaps(config.n_max or 6, 0)
    failures = []
    for n in range(1, 4):
        for m in range(1, 4):
            if n * m <= caps.n and plethysm(SymSeries.p(n, caps), SymSeries.p(m, caps), caps) != SymSeries.p(n * m, caps):
                failures.append(f"p{n} o p{m}")
    for trial in range(3):
        f, g = _random_series(rng, caps, True), _random_series(rng, caps, True)
        h, k = _random_series(rng, caps), _random_series(rng, caps)
        if plethysm(f + g, h, caps) != plethysm(f, h, caps) + plethysm(g, h, caps):
            failures.append(f"sum law #{trial}")
        if plethysm(f * g, h, caps) != plethysm(f, h, caps) * plethysm(g, h, caps):
            failures.append(f"product law #{trial}")
        if plethysm(plethysm(f, h, caps), k, caps) != plethysm(f, plethysm(h, k, caps), caps):
            failures.append(f"associativity #{trial}")
        if psi(2, psi(3, f)) != psi(6, f) or plethysm(SymSeries.p(2, caps), f, caps) != psi(2, f):
            failures.append(f"psi composition #{trial}")
        for n in range(caps.n + 1):
            mults = schur_expand(f, n, 0)
            if to_power_sums(mults, n, caps).piece(n, 0) != f.piece(n, 0):
                failures.append(f"schur round trip n={n} #{trial}")
    for n in range(1, 8):
        shapes = partitions(n)
        for a in shapes:
            for b in shapes:
                if hall_inner(schur_power_sums(a), schur_power_sums(b)) != (1 if a == b else 0):
                    failures.append(f"hall {shape_label(a)} {shape_label(b)}")
    return not failures, {"failures": failures}


def suite_moebius(config: RunConfig) -> SuiteResult:
    failures = []
    for k in range(2, (config.k_values and max(config.k_values)) or 9):
        subs = subgroups(k)
        mu = lattice_moebius(k)
        for i in range(len(subs)):
            for t in range(len(subs)):
                if i != t and subs[i] <= subs[t]:
                    if sum(mu[(i, s)] for s in range(len(subs)) if (i, s) in mu and subs[s] <= subs[t]) != 0:
                        failures.append(f"k={k} sum over interval ({i},{t})")
    return not failures, {"failures": failures}


SUITES: Dict[str, Callable[[RunConfig], SuiteResult]] = {
    "gamma": suite_gamma,
    "dih": suite_dih,
    "dihcat": suite_dihcat,
    "nrt": suite_nrt,
    "poly": suite_poly,
    "plethysm": suite_plethysm,
    "moebius": suite_moebius,
}


def run_verify(config: RunConfig, names: Sequence[str]) -> Tuple[bool, Dict[str, Dict]]:
    report = {}
    for name in names:
        ok, details = SUITES[name](config)
        report[name] = {"ok": ok, **details}
        log.info("suite %s: %s", name, "pass" if ok else "FAIL")
    return all(v["ok"] for v in report.values()), report


# ------------------------------------------------------------- census

def render_census(config: RunConfig, include_zero: bool) -> str:
    ks = config.k_values or list(range(2, config.d_max + 1))
    rows = census_rows(ks, config.d_values, config.r_values)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "d", "r", "class", "gamma"])
    totals: Dict[Tuple[int, int], Fraction] = {}
    for k, d, r, label, gamma in rows:
        totals[(d, r)] = totals.get((d, r), Fraction(0)) + gamma
        if gamma or include_zero:
            writer.writerow([k, d, r, label, fmt(gamma)])
    for (d, r), total in sorted(totals.items()):
        writer.writerow(["all", d, r, "total", fmt(total)])
    return buf.getvalue()


# ------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moduli-euler", description="Equivariant Euler characteristics of genus-one stable maps to P^r.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *names):
        for name in names:
            p.add_argument(f"--{name}", type=parse_range, default=[], metavar="A..B")
        p.add_argument("--output", "-o", help="write here instead of stdout")

    def n_source(p):
        p.add_argument("--n-source", choices=("hybrid", "smooth"), default="hybrid",
                       help="degree-zero series: table back-solve completed by the smooth route, or the smooth route alone")
        p.add_argument("--n-file", help="degree-zero series as SymSeries JSON (overrides --n-source)")

    t = sub.add_parser("table", help="Schur multiplicities in the binomial basis")
    kind = t.add_mutually_exclusive_group(required=True)
    kind.add_argument("--genus1", dest="kind", action="store_const", const="genus1", help="all genus-one maps")
    kind.add_argument("--nrt", dest="kind", action="store_const", const="nrt", help="maps without rational tails")
    kind.add_argument("--rt", dest="kind", action="store_const", const="rt", help="maps contracting the genus-one core")
    kind.add_argument("--points", dest="kind", action="store_const", const="points", help="unmarked fixed-point counts")
    common(t, "n", "d", "r")
    n_source(t)
    t.add_argument("--format", dest="fmt", choices=("csv", "json", "md"), default="csv")
    t.add_argument("--convention", choices=CONVENTIONS, default="normalised")

    v = sub.add_parser("verify", help="run the cross-checking suites")
    v.add_argument("--suite", action="append", choices=sorted(SUITES) + ["all"], help="repeatable; default all")
    common(v, "k", "n", "d", "r")
    n_source(v)
    v.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="maximum decorations per enumeration")

    c = sub.add_parser("census", help="orbit counts of decorated cycles by stabiliser class (CSV)")
    common(c, "k", "d", "r")
    c.add_argument("--all", dest="include_zero", action="store_true", help="also print zero rows")

    e = sub.add_parser("export-genus0", help="write the genus-zero bundle as JSON")
    common(e, "n", "d", "r")

    b = sub.add_parser("backsolve-n", help="recover the degree-zero series from the degree-one table")
    b.add_argument("--complete", action="store_true", help="fill coefficients the table cannot see from the smooth route")
    b.add_argument("--output", "-o")
    return parser


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _config(args) -> RunConfig:
    config = RunConfig(
        command=args.command,
        n_values=getattr(args, "n", []),
        d_values=getattr(args, "d", []),
        r_values=getattr(args, "r", []),
        k_values=getattr(args, "k", []),
        kind=getattr(args, "kind", "genus1") or "genus1",
        fmt=getattr(args, "fmt", "csv"),
        n_source=getattr(args, "n_source", "hybrid"),
        n_file=getattr(args, "n_file", None),
        convention=getattr(args, "convention", "normalised"),
        output=args.output,
        guard=getattr(args, "guard", DEFAULT_GUARD),
    )
    config.validate()
    return config


def _single(values: List[int], name: str) -> int:
    if len(values) != 1:
        raise ConfigError(f"--{name} takes a single value here")
    return values[0]


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    log.propagate = False
    try:
        config = _config(args)
        if config.command == "table":
            _emit(render_table(table_rows(config), config.fmt), config.output)
        elif config.command == "verify":
            names = sorted(SUITES) if not args.suite or "all" in args.suite else sorted(set(args.suite))
            ok, report = run_verify(config, names)
            _emit(json.dumps(report, sort_keys=True, indent=1) + "\n", config.output)
            return EXIT_OK if ok else EXIT_VERIFY
        elif config.command == "census":
            if not config.d_values or not config.r_values:
                raise ConfigError("--d and --r are required")
            _emit(render_census(config, args.include_zero), config.output)
        elif config.command == "export-genus0":
            caps = TruncationCaps(_single(config.n_values, "n"), _single(config.d_values, "d"))
            _emit(cached_bundle(_single(config.r_values, "r"), caps).dumps() + "\n", config.output)
        elif config.command == "backsolve-n":
            solved = backsolve_nrt_zero()
            log.info("determined %d coefficients; %d are invisible to the table", len(solved.determined), len(solved.invisible))
            series = complete_backsolve(solved, nrt_zero_from_smooth(solved.series.caps.n)) if args.complete else solved.series
            _emit(series.dumps() + "\n", config.output)
    except ResourceGuard as exc:
        print(f"moduli-euler: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ConfigError, CapStarvation, ValueError, OSError) as exc:
        print(f"moduli-euler: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
