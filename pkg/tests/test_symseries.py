import json
import random
from fractions import Fraction

import pytest

from moduli_euler.symseries import (
    CapStarvation,
    SymSeries,
    TruncationCaps,
    character,
    compose_univariate,
    hall_inner,
    partial,
    partitions,
    plethysm,
    psi,
    rank,
    schur_expand,
    schur_power_sums,
    to_power_sums,
    z_lambda,
)

C = TruncationCaps(6, 0)


def rand_series(rng, caps, constant=False, q=False):
    terms = {}
    for d in range(0, caps.d + 1 if q else 1):
        for n in range(0 if constant else 1, caps.n + 1):
            for lam in partitions(n):
                if rng.random() < 0.5:
                    terms[(d, lam)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return SymSeries(terms, caps)


def test_partitions_and_centraliser_orders():
    assert [len(partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    for n in range(1, 8):
        assert sum(Fraction(1, z_lambda(lam)) for lam in partitions(n)) == 1


def test_terms_beyond_caps_are_dropped():
    s = SymSeries({(0, (3, 2)): 1, (0, (2,)): 2, (5, ()): 1}, TruncationCaps(4, 2))
    assert s.terms == {(0, (2,)): Fraction(2)}


def test_product_respects_caps():
    p1 = SymSeries.p(1, C)
    assert (p1 ** 7).terms == {}
    assert (p1 ** 3).coeff(0, (1, 1, 1)) == 1


def test_adams_operations_compose():
    rng = random.Random(1)
    f = rand_series(rng, C, constant=True)
    assert psi(2, psi(3, f)) == psi(6, f)
    assert psi(2, f * f) == psi(2, f) * psi(2, f)


@pytest.mark.parametrize("n,m", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_power_sum_plethysm(n, m):
    assert plethysm(SymSeries.p(n, C), SymSeries.p(m, C), C) == SymSeries.p(n * m, C)


@pytest.mark.parametrize("seed", range(4))
def test_plethysm_homomorphism_laws(seed):
    rng = random.Random(seed)
    f, g = rand_series(rng, C, constant=True), rand_series(rng, C, constant=True)
    h = rand_series(rng, C)
    assert plethysm(f + g, h, C) == plethysm(f, h, C) + plethysm(g, h, C)
    assert plethysm(f * g, h, C) == plethysm(f, h, C) * plethysm(g, h, C)
    assert plethysm(f * 3, h, C) == plethysm(f, h, C) * 3


@pytest.mark.parametrize("seed", range(4))
def test_plethysm_associative(seed):
    rng = random.Random(100 + seed)
    f, g, h = rand_series(rng, C, constant=True), rand_series(rng, C), rand_series(rng, C)
    assert plethysm(plethysm(f, g, C), h, C) == plethysm(f, plethysm(g, h, C), C)


def test_plethysm_with_q():
    caps = TruncationCaps(4, 3)
    rng = random.Random(7)
    f = rand_series(rng, caps, constant=True, q=True)
    g, h = rand_series(rng, caps, q=True), rand_series(rng, caps, q=True)
    assert plethysm(plethysm(f, g, caps), h, caps) == plethysm(f, plethysm(g, h, caps), caps)
    # q in the outer series is a constant
    assert plethysm(SymSeries.q(2, caps), g, caps) == SymSeries.q(2, caps)


def test_plethysm_known_value():
    # h2 o h2 = s4 + s22
    h2 = to_power_sums({(2,): 1}, 2, C)
    out = plethysm(h2, h2, C)
    assert schur_expand(out, 4, 0) == {(4,): 1, (2, 2): 1}


def test_cap_starvation_reports_requirement():
    short = SymSeries({(0, (1,)): 1, (0, (2,)): 1}, TruncationCaps(2, 1))
    inner = SymSeries({(1, ()): 1, (0, (1,)): 1}, TruncationCaps(4, 2))
    with pytest.raises(CapStarvation) as exc:
        plethysm(short, inner, TruncationCaps(4, 2))
    assert exc.value.required == TruncationCaps(6, 2)
    with pytest.raises(CapStarvation):
        plethysm(SymSeries.p(1, C), SymSeries({(0, (1,)): 1}, TruncationCaps(2, 0)), C)


def test_polynomial_outer_accepts_constant_inner():
    f = SymSeries({(0, (1, 1)): 1}, C, exact=True)
    g = SymSeries({(0, ()): 1, (0, (1,)): 1}, C)
    assert plethysm(f, g, C) == SymSeries({(0, ()): 1, (0, (1,)): 2, (0, (1, 1)): 1}, C)
    with pytest.raises(ValueError):
        plethysm(SymSeries({(0, (1,)): 1}, C), g, C)


def test_partial_derivatives():
    f = SymSeries({(0, (2, 1, 1)): 3, (0, (2,)): 5, (0, (1,)): 1}, C)
    assert partial(f, "p1").terms == {(0, (2, 1)): 6, (0, ()): 1}
    assert partial(f, "p2").terms == {(0, (1, 1)): 3, (0, ()): 5}
    assert partial(f, "p1").caps == TruncationCaps(5, 0)
    with pytest.raises(ValueError):
        partial(f, "p3")


def test_compose_univariate_geometric():
    p1 = SymSeries.p(1, C)
    geometric = compose_univariate(lambda k: 1, p1)
    assert geometric * (1 - p1) == SymSeries.const(1, C)


def test_character_table_s3():
    assert [character((3,), lam) for lam in partitions(3)] == [1, 1, 1]
    assert [character((2, 1), lam) for lam in [(3,), (2, 1), (1, 1, 1)]] == [-1, 0, 2]
    assert [character((1, 1, 1), lam) for lam in [(3,), (2, 1), (1, 1, 1)]] == [1, -1, 1]


@pytest.mark.parametrize("n", range(1, 8))
def test_hall_orthonormality(n):
    for a in partitions(n):
        for b in partitions(n):
            assert hall_inner(schur_power_sums(a), schur_power_sums(b)) == (1 if a == b else 0)


@pytest.mark.parametrize("seed", range(3))
def test_schur_round_trip(seed):
    f = rand_series(random.Random(seed), C, constant=True)
    for n in range(C.n + 1):
        back = to_power_sums(schur_expand(f, n, 0), n, C)
        assert back.piece(n, 0) == f.piece(n, 0)


def test_rank_of_regular_representation():
    reg = SymSeries.monomial((1, 1, 1), C)
    assert rank(reg, 3, 0) == 6
    assert schur_expand(reg, 3, 0) == {(3,): 1, (2, 1): 2, (1, 1, 1): 1}


def test_json_round_trip_is_canonical():
    rng = random.Random(5)
    caps = TruncationCaps(4, 2)
    f = rand_series(rng, caps, constant=True, q=True)
    text = f.dumps()
    back = SymSeries.loads(text)
    assert back == f and back.caps == caps
    assert back.dumps() == text
    rows = json.loads(text)["terms"]
    assert rows == sorted(rows, key=lambda row: (row["d"], row["partition"]))
    assert all(isinstance(row["num"], str) and isinstance(row["den"], str) for row in rows)
