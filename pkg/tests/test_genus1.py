import copy
from fractions import Fraction

import pytest

from moduli_euler import tables
from moduli_euler.genus1 import (
    backsolve_nrt_zero,
    binomial_decompose,
    binomial_evaluate,
    binomial_table,
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
from moduli_euler.symseries import SymSeries, TruncationCaps, schur_expand


@pytest.fixture(scope="module")
def solved():
    return backsolve_nrt_zero()


@pytest.fixture(scope="module")
def nrt_zero(solved):
    return complete_backsolve(solved, nrt_zero_from_smooth(8))


def test_backsolve_agrees_with_smooth_route(solved):
    smooth = nrt_zero_from_smooth(4)
    assert solved.determined and solved.invisible
    for lam in solved.determined:
        assert solved.series.coeff(0, lam) == smooth.coeff(0, lam)


def test_low_degree_zero_terms(nrt_zero):
    assert nrt_zero.piece(1, 0) == {(1,): 2}
    assert nrt_zero.piece(2, 0) == {(1, 1): 1, (2,): 1}


def test_backsolve_detects_inconsistent_table():
    # degree-one cells are multiples of C(r+1, 2) for every choice of N
    bad = copy.deepcopy(tables.FULL_D1)
    bad[2][(2,)] = {2: 32, 3: 1}
    with pytest.raises(ValueError):
        backsolve_nrt_zero(bad)


def test_complete_backsolve_keeps_determined_values(solved):
    source = SymSeries({(0, (1,)): 99, (0, (2,)): 7}, TruncationCaps(4, 0))
    merged = complete_backsolve(solved, source)
    assert merged.coeff(0, (1,)) == 2 and merged.coeff(0, (2,)) == 7


def test_degree_one_table_is_reproduced(nrt_zero):
    caps = TruncationCaps(3, 1)
    table = binomial_table(lambda r: full_series(r, caps, nrt_zero), range(4), 1, [1, 2, 3])
    for n, cell in tables.FULL_D1.items():
        assert table[n] == {shape: {k: Fraction(a) for k, a in coeffs.items()} for shape, coeffs in cell.items()}


@pytest.mark.parametrize("d", range(2, 6))
def test_point_counts(d):
    coeffs = binomial_decompose({r: point_count(d, r) for r in range(1, d + 2)}, d + 1)
    assert coeffs == {k: Fraction(a) for k, a in tables.POINT_COUNTS[d].items()}


@pytest.mark.parametrize("r", [1, 2])
def test_cycle_series_three_ways(r):
    caps = TruncationCaps(4, 4)
    closed = dih_cat_closed(r, caps)
    assert dih_cat_plethysm(r, caps, "closed") == closed
    assert dih_cat_plethysm(r, caps, "bruteforce") == closed
    assert nrt_oracle(r, caps) == closed


def test_unmarked_cycles_are_points():
    caps = TruncationCaps(0, 5)
    for r in (1, 2):
        series = dih_cat_closed(r, caps)
        assert all(series.coeff(d, ()) == point_count(d, r) for d in range(2, 6))


def test_nrt_needs_long_enough_degree_zero_series():
    with pytest.raises(ValueError):
        nrt_series(1, TruncationCaps(6, 2), nrt_zero_from_smooth(3))


def test_no_single_colour_term_in_positive_degree(nrt_zero):
    # a degree >= 1 fixed graph has an edge, so one colour admits no colouring
    caps = TruncationCaps(2, 3)
    per_r = {r: full_series(r, caps, nrt_zero) for r in range(1, 5)}
    for d in (1, 2, 3):
        for n in (0, 1, 2):
            cells = {r: schur_expand(per_r[r], n, d) for r in per_r}
            for shape in {s for c in cells.values() for s in c}:
                coeffs = binomial_decompose({r: cells[r].get(shape, 0) for r in per_r}, 4)
                assert 1 not in coeffs


def test_rt_conventions(nrt_zero):
    caps = TruncationCaps(1, 2)
    normalised = rt_series(2, caps, nrt_zero)
    literal = rt_series(2, caps, nrt_zero, "literal")
    assert normalised.piece(0, 0) == literal.piece(0, 0)
    assert normalised != literal
    with pytest.raises(ValueError):
        rt_series(2, caps, nrt_zero, "other")


def test_binomial_basis_round_trip():
    coeffs = {3: Fraction(24), 2: Fraction(17)}
    values = {r: binomial_evaluate(coeffs, r) for r in range(1, 4)}
    assert binomial_decompose(values, 3) == coeffs


def test_interpolation_check_flags_non_polynomial_data():
    good = {r: {(1,): binomial_evaluate({2: 3}, r)} for r in range(1, 5)}
    assert all(rep.ok for rep in interpolation_check(good, 2))
    bad = {r: {(1,): r**4} for r in range(1, 5)}
    assert not any(rep.ok for rep in interpolation_check(bad, 2))


def test_load_nrt_zero(tmp_path):
    path = tmp_path / "n.json"
    path.write_text(nrt_zero_from_smooth(3).dumps())
    assert load_nrt_zero(path) == nrt_zero_from_smooth(3)
    path.write_text(SymSeries({(1, (1,)): 1}, TruncationCaps(2, 1)).dumps())
    with pytest.raises(ValueError):
        load_nrt_zero(path)
