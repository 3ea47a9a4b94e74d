import json
from fractions import Fraction

import pytest

from moduli_euler.genus0 import (
    Genus0Bundle,
    a0_family,
    cat_series,
    check_a0_family,
    genus0_bundle,
    log_series,
    stable_tree_series,
    star_series,
)
from moduli_euler.symseries import SymSeries, TruncationCaps, plethysm, rank, schur_expand

C7 = TruncationCaps(7, 0)


@pytest.fixture(scope="module")
def trees():
    return stable_tree_series(TruncationCaps(8, 0))


def test_open_moduli_characters():
    a0 = a0_family(C7).a0
    # H^0 and H^1 of M_{0,4}; H^0, H^1, H^2 of M_{0,5}
    assert schur_expand(a0, 3, 0) == {(3,): 1}
    assert schur_expand(a0, 4, 0) == {(4,): 1, (2, 2): -1}
    assert schur_expand(a0, 5, 0) == {(5,): 1, (3, 2): -1, (3, 1, 1): 1}
    assert [rank(a0, n, 0) for n in range(3, 8)] == [1, -1, 2, -6, 24]
    assert all(rank(a0, n, 0) == 0 for n in range(0, 3))


def test_closed_form_derivatives():
    assert check_a0_family(a0_family(TruncationCaps(6, 0)))


def test_log_series_is_second_derivative():
    assert a0_family(C7).a0_p1p1 == log_series(7)


def test_compactified_ranks(trees):
    assert [rank(trees.abar0, n, 0) for n in range(3, 9)] == [1, 2, 7, 34, 213, 1630]


def test_compactified_characters(trees):
    # M_{0,4} is a line; M_{0,5} has H^2 = s5 + s41
    assert schur_expand(trees.abar0, 4, 0) == {(4,): 2}
    assert schur_expand(trees.abar0, 5, 0) == {(5,): 3, (4, 1): 1}


def test_planted_trees_fixed_point(trees):
    c = TruncationCaps(8, 0)
    a0_p1 = a0_family(c).a0_p1.truncate(c)
    assert plethysm(a0_p1, SymSeries.p(1, c) + trees.planted, c) == trees.planted


def test_caterpillars_start_with_a_bare_edge():
    cat = cat_series(TruncationCaps(4, 0))
    assert cat.f1.piece(0, 0) == {(): 1} and cat.f2.piece(0, 0) == {(): 1}
    # one marked point on a two-pointed line: S_2 x S_1 acts trivially
    assert cat.f1.piece(1, 0) == {(1,): 1} and cat.f2.piece(1, 0) == {(1,): 1}


@pytest.mark.parametrize("r", [1, 2, 3])
def test_star_low_degree(r):
    w = star_series(r, TruncationCaps(3, 2))
    assert w.piece(0, 1) == {(): r}
    assert schur_expand(w, 1, 1) == {(1,): 2 * r}
    assert w.piece(0, 2) == {(): Fraction(3 * r * (r + 1), 2)}
    assert w.piece(0, 0) == {} and w.piece(1, 0) == {}


def test_star_against_hand_counted_fixed_loci():
    # Euler characteristics of torus-fixed loci on the line, with the extra
    # point at a chosen fixed point, counted graph by graph
    w = star_series(1, TruncationCaps(2, 3))
    assert schur_expand(w, 1, 2) == {(1,): 8}
    assert schur_expand(w, 2, 2) == {(2,): 21, (1, 1): 7}
    assert schur_expand(w, 1, 3) == {(1,): 32}
    # fixed points of the plane with one marking in degree two: 27 = 3 * 9
    assert star_series(2, TruncationCaps(0, 2)).piece(0, 2) == {(): 9}


def test_star_rejects_negative_r():
    with pytest.raises(ValueError):
        star_series(-1, TruncationCaps(1, 1))


def test_bundle_round_trip():
    bundle = genus0_bundle(2, TruncationCaps(3, 2))
    text = bundle.dumps()
    back = Genus0Bundle.from_json(json.loads(text))
    assert back.dumps() == text
    assert back.star == star_series(2, TruncationCaps(3, 2))
