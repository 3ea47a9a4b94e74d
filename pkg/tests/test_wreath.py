import itertools
import random
from fractions import Fraction

import pytest

from moduli_euler.symseries import SymSeries, TruncationCaps, partitions, plethysm, to_power_sums
from moduli_euler.wreath import (
    BiSymSeries,
    SignedPerm,
    WreathPoly,
    cycle_map,
    ind_trivial_char,
    restrict_two,
    s2_plethysm,
)

C = TruncationCaps(6, 0)


def hyperoctahedral(k):
    for perm in itertools.permutations(range(k)):
        for signs in itertools.product((1, -1), repeat=k):
            yield SignedPerm(signs, perm)


def test_rejects_bad_elements():
    with pytest.raises(ValueError):
        SignedPerm((1, 1), (0, 0))
    with pytest.raises(ValueError):
        SignedPerm((1, 2), (1, 0))


def test_composition_applies_right_factor_first():
    a = SignedPerm((1, -1, 1), (1, 2, 0))
    b = SignedPerm((-1, 1, 1), (0, 2, 1))
    for point in range(3):
        for sign in (1, -1):
            assert (a * b)(point, sign) == a(*b(point, sign))


def test_group_laws():
    elements = list(hyperoctahedral(3))
    assert len(set(elements)) == 48
    e = SignedPerm.identity(3)
    for g in elements:
        assert g * g.inverse() == e and g.inverse() * g == e


def test_cycle_map():
    assert cycle_map(SignedPerm.identity(3)) == ((1, 1, 1), ())
    assert cycle_map(SignedPerm((-1, 1, 1), (0, 1, 2))) == ((1, 1), (1,))
    # a 2-cycle with two sign flips is even, with one flip odd
    assert cycle_map(SignedPerm((-1, -1), (1, 0))) == ((2,), ())
    assert cycle_map(SignedPerm((-1, 1), (1, 0))) == ((), (2,))


def test_ind_trivial_char_checks_closure():
    with pytest.raises(ValueError):
        ind_trivial_char([SignedPerm((1, 1), (1, 0))])
    assert ind_trivial_char([SignedPerm.identity(2)], d=3) == WreathPoly({(3, (1, 1), ()): 1})


def test_full_group_character_sums_to_one():
    for k in range(1, 4):
        w = ind_trivial_char(hyperoctahedral(k))
        assert sum(w.terms.values()) == 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_equal_halves_give_complete_symmetric_plethysm(k):
    rng = random.Random(k)
    f = SymSeries({(0, lam): rng.randint(-3, 3) for n in range(1, 4) for lam in partitions(n)}, C)
    h_k = to_power_sums({(k,): 1}, k, TruncationCaps(k, 0))
    assert s2_plethysm(ind_trivial_char(hyperoctahedral(k)), BiSymSeries(f, f), C) == plethysm(h_k, f, C)


def test_trivial_subgroup_gives_power_of_first_half():
    f1 = SymSeries({(0, (1,)): 2, (0, (2,)): 1}, C)
    f2 = SymSeries({(0, (1,)): 5}, C)
    out = s2_plethysm(ind_trivial_char([SignedPerm.identity(2)]), BiSymSeries(f1, f2), C)
    assert out == f1 * f1


def test_q_grading_is_kept():
    f = SymSeries({(0, (1,)): 1}, TruncationCaps(4, 0))
    w = WreathPoly({(2, (1,), ()): 1, (5, (1,), ()): 1})
    out = s2_plethysm(w, BiSymSeries(f, f), TruncationCaps(4, 3))
    assert out.terms == {(2, (1,)): 1}


def test_restrict_two():
    caps = TruncationCaps(4, 0)
    h2 = to_power_sums({(2,): 1}, 2, caps)
    e2 = to_power_sums({(1, 1): 1}, 2, caps)
    assert (restrict_two(h2).f1.constant(), restrict_two(h2).f2.constant()) == (1, 1)
    assert (restrict_two(e2).f1.constant(), restrict_two(e2).f2.constant()) == (1, -1)


def test_json_round_trips():
    w = WreathPoly({(2, (2, 1), (1,)): Fraction(1, 3), (0, (), (2,)): -2})
    assert WreathPoly.from_json(w.to_json()) == w
    caps = TruncationCaps(3, 0)
    b = BiSymSeries(SymSeries({(0, (1,)): 1}, caps), SymSeries({(0, (2,)): Fraction(1, 2)}, caps))
    assert BiSymSeries.from_json(b.to_json()) == b
