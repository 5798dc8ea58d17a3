from __future__ import annotations

from fractions import Fraction

import pytest

from stratum.creal import Ordering, cmp_at, dyadic, to_decimal
from stratum.errors import InputError, PrecisionLimitError, StepBudgetExceeded
from stratum.machine import EVENS, LOOP, THREE_STEP, Program, enumerator_halting_on, finite_set_decider, run_bounded
from stratum.oracle_tower import (
    StagedOracle,
    ackermann,
    ackermann_real,
    jump_stage_set,
    specker,
    sum_real,
    witness_real,
)


def test_level_zero_oracle_is_empty():
    o = StagedOracle(0, 100)
    assert not any(o.member(k) for k in range(50))


def test_level_zero_is_not_a_jump():
    with pytest.raises(InputError):
        jump_stage_set(0, 5)
    with pytest.raises(InputError):
        witness_real(0)
    with pytest.raises(InputError):
        jump_stage_set(4, 5)


def test_stage_zero_is_empty():
    assert jump_stage_set(1, 0) == frozenset()
    assert witness_real(1).stage_approximant(0) == 0


def test_level_one_monotone():
    previous = frozenset()
    for s in range(0, 300):
        current = jump_stage_set(1, s)
        assert previous <= current
        previous = current


def test_known_three_step_program_enters_and_stays():
    k0 = THREE_STEP.index
    assert k0 == 26
    # program k0 run on its own index still halts after 3 steps
    assert run_bounded(THREE_STEP, k0, 3).halted
    for s in range(max(k0, 3) + 1, 200):
        assert k0 in jump_stage_set(1, s)
    assert k0 not in jump_stage_set(1, k0)


def test_level_one_matches_definition():
    s = 60
    expected = {k for k in range(s) if run_bounded(Program.from_index(k), k, s).halted}
    assert jump_stage_set(1, s) == expected


def test_higher_levels_are_deterministic():
    for n in (2, 3):
        assert jump_stage_set(n, 80) == jump_stage_set(n, 80)
        assert StagedOracle(n, 80).member(26) == (26 in jump_stage_set(n, 80))


def test_witness_real_values():
    w = witness_real(1)
    values = [w.stage_approximant(s) for s in range(257)]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assert all(0 <= v < 1 for v in values)
    assert w.level == 1 and w.description == "jump-sum(1)"
    for n in (2, 3):
        assert all(0 <= witness_real(n).stage_approximant(s) < 1 for s in (0, 10, 50))


def test_specker():
    sp, w = specker(), witness_real(1)
    assert sp.stage_approximant(0) == 0
    values = [sp.stage_approximant(s) for s in range(513)]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assert all(v <= 1 for v in values)
    for s in (1, 7, 64, 300, 512):
        assert abs(values[s] - w.stage_approximant(s)) <= s * dyadic(s)


def test_sum_real_decidable():
    assert all(sum_real(finite_set_decider([])).approximant(n) == 0 for n in range(10))
    half = sum_real(finite_set_decider([0]))
    assert all(half.approximant(n) == Fraction(1, 2) for n in range(10))
    evens = sum_real(EVENS)
    assert to_decimal(evens, 6) == "0.666666"
    assert evens.modulus(9) == 10
    for n in range(30):
        assert abs(evens.approximant(n) - Fraction(2, 3)) <= dyadic(n)
        m = evens.modulus(n)
        for j in range(m, m + 8):
            assert abs(evens.sequence(j) - evens.sequence(m)) <= dyadic(n)


def test_sum_real_step_budget_names_k():
    with pytest.raises(StepBudgetExceeded) as info:
        sum_real(enumerator_halting_on([0, 1, 2, 3]), step_budget=500).approximant(10)
    assert info.value.index == 4
    assert "k=4" in str(info.value)
    with pytest.raises(StepBudgetExceeded):
        sum_real(LOOP, step_budget=100)


def test_sum_real_enumerable():
    r = sum_real(enumerator_halting_on([1, 3]), "enumerable")
    assert r.stage_approximant(0) == 0
    assert r.stage_approximant(200) == Fraction(1, 4) + Fraction(1, 16)
    with pytest.raises(InputError):
        sum_real(EVENS, "semidecidable")


def test_injectivity_at_the_first_difference():
    x = sum_real(finite_set_decider([0, 3, 5, 9]))
    y = sum_real(finite_set_decider([0, 3, 6, 9]))
    k_star = 5
    assert cmp_at(x, y, k_star + 3) is Ordering.GREATER


def test_a_cancelling_tail_needs_more_precision():
    # {5} against {6, 7, 8}: the gap is 2**-9, not 2**-(k*+1)
    x = sum_real(finite_set_decider([5]))
    y = sum_real(finite_set_decider([6, 7, 8]))
    assert cmp_at(x, y, 8) is Ordering.INDISTINGUISHABLE
    assert cmp_at(x, y, 10) is Ordering.GREATER


def test_ackermann_function():
    assert ackermann(0, 0) == 1
    assert (ackermann(1, 1), ackermann(2, 2), ackermann(3, 3)) == (3, 7, 61)
    assert ackermann(2, 3) == 9 and ackermann(3, 2) == 29
    assert ackermann(4, 0) == 13


def test_ackermann_real():
    assert ackermann_real(0).approximant(0) == Fraction(1, 2)
    assert ackermann_real(0).approximant(1) == Fraction(1, 2)
    r = ackermann_real(3)
    exact = Fraction(1, 2) + Fraction(1, 8) + Fraction(1, 128) + Fraction(1, 2 ** 61)
    for n in (0, 10, 61, 200, 5000):
        assert abs(r.approximant(n) - exact) <= dyadic(n)
    assert to_decimal(r, 20) == "0.63281250000000000043"
    with pytest.raises(InputError):
        ackermann_real(4)


def test_ackermann_precision_limit_for_small_cutoff():
    r = ackermann_real(1)
    assert r.approximant(6) == Fraction(5, 8)
    with pytest.raises(PrecisionLimitError):
        r.approximant(7)
