from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from stratum.errors import InputError
from stratum.machine import (
    EVENS,
    HALT,
    INC,
    JZDEC,
    LOOP,
    QRY,
    SUCCESSOR,
    THREE_STEP,
    Instr,
    Program,
    enumerator_halting_on,
    finite_set_decider,
    pair,
    program,
    run_bounded,
    unpair,
)

instrs = st.one_of(
    st.just(Instr(HALT)),
    st.builds(Instr, st.just(INC), st.integers(0, 6)),
    st.builds(Instr, st.just(QRY), st.integers(0, 6)),
    st.builds(Instr, st.just(JZDEC), st.integers(0, 6), st.integers(0, 8)),
)


class _SetOracle:
    def __init__(self, members):
        self.members = set(members)

    def member(self, k):
        return k in self.members


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_pairing_roundtrip(a, b):
    assert unpair(pair(a, b)) == (a, b)


@given(st.integers(0, 10 ** 5))
def test_pairing_onto(z):
    assert pair(*unpair(z)) == z


@given(st.integers(0, 2 ** 64))
def test_every_natural_is_a_program(n):
    assert Program.from_index(n).index == n


@given(st.lists(instrs, max_size=8))
def test_every_program_has_its_index(code):
    p = Program(tuple(code))
    assert Program.from_index(p.index) == p


def test_small_indices_are_distinct():
    seen = {Program.from_index(n) for n in range(5000)}
    assert len(seen) == 5000
    assert Program.from_index(0) == Program(())


def test_instruction_numbers():
    assert Instr(HALT).number == 0
    assert Instr(INC, 2).number == 7
    assert Instr(QRY, 0).number == 2
    assert Instr(JZDEC, 1, 0).number == 3 + 3 * pair(1, 0)
    for c in range(300):
        assert Instr.from_number(c).number == c


def test_text_roundtrip():
    for p in (SUCCESSOR, EVENS, LOOP, THREE_STEP):
        assert Program.from_text(p.to_text()) == p
    with pytest.raises(InputError):
        Program.from_text("FROB R1")
    with pytest.raises(InputError):
        Program.from_text("INC Rx")


def test_empty_program_answers_zero():
    for x in (0, 5, 99):
        r = run_bounded(Program(()), x, 10)
        assert r.halted and r.value == 0 and r.steps == 1


def test_loop_times_out():
    r = run_bounded(LOOP, 0, 1000)
    assert r.timeout and r.steps == 1000


def test_successor():
    r = run_bounded(SUCCESSOR, 41, 10 ** 4)
    assert r.halted and r.value == 42
    assert run_bounded(SUCCESSOR, 0, 100).value == 1


def test_three_step_program():
    r = run_bounded(THREE_STEP, 7, 3)
    assert r.halted and r.value == 2 and r.steps == 3
    assert run_bounded(THREE_STEP, 7, 2).timeout


def test_evens_decider():
    for x in range(30):
        r = run_bounded(EVENS, x, 10 ** 4)
        assert r.halted and r.value == (1 if x % 2 == 0 else 0)


def test_query_consults_oracle():
    p = Program.from_text("INC R0\nINC R0\nQRY R0\nHALT")
    assert run_bounded(p, 0, 10, _SetOracle({2})).value == 1
    assert run_bounded(p, 0, 10, _SetOracle(set())).value == 0
    assert run_bounded(p, 0, 10).value == 0  # default: empty oracle


@given(st.sets(st.integers(0, 20), max_size=8), st.integers(0, 30))
def test_finite_set_decider(members, x):
    r = run_bounded(finite_set_decider(members), x, 10 ** 4)
    assert r.halted and r.value == (1 if x in members else 0)


@given(st.sets(st.integers(0, 12), max_size=5), st.integers(0, 16))
def test_enumerator_halts_exactly_on_members(members, x):
    r = run_bounded(enumerator_halting_on(members), x, 2000)
    assert r.halted == (x in members)


def test_run_is_deterministic():
    for idx in range(0, 400, 13):
        assert run_bounded(program(idx), idx, 200) == run_bounded(program(idx), idx, 200)


def test_negative_arguments_rejected():
    with pytest.raises(InputError):
        run_bounded(THREE_STEP, -1, 5)
    with pytest.raises(InputError):
        Program.from_index(-3)
