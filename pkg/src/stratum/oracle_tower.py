"""Stage-bounded jump approximations and the reals built from them.

Level 1 is the halting set K = {k : program k halts on input k}.  At stage s
only indices below s and runs of at most s steps are considered, so the
stage sets grow monotonically towards K.  Level n >= 2 reruns the same
diagonal with the stage-s level-(n-1) set plugged in as the oracle; that is a
limit-style surrogate and may be temporarily wrong at finite stages.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .creal import CReal
from .errors import InputError, PrecisionLimitError, StepBudgetExceeded
from .machine import EMPTY_ORACLE, Program, program, run_bounded

DEFAULT_STEP_BUDGET = 10 ** 6
MAX_LEVEL = 3


@dataclass(frozen=True)
class StagedOracle:
    level: int
    stage: int

    def __post_init__(self):
        if self.level < 0 or self.stage < 0:
            raise InputError("oracle level and stage are naturals")

    def member(self, k: int) -> bool:
        if self.level == 0:
            return False
        return k in jump_stage_set(self.level, self.stage)


class _DiagonalHaltingTimes:
    """Halting time of program k on input k with the empty oracle, grown on demand."""

    def __init__(self):
        self._known: dict[int, tuple[int | None, int]] = {}
        self._lock = threading.Lock()

    def halts_within(self, k: int, steps: int) -> bool:
        with self._lock:
            entry = self._known.get(k)
        if entry is not None:
            halt_time, checked = entry
            if halt_time is not None:
                return halt_time <= steps
            if steps <= checked:
                return False
        budget = max(steps, 2 * (entry[1] if entry else 0), 64)
        result = run_bounded(program(k), k, budget, EMPTY_ORACLE)
        with self._lock:
            self._known[k] = (result.steps if result.halted else None, budget)
        return result.halted and result.steps <= steps


_LEVEL1 = _DiagonalHaltingTimes()


@lru_cache(maxsize=2048)
def _jump_stage_set(n: int, s: int) -> frozenset:
    if n == 1:
        return frozenset(k for k in range(s) if _LEVEL1.halts_within(k, s))
    oracle = StagedOracle(n - 1, s)
    return frozenset(k for k in range(s) if run_bounded(program(k), k, s, oracle).halted)


def jump_stage_set(n: int, s: int) -> frozenset:
    """{k < s : program k halts on input k within s steps, relative to level n-1 at stage s}."""
    if n < 1:
        raise InputError("level 0 is the empty oracle, not a jump; use n >= 1")
    if n > MAX_LEVEL:
        raise InputError(f"jump levels above {MAX_LEVEL} are not supported")
    if s < 0:
        raise InputError("stage must be a natural")
    return _jump_stage_set(n, s)


class OracleReal:
    """A real given only by stage approximations converging in the limit.

    There is no modulus: nothing bounds how far a later stage may move.
    """

    def __init__(self, stage_approximant: Callable[[int], Fraction], level: int, description: str):
        self._fn = stage_approximant
        self.level = level
        self.description = description
        self._cache: dict[int, Fraction] = {}

    def stage_approximant(self, s: int) -> Fraction:
        if s < 0:
            raise InputError("stage must be a natural")
        try:
            return self._cache[s]
        except KeyError:
            value = self._cache[s] = self._fn(s)
            return value

    def __repr__(self):
        return f"OracleReal({self.description}, level={self.level})"


def _dyadic_sum(indices) -> Fraction:
    total = 0
    indices = sorted(indices)
    if not indices:
        return Fraction(0)
    top = indices[-1] + 1
    for k in indices:
        total += 1 << (top - (k + 1))
    return Fraction(total, 1 << top)


def witness_real(n: int) -> OracleReal:
    """r_n = sum over the level-n jump set of 2**-(k+1), by stages."""
    if n < 1:
        raise InputError("witness reals start at level 1")
    if n > MAX_LEVEL:
        raise InputError(f"jump levels above {MAX_LEVEL} are not supported")
    return OracleReal(lambda s: _dyadic_sum(jump_stage_set(n, s)), n, f"jump-sum({n})")


def specker() -> OracleReal:
    """A computable, monotone, bounded rational sequence whose limit is the level-1 witness."""
    return OracleReal(
        lambda s: _dyadic_sum(k for k in jump_stage_set(1, s) if k < s), 1, "specker-limit"
    )


# ---------------------------------------------------------------------------
# summation reals

def _membership(prog: Program, step_budget: int):
    cache: dict[int, bool] = {}
    lock = threading.Lock()

    def member(k):
        with lock:
            if k in cache:
                return cache[k]
        result = run_bounded(prog, k, step_budget)
        if not result.halted:
            raise StepBudgetExceeded(
                f"membership query for k={k} did not halt within {step_budget} steps",
                index=k,
                steps=step_budget,
            )
        with lock:
            cache[k] = bool(result.value)
        return cache[k]

    return member


def sum_real(prog: Program, mode: str = "decidable", *, step_budget: int = DEFAULT_STEP_BUDGET):
    """r_X = sum_{k in X} 2**-(k+1).

    ``decidable``: ``prog`` returns nonzero on members; the result is a CReal with
    modulus(n) = n+1.  ``enumerable``: X is the set of inputs on which ``prog``
    halts; the result is an OracleReal whose stage s counts k < s halting in s steps.
    """
    if mode == "decidable":
        member = _membership(prog, step_budget)
        for k in range(4):  # spot-check totality up front
            member(k)

        def sequence(j):
            return _dyadic_sum(k for k in range(j + 1) if member(k))

        return CReal(sequence, lambda n: n + 1, level_tag=1, provenance=f"sum-decidable({prog.index:#x})")
    if mode == "enumerable":
        def stage(s):
            return _dyadic_sum(k for k in range(s) if run_bounded(prog, k, s).halted)

        return OracleReal(stage, 1, f"sum-enumerable({prog.index:#x})")
    raise InputError(f"mode must be 'decidable' or 'enumerable', got {mode!r}")


# ---------------------------------------------------------------------------
# Ackermann-type real

@lru_cache(maxsize=None)
def ackermann(m: int, n: int) -> int:
    """Ackermann-Peter function; only call with small arguments."""
    if m == 0:
        return n + 1
    if m == 1:
        return n + 2
    if m == 2:
        return 2 * n + 3
    if m == 3:
        return (1 << (n + 3)) - 3
    if n == 0:
        return ackermann(m - 1, 1)
    return ackermann(m - 1, ackermann(m, n - 1))


class _Huge:
    """Stand-in for A(4,4) - 1, which exceeds 2**65536; compares above every int we use."""

    def __ge__(self, other):
        return True

    def __repr__(self):
        return "A(4,4)-1"


ACKERMANN_MAX_CUTOFF = 3


def ackermann_real(cutoff: int) -> CReal:
    """sum_k 2**-A(k,k), exact through k = cutoff, tail bounded by 2**(1 - A(cutoff+1, cutoff+1))."""
    if not 0 <= cutoff <= ACKERMANN_MAX_CUTOFF:
        raise InputError(f"cutoff must be in [0, {ACKERMANN_MAX_CUTOFF}]; A(4,4) is astronomically large")
    exponents = [ackermann(k, k) for k in range(cutoff + 1)]
    # tails[j] = exponent e with sum_{k>j} 2**-A(k,k) <= 2**-e
    tails = [ackermann(j + 1, j + 1) - 1 for j in range(min(cutoff + 1, ACKERMANN_MAX_CUTOFF))]
    if cutoff == ACKERMANN_MAX_CUTOFF:
        tails.append(_Huge())

    def sequence(j):
        top = exponents[min(j, cutoff)]
        return Fraction(sum(1 << (top - e) for e in exponents[: min(j, cutoff) + 1]), 1 << top)

    def modulus(n):
        for j, bound in enumerate(tails):
            if bound >= n:
                return j
        raise PrecisionLimitError(
            f"ackermann_real({cutoff}) certifies at most precision {tails[-1]}; raise the cutoff"
        )

    return CReal(sequence, modulus, level_tag=1, provenance=f"ackermann-sum({cutoff})")

