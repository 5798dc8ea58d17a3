"""Constructive reals, a bounded jump tower and toy definability chains, all with exact rationals."""
from __future__ import annotations

from .creal import (
    CReal,
    Ordering,
    add,
    agree_at,
    cmp_at,
    e_series,
    from_rational,
    mul,
    negate,
    perturb,
    pi_leibniz,
    pi_machin,
    quarter_series,
    scale,
    sin_taylor,
    sqrt2,
    sub,
    to_decimal,
)
from .errors import (
    DomainError,
    InputError,
    InsufficientEvidence,
    PrecisionLimitError,
    Refusal,
    StepBudgetExceeded,
    StratumError,
)
from .oracle_tower import OracleReal, StagedOracle, ackermann_real, jump_stage_set, specker, sum_real, witness_real

__version__ = "0.1.0"
