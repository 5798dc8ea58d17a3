"""A toy prefix-free machine and the monotone lower approximations Omega_n.

A valid program string is ``'1' * L + '0' + payload`` with an L-bit payload.
The unary length header makes the domain prefix-free; the payload selects
the register-machine program with index ``2**L - 1 + int(payload, 2)``, so
every program index has exactly one self-delimiting string.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import InputError
from .machine import Program, program, run_bounded
from .oracle_tower import OracleReal

DEFAULT_MAX_LEN = 16


def encode_index(index: int) -> str:
    if index < 0:
        raise InputError("program indices are naturals")
    L = (index + 1).bit_length() - 1
    payload = index + 1 - (1 << L)
    return "1" * L + "0" + (format(payload, f"0{L}b") if L else "")


def decode_string(bits: str) -> Optional[int]:
    """Program index for a valid self-delimiting string, else None."""
    L = bits.find("0")
    if L < 0 or len(bits) != 2 * L + 1 or set(bits) - {"0", "1"}:
        return None
    payload = bits[L + 1:]
    return (1 << L) - 1 + (int(payload, 2) if payload else 0)


@dataclass(frozen=True)
class PrefixMachine:
    max_len: int = DEFAULT_MAX_LEN

    def __post_init__(self):
        if self.max_len < 1:
            raise InputError("max_len must be >= 1")

    def decode(self, bits: str) -> Optional[Program]:
        if len(bits) > self.max_len:
            return None
        index = decode_string(bits)
        return None if index is None else program(index)

    def valid_strings(self) -> Iterator[str]:
        """All valid program strings of length <= max_len, sorted by (length, bits)."""
        for L in range((self.max_len - 1) // 2 + 1):
            for payload in range(1 << L):
                yield "1" * L + "0" + (format(payload, f"0{L}b") if L else "")

    def all_strings(self) -> Iterator[str]:
        """Every bit string of length 1..max_len, valid or not."""
        for length in range(1, self.max_len + 1):
            for value in range(1 << length):
                yield format(value, f"0{length}b")

    def halting_time(self, bits: str, limit: int) -> Optional[int]:
        prog = self.decode(bits)
        if prog is None:
            raise InputError(f"not a valid program string: {bits!r}")
        result = run_bounded(prog, 0, limit)
        return result.steps if result.halted else None


@dataclass(frozen=True)
class OmegaApprox:
    n: int
    halted: tuple[str, ...]
    value: Fraction


def _weight(bits: str) -> Fraction:
    return Fraction(1, 1 << len(bits))


def enumerate_halting(m: PrefixMachine, n: int) -> tuple[str, ...]:
    """H_n: valid strings whose program halts within n steps on empty input, sorted."""
    if n < 0:
        raise InputError("step bound must be a natural")
    return tuple(b for b in m.valid_strings() if m.halting_time(b, n) is not None)


def omega_n(m: PrefixMachine, n: int) -> OmegaApprox:
    halted = enumerate_halting(m, n)
    return OmegaApprox(n, halted, sum((_weight(b) for b in halted), Fraction(0)))


def omega_trace(m: PrefixMachine, n_max: int) -> list[tuple[int, Fraction, int]]:
    """(n, Omega_n, |H_n|) for n = 0..n_max, sharing one simulation per program."""
    if n_max < 0:
        raise InputError("n_max must be a natural")
    times = []
    for b in m.valid_strings():
        t = m.halting_time(b, n_max)
        if t is not None:
            times.append((t, b))
    times.sort()
    rows = []
    value = Fraction(0)
    count = 0
    i = 0
    for n in range(n_max + 1):
        while i < len(times) and times[i][0] <= n:
            value += _weight(times[i][1])
            count += 1
            i += 1
        rows.append((n, value, count))
    return rows


def kraft_sum(m: PrefixMachine) -> Fraction:
    return sum((_weight(b) for b in m.valid_strings()), Fraction(0))


def trace_csv(rows) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "omega_num", "omega_den", "halted_count"])
    for n, value, count in rows:
        writer.writerow([n, value.numerator, value.denominator, count])
    return out.getvalue()


def _limit_stage(s: int) -> Fraction:
    max_len = 2 * (s + 1).bit_length() - 1
    return omega_n(PrefixMachine(max_len), s).value


def omega_limit() -> OracleReal:
    """Omega of the unbounded machine, by stages: stage s admits strings of length
    2*bitlen(s+1) - 1 and runs of s steps.  Monotone in s, no modulus."""
    return OracleReal(_limit_stage, 1, "omega-limit")
