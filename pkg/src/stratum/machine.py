"""Minimal oracle register machine and its total program enumeration.

Instruction set (registers are unbounded naturals, all start at 0)::

    INC r          r += 1
    JZDEC r t      if r == 0: jump to line t   else: r -= 1
    QRY r          r := 1 if oracle contains r else 0
    HALT

Input is placed in R1 and the result is read from R0, so the empty
program answers 0 on every input.  Running past the last
line (or jumping past it) halts.  Every executed instruction, including the
final HALT or fall-through, costs one step.

Programs and naturals are in bijection: an instruction maps to a natural
(``HALT`` -> 0, ``INC r`` -> 1+3r, ``QRY r`` -> 2+3r, ``JZDEC r t`` ->
3+3*pair(r, t)) and an instruction list ``[c] + rest`` maps to
``2**c * (2*index(rest) + 1)`` with the empty program at 0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Optional, Protocol

from .errors import InputError

INC, JZDEC, QRY, HALT = "INC", "JZDEC", "QRY", "HALT"


def pair(a: int, b: int) -> int:
    """Cantor pairing."""
    return (a + b) * (a + b + 1) // 2 + b


def unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


@dataclass(frozen=True)
class Instr:
    op: str
    reg: int = 0
    target: int = 0

    def __post_init__(self):
        if self.op not in (INC, JZDEC, QRY, HALT):
            raise InputError(f"unknown opcode {self.op!r}")
        if self.reg < 0 or self.target < 0:
            raise InputError("registers and jump targets are naturals")

    @property
    def number(self) -> int:
        if self.op == HALT:
            return 0
        if self.op == INC:
            return 1 + 3 * self.reg
        if self.op == QRY:
            return 2 + 3 * self.reg
        return 3 + 3 * pair(self.reg, self.target)

    @classmethod
    def from_number(cls, c: int) -> "Instr":
        if c < 0:
            raise InputError("instruction numbers are naturals")
        if c == 0:
            return cls(HALT)
        q, t = divmod(c - 1, 3)
        if t == 0:
            return cls(INC, q)
        if t == 1:
            return cls(QRY, q)
        reg, target = unpair(q)
        return cls(JZDEC, reg, target)

    def __str__(self):
        if self.op == HALT:
            return HALT
        if self.op == JZDEC:
            return f"JZDEC R{self.reg} {self.target}"
        return f"{self.op} R{self.reg}"


_LINE = re.compile(r"^(?:(?P<label>[A-Za-z_]\w*)\s*:)?\s*(?P<body>.*)$")


@dataclass(frozen=True)
class Program:
    code: tuple[Instr, ...] = ()

    @property
    def index(self) -> int:
        n = 0
        for instr in reversed(self.code):
            n = (2 * n + 1) << instr.number
        return n

    @classmethod
    def from_index(cls, n: int) -> "Program":
        if n < 0:
            raise InputError("program indices are naturals")
        code = []
        while n:
            c = (n & -n).bit_length() - 1
            code.append(Instr.from_number(c))
            n = ((n >> c) - 1) // 2
        return cls(tuple(code))

    def to_text(self) -> str:
        return "\n".join(str(i) for i in self.code) + ("\n" if self.code else "")

    @classmethod
    def from_text(cls, text: str) -> "Program":
        """Parse one instruction per line; ``#``/``;`` start comments, ``name:`` defines a label."""
        rows = []
        labels = {}
        for raw in text.splitlines():
            line = re.split(r"[#;]", raw, maxsplit=1)[0].strip()
            if not line:
                continue
            m = _LINE.match(line)
            if m.group("label"):
                labels[m.group("label")] = len(rows)
            body = m.group("body").strip()
            if body:
                rows.append(body.split())
        code = []
        for lineno, parts in enumerate(rows):
            op = parts[0].upper()
            args = parts[1:]
            try:
                if op == HALT and not args:
                    code.append(Instr(HALT))
                elif op in (INC, QRY) and len(args) == 1:
                    code.append(Instr(op, _register(args[0])))
                elif op == JZDEC and len(args) == 2:
                    target = labels[args[1]] if args[1] in labels else int(args[1])
                    code.append(Instr(JZDEC, _register(args[0]), target))
                else:
                    raise InputError(f"line {lineno}: cannot parse {' '.join(parts)!r}")
            except ValueError as exc:
                if isinstance(exc, InputError):
                    raise
                raise InputError(f"line {lineno}: bad operand in {' '.join(parts)!r}") from exc
        return cls(tuple(code))


def _register(token: str) -> int:
    token = token.upper()
    if token.startswith("R"):
        token = token[1:]
    value = int(token)
    if value < 0:
        raise InputError("register numbers are naturals")
    return value


class Oracle(Protocol):
    def member(self, k: int) -> bool: ...


class EmptyOracle:
    """The level-0 oracle: nothing is a member."""

    level = 0

    def member(self, k: int) -> bool:
        return False


EMPTY_ORACLE = EmptyOracle()


@dataclass(frozen=True)
class RunResult:
    halted: bool
    value: Optional[int]
    steps: int

    @property
    def timeout(self) -> bool:
        return not self.halted


def run_bounded(program: Program, input: int, steps: int, oracle: Optional[Oracle] = None) -> RunResult:
    """Execute at most ``steps`` instructions; deterministic in all arguments."""
    if input < 0 or steps < 0:
        raise InputError("input and step budget must be naturals")
    oracle = oracle or EMPTY_ORACLE
    code = program.code
    size = len(code)
    regs = {1: input}
    pc = 0
    used = 0
    while used < steps:
        used += 1
        if pc >= size:
            return RunResult(True, regs.get(0, 0), used)
        instr = code[pc]
        op = instr.op
        if op == INC:
            regs[instr.reg] = regs.get(instr.reg, 0) + 1
            pc += 1
        elif op == JZDEC:
            v = regs.get(instr.reg, 0)
            if v == 0:
                pc = instr.target
            else:
                regs[instr.reg] = v - 1
                pc += 1
        elif op == QRY:
            regs[instr.reg] = 1 if oracle.member(regs.get(instr.reg, 0)) else 0
            pc += 1
        else:
            return RunResult(True, regs.get(0, 0), used)
    return RunResult(False, None, used)


@lru_cache(maxsize=4096)
def program(index: int) -> Program:
    """Cached ``Program.from_index``."""
    return Program.from_index(index)


# ---------------------------------------------------------------------------
# a few hand-built programs used throughout the package

SUCCESSOR = Program.from_text(
    """
    copy: JZDEC R1 done
          INC R0
          JZDEC R2 copy
    done: INC R0
          HALT
    """
)
LOOP = Program((Instr(JZDEC, 2, 0),))
THREE_STEP = Program((Instr(INC, 0), Instr(INC, 0), Instr(HALT)))

EVENS = Program.from_text(
    """
    top:  JZDEC R1 even
          JZDEC R1 odd
          JZDEC R2 top      # R2 stays 0: unconditional jump
    even: INC R0
          HALT
    odd:  HALT
    """
)


def finite_set_decider(elements) -> Program:
    """A total program returning 1 on members of a finite set and 0 elsewhere."""
    members = sorted(set(int(e) for e in elements))
    if members and members[0] < 0:
        raise InputError("set elements are naturals")
    top = members[-1] if members else -1
    checks = top + 1
    # lines [0, checks) probe input == i; then drain R1; then the two exits
    drain = checks
    exit_no = drain + 3
    exit_yes = exit_no + 1
    code = [Instr(JZDEC, 1, exit_yes if i in members else exit_no) for i in range(checks)]
    code += [
        Instr(JZDEC, 1, exit_no),   # drain: R1 == 0 -> done
        Instr(JZDEC, 2, drain),     # loop back
        Instr(HALT),
        Instr(HALT),                # exit_no: R0 is still 0
        Instr(INC, 0),              # exit_yes
        Instr(HALT),
    ]
    return Program(tuple(code))


def enumerator_halting_on(elements) -> Program:
    """A program halting exactly on the given finite set and looping elsewhere."""
    code = list(finite_set_decider(elements).code)
    exit_no = len(code) - 3
    code[exit_no] = Instr(JZDEC, 2, exit_no)  # spin forever
    return Program(tuple(code))
