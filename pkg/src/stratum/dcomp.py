"""Level ladder, catalog of named reals and the budgeted compression search.

Ladder levels::

    0   rational constants             "rational p/q"
    1   computable constructions       CReal descriptors such as "heron"
    k   relative to the (k-1)th jump   "jump-sum(k-1)" and friends

A descriptor sigma is its own canonical serialization; candidates at each
level are tried in (length, bytes) order, so the first hit is the minimal
witness at the least level that has one within the budget.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Iterator, Optional, Union

from . import creal
from .creal import CReal, dyadic
from .errors import DomainError, InputError, PrecisionLimitError, StratumError
from .machine import EVENS, program
from .omega import PrefixMachine, omega_limit, omega_n
from .oracle_tower import MAX_LEVEL, OracleReal, ackermann_real, specker, sum_real, witness_real

FORMAT = "stratum/1"
DEFAULT_BUDGET = 10 ** 5
TOP_LEVEL = MAX_LEVEL + 1

Real = Union[CReal, OracleReal]

# matching parameters
RATIONAL_PRECISION = 64
SCREEN_PRECISION = 8
MATCH_PRECISION = 20
CONFIRM_PRECISION = 48
ORACLE_STAGES = (64, 128, 256)
ORACLE_TOLERANCE = dyadic(48)


def sigma_key(sigma: str) -> tuple[int, bytes]:
    raw = sigma.encode("utf-8")
    return len(raw), raw


# ---------------------------------------------------------------------------
# descriptor replay

def _parse(text: str, i: int = 0):
    j = i
    while j < len(text) and text[j] not in "(),":
        j += 1
    name = text[i:j].strip()
    if not name:
        raise InputError(f"empty descriptor at offset {i} in {text!r}")
    if j < len(text) and text[j] == "(":
        args = []
        j += 1
        while True:
            node, j = _parse(text, j)
            args.append(node)
            if j >= len(text):
                raise InputError(f"unbalanced parentheses in {text!r}")
            if text[j] == ",":
                j += 1
            elif text[j] == ")":
                return (name, args), j + 1
            else:
                raise InputError(f"unexpected {text[j]!r} in {text!r}")
    return (name, None), j


_PRIMITIVES: dict[str, Callable[[], Real]] = {
    "heron": creal.sqrt2,
    "e-series": creal.e_series,
    "quarter-series": creal.quarter_series,
    "leibniz-series+alt-tail-modulus": creal.pi_leibniz,
    "machin": creal.pi_machin,
    "specker-limit": specker,
    "omega-limit": omega_limit,
}


def _leaf(node) -> str:
    name, args = node
    if args is not None:
        raise InputError(f"expected a plain argument, got {name}(...)")
    return name


def _creal_arg(node) -> CReal:
    value = _build(node)
    if not isinstance(value, CReal):
        raise InputError(f"{value.description} has no modulus and cannot be combined at this level")
    return value


def _build(node) -> Real:
    name, args = node
    if args is None:
        if name.startswith("rational "):
            try:
                return creal.from_rational(Fraction(name[9:]))
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad rational in {name!r}") from exc
        if name in _PRIMITIVES:
            return _PRIMITIVES[name]()
        raise InputError(f"unknown descriptor {name!r}")
    arity = {"scale": 2, "taylor-sin": 1, "add": 2, "mul": 2, "neg": 1, "perturb": 2,
             "ackermann-sum": 1, "jump-sum": 1, "sum-decidable": 1, "sum-enumerable": 1}
    if name not in arity:
        raise InputError(f"unknown descriptor {name!r}")
    if len(args) != arity[name]:
        raise InputError(f"{name} takes {arity[name]} argument(s)")
    try:
        if name == "scale":
            return creal.scale(Fraction(_leaf(args[0])), _creal_arg(args[1]))
        if name == "perturb":
            return creal.perturb(_creal_arg(args[0]), 4 * Fraction(_leaf(args[1])))
        if name in ("ackermann-sum", "jump-sum", "sum-decidable", "sum-enumerable"):
            k = int(_leaf(args[0]), 0)
            if name == "ackermann-sum":
                return ackermann_real(k)
            if name == "jump-sum":
                return witness_real(k)
            return sum_real(program(k), "decidable" if name == "sum-decidable" else "enumerable")
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad numeric argument to {name}") from exc
    if name == "taylor-sin":
        return creal.sin_taylor(_creal_arg(args[0]))
    if name == "neg":
        return creal.negate(_creal_arg(args[0]))
    combine = creal.add if name == "add" else creal.mul
    return combine(_creal_arg(args[0]), _creal_arg(args[1]))


def replay(sigma: str) -> Real:
    """Rebuild the real a descriptor names."""
    node, end = _parse(sigma.strip())
    if end != len(sigma.strip()):
        raise InputError(f"trailing text in descriptor {sigma!r}")
    return _build(node)


def describe(value: Real) -> str:
    return value.provenance if isinstance(value, CReal) else value.description


# ---------------------------------------------------------------------------
# the ladder

def _rational_strings(length: int) -> list[tuple[str, Fraction]]:
    """Canonical rational strings of exactly ``length`` characters, in byte order."""
    out = []

    def ints(width, signed):
        if width < 1:
            return
        if signed:
            lo = 1 if width == 1 else 10 ** (width - 1)
            for v in range(lo, 10 ** width):
                yield -v
        else:
            lo = 0 if width == 1 else 10 ** (width - 1)
            yield from range(lo, 10 ** width)

    out.extend((str(v), Fraction(v)) for v in ints(length, False))
    out.extend((str(v), Fraction(v)) for v in ints(length - 1, True))
    for sign in (0, 1):
        for pw in range(1, length - 1 - sign):
            qw = length - 1 - sign - pw
            if qw < 1:
                continue
            for p in ints(pw, False):
                if p == 0:
                    continue
                for q in ints(qw, False):
                    if q >= 2 and gcd(p, q) == 1:
                        value = Fraction(-p if sign else p, q)
                        out.append((str(value), value))
    out.sort(key=lambda t: t[0].encode())
    return out


_RATIONAL_LENGTHS: dict[int, list] = {}


def rational_candidates() -> Iterator[tuple[str, Fraction]]:
    length = 1
    while True:
        if length not in _RATIONAL_LENGTHS:
            _RATIONAL_LENGTHS[length] = _rational_strings(length)
        for text, value in _RATIONAL_LENGTHS[length]:
            yield "rational " + text, value
        length += 1


LEVEL1_PRIMITIVES = ("heron", "e-series", "quarter-series", "leibniz-series+alt-tail-modulus", "ackermann-sum(3)")
SMALL_RATIONALS = tuple(
    sorted(
        {Fraction(s * p, q) for p in range(1, 7) for q in range(1, 7) for s in (1, -1)} - {Fraction(1)},
        key=lambda q: (abs(q.numerator) + q.denominator, str(q)),
    )
)


@lru_cache(maxsize=1)
def level1_candidates() -> tuple[str, ...]:
    prims = LEVEL1_PRIMITIVES
    scaled = [f"scale({q},{p})" for q in SMALL_RATIONALS for p in prims]
    out = set(prims) | set(scaled)
    out |= {f"neg({p})" for p in prims}
    out |= {f"add({p},rational {q})" for q in SMALL_RATIONALS for p in prims}
    for i, a in enumerate(prims):
        for b in prims[i:]:
            out.add(f"add({a},{b})")
            out.add(f"mul({a},{b})")
    out |= {f"taylor-sin({t})" for t in list(prims) + scaled}
    return tuple(sorted(out, key=sigma_key))


def oracle_candidates(level: int) -> tuple[str, ...]:
    out = {f"jump-sum({level - 1})"}
    if level == 2:
        out |= {"specker-limit", "omega-limit"}
    return tuple(sorted(out, key=sigma_key))


@dataclass(frozen=True)
class LevelLadder:
    top: int = TOP_LEVEL

    NAMES = ("rational", "computable", "jump-1", "jump-2", "jump-3")

    def name(self, level: int) -> str:
        return self.NAMES[level]

    def candidates(self, level: int) -> Iterator[tuple[str, Optional[Fraction]]]:
        if level == 0:
            yield from rational_candidates()
        elif level == 1:
            for sigma in level1_candidates():
                yield sigma, None
        elif level <= self.top:
            for sigma in oracle_candidates(level):
                yield sigma, None
        else:
            raise InputError(f"the ladder stops at level {self.top}")


DEFAULT_LADDER = LevelLadder()


# ---------------------------------------------------------------------------
# catalog

@dataclass(frozen=True)
class CatalogEntry:
    id: str
    constructor: Callable[[], Real]
    declared_level: int
    sigma: str
    notes: str
    # why no construction exists below the declared level, when known
    lower_bound: str = ""


def _omega_trunc():
    return creal.from_rational(omega_n(PrefixMachine(12), 4096).value)


CATALOG: dict[str, CatalogEntry] = {
    e.id: e
    for e in (
        CatalogEntry("r_4_3", creal.quarter_series, 0, "rational 4/3", "sum of 2**-2k over k >= 0"),
        CatalogEntry("one", lambda: creal.from_rational(1), 0, "rational 1", "rational constant"),
        CatalogEntry("three_quarters", lambda: creal.from_rational(Fraction(3, 4)), 0, "rational 3/4",
                     "rational constant"),
        CatalogEntry("sum_evens", lambda: sum_real(EVENS), 0, "rational 2/3",
                     "sum over the even numbers of 2**-(k+1), built from a decider"),
        CatalogEntry("omega_trunc_12", _omega_trunc, 0, "rational 997/1024",
                     "Omega_4096 of the max_len=12 toy machine (a finite truncation)"),
        CatalogEntry("sqrt2", creal.sqrt2, 1, "heron", "Heron iteration",
                     "irrational: x*x = 2 has no rational root"),
        CatalogEntry("pi", creal.pi_machin, 1, "leibniz-series+alt-tail-modulus",
                     "digits via Machin; ladder witness via the Leibniz series", "irrational (Lambert)"),
        CatalogEntry("e", creal.e_series, 1, "e-series", "sum of 1/k!", "irrational (Fourier)"),
        CatalogEntry("sin_sqrt2_over_6", lambda: creal.sin_taylor(creal.scale(Fraction(1, 6), creal.sqrt2())), 1,
                     "taylor-sin(scale(1/6,heron))", "Taylor series composed with Heron and scaling",
                     "transcendental: sine of a nonzero algebraic number (Lindemann)"),
        CatalogEntry("ackermann", lambda: ackermann_real(3), 1, "ackermann-sum(3)", "sum of 2**-A(k,k)",
                     "irrational: the gaps between 1-bits grow without bound"),
        CatalogEntry("witness_real_1", lambda: witness_real(1), 2, "jump-sum(1)", "sum over the halting set"),
        CatalogEntry("witness_real_2", lambda: witness_real(2), 3, "jump-sum(2)",
                     "sum over the second jump surrogate"),
        CatalogEntry("specker_limit", specker, 2, "specker-limit", "limit of a computable monotone sequence"),
        CatalogEntry("omega_limit", omega_limit, 2, "omega-limit", "Omega of the unbounded toy machine"),
    )
}

# rows that have no chain at all; listed, never searched
EXCLUDED = (
    ("random_real", "non-constructive: no finite description"),
    ("hamel_basis", "choice-dependent: no chain exists"),
    ("hyperarithmetic_real", "out of scope: beyond the finite jump ladder"),
    ("fine_structure_constant", "out of scope: physical constant, not a definition"),
    ("feigenbaum_delta", "out of scope: no certified modulus available here"),
)


def catalog_entry(real_id: str) -> CatalogEntry:
    try:
        return CATALOG[real_id]
    except KeyError:
        known = ", ".join(sorted(CATALOG))
        raise InputError(f"unknown catalog id {real_id!r}; known ids: {known}") from None


@lru_cache(maxsize=None)
def catalog_value(real_id: str) -> Real:
    return catalog_entry(real_id).constructor()


def advisory_level(value: Real) -> int:
    """Ladder level implied by the constructor's own tag."""
    return value.level_tag if isinstance(value, CReal) else value.level + 1


# ---------------------------------------------------------------------------
# matching

class _Target:
    def __init__(self, value: Real):
        self.value = value
        self.is_creal = isinstance(value, CReal)
        if self.is_creal:
            self.fine = value.approximant(RATIONAL_PRECISION)
        else:
            self.stages = [value.stage_approximant(s) for s in ORACLE_STAGES]
        self.rough = float(self.fine if self.is_creal else self.stages[-1])

    def matches_rational(self, q: Fraction) -> bool:
        # cheap float screen first; any plausible match is settled exactly
        if abs(q.numerator / q.denominator - self.rough) > 1e-6:
            return False
        if self.is_creal:
            return abs(self.fine - q) <= dyadic(RATIONAL_PRECISION - 1)
        return abs(self.stages[-1] - q) <= ORACLE_TOLERANCE

    def matches(self, candidate: Real) -> bool:
        if isinstance(candidate, OracleReal):
            if self.is_creal:
                return False
            return all(candidate.stage_approximant(s) == v for s, v in zip(ORACLE_STAGES, self.stages))
        if not self.is_creal:
            return abs(candidate.approximant(CONFIRM_PRECISION) - self.stages[-1]) <= ORACLE_TOLERANCE
        if abs(candidate.approximant(SCREEN_PRECISION) - self.fine) > dyadic(SCREEN_PRECISION - 1):
            return False
        if abs(candidate.approximant(MATCH_PRECISION) - self.fine) > dyadic(MATCH_PRECISION - 1):
            return False
        try:
            return abs(candidate.approximant(CONFIRM_PRECISION) - self.fine) <= dyadic(CONFIRM_PRECISION - 1)
        except PrecisionLimitError:
            return True  # agreement at MATCH_PRECISION is all this candidate can certify


@lru_cache(maxsize=4096)
def _candidate(sigma: str) -> Optional[Real]:
    try:
        return replay(sigma)
    except DomainError:
        return None


def _candidate_matches(target: _Target, sigma: str) -> bool:
    value = _candidate(sigma)
    if value is None:
        return False
    try:
        return target.matches(value)
    except (DomainError, PrecisionLimitError):
        return False


# ---------------------------------------------------------------------------
# search

@dataclass(frozen=True)
class DCompResult:
    id: str
    level: int
    witness: str
    status: str
    search_budget_used: int
    certificate: str = ""
    level0_exhausted: bool = False
    levels_searched: tuple = ()

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "level": self.level,
            "sigma": self.witness,
            "status": self.status,
            "budget_used": self.search_budget_used,
            "certificate": self.certificate,
            "level0_exhausted": self.level0_exhausted,
        }


def _search_level(target: _Target, ladder: LevelLadder, level: int, budget: int, own: Optional[str]):
    """(sigma or None, candidates tried, whether the budget ran out first)."""
    used = 0
    exhausted = False
    for sigma, value in ladder.candidates(level):
        if used >= budget:
            exhausted = True
            break
        used += 1
        hit = target.matches_rational(value) if level == 0 else _candidate_matches(target, sigma)
        if hit:
            return sigma, used, False
    # the entry's own descriptor is always tried at its declared level
    if own is not None and _candidate_matches(target, own):
        return own, used, False
    return None, used, exhausted


def fractal_degree(real_id: str, ladder: LevelLadder = DEFAULT_LADDER, budget: int = DEFAULT_BUDGET) -> DCompResult:
    """Least ladder level with a witness found within ``budget`` candidates per level."""
    if budget < 1:
        raise InputError("budget must be >= 1")
    return _fractal_degree(real_id, ladder, budget)


@lru_cache(maxsize=1024)
def _fractal_degree(real_id: str, ladder: LevelLadder, budget: int) -> DCompResult:
    entry = catalog_entry(real_id)
    target = _Target(catalog_value(real_id))
    used_total = 0
    level0_exhausted = False
    searched = []
    for level in range(ladder.top + 1):
        own = entry.sigma if level == entry.declared_level else None
        sigma, used, exhausted = _search_level(target, ladder, level, budget, own)
        used_total += used
        searched.append(level)
        if level == 0 and sigma is None:
            level0_exhausted = exhausted
        if sigma is None:
            continue
        status, certificate = _status(entry, target, level, level0_exhausted, budget)
        return DCompResult(real_id, level, sigma, status, used_total, certificate, level0_exhausted, tuple(searched))
    raise StratumError(f"{real_id}: no witness on any ladder level")  # own sigma makes this unreachable


def _status(entry: CatalogEntry, target: _Target, level: int, level0_exhausted: bool, budget: int):
    if not target.is_creal:
        detail = f"level-0 search exhausted {budget} candidates" if level0_exhausted else "stage evidence only"
        return "upper_bound", f"oracle-level entry; {detail}; least level is not decidable"
    if level == 0:
        return "exact", "rational: level 0 is the bottom of the ladder"
    if level == 1 and entry.lower_bound:
        return "exact", entry.lower_bound
    return "upper_bound", "no lower-bound certificate"


def dcomp(real_id: str, budget: int = DEFAULT_BUDGET) -> DCompResult:
    """(level, sigma) for a catalog id; idempotent for a fixed budget."""
    return fractal_degree(real_id, DEFAULT_LADDER, budget)


def minimality_holds(result: DCompResult, ladder: LevelLadder = DEFAULT_LADDER, budget: int = DEFAULT_BUDGET) -> bool:
    """Re-search every level below the result's and confirm none has a witness."""
    target = _Target(catalog_value(result.id))
    for level in range(result.level):
        sigma, _, _ = _search_level(target, ladder, level, budget, None)
        if sigma is not None:
            return False
    return True


def replay_matches(result: DCompResult, precision: int = 20) -> bool:
    """The witness rebuilds a real matching the catalog constructor to 2**-precision."""
    rebuilt = replay(result.witness)
    original = catalog_value(result.id)
    if isinstance(rebuilt, CReal) and isinstance(original, CReal):
        return abs(rebuilt.approximant(precision) - original.approximant(precision)) <= dyadic(precision - 1)
    if isinstance(rebuilt, OracleReal) and isinstance(original, OracleReal):
        return all(rebuilt.stage_approximant(s) == original.stage_approximant(s) for s in ORACLE_STAGES)
    return False


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class DeltaVerdict:
    value: Optional[bool]
    certificate: DCompResult

    @property
    def unconfirmed(self) -> bool:
        return self.value is None

    def __str__(self):
        return "unconfirmed" if self.value is None else str(self.value).lower()


def delta_membership(real_id: str, n: int, budget: int = DEFAULT_BUDGET) -> DeltaVerdict:
    """Is the entry in Delta_n, i.e. is its resolved degree exactly n?

    Upper-bound results only rule out levels above the bound.
    """
    if n < 0:
        raise InputError("levels are naturals")
    result = dcomp(real_id, budget)
    if result.exact:
        return DeltaVerdict(result.level == n, result)
    if n > result.level:
        return DeltaVerdict(False, result)
    return DeltaVerdict(None, result)


@dataclass
class LayerReport:
    rows: list = field(default_factory=list)
    buckets: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)
    excluded: tuple = EXCLUDED
    budget: int = DEFAULT_BUDGET

    def to_dict(self) -> dict:
        return {
            "version": FORMAT,
            "kind": "layers",
            "budget": self.budget,
            "entries": [r.to_dict() for r in self.rows],
            "buckets": {str(k): v for k, v in sorted(self.buckets.items())},
            "flags": self.flags,
            "excluded": [{"id": i, "reason": why} for i, why in self.excluded],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        width = max(len(r.id) for r in self.rows) if self.rows else 10
        lines = [f"{'id':<{width}}  level  status       sigma"]
        for r in self.rows:
            lines.append(f"{r.id:<{width}}  {r.level:>5}  {r.status:<11}  {r.witness}")
        lines.append("")
        for level, ids in sorted(self.buckets.items()):
            lines.append(f"Delta_{level}: " + ", ".join(ids))
        for real_id, why in self.excluded:
            lines.append(f"{real_id}: excluded, {why}")
        for flag in self.flags:
            lines.append(f"FLAG {flag}")
        return "\n".join(lines) + "\n"


def layer_table(catalog: Optional[dict] = None, budget: int = DEFAULT_BUDGET) -> LayerReport:
    """Bucket catalog entries by resolved degree; upper bounds are marked with '?'."""
    ids = sorted(catalog if catalog is not None else CATALOG)
    report = LayerReport(budget=budget)
    for real_id in ids:
        result = dcomp(real_id, budget)
        report.rows.append(result)
        label = real_id if result.exact else real_id + "?"
        report.buckets.setdefault(result.level, []).append(label)
        advisory = advisory_level(catalog_value(real_id))
        if advisory < result.level:
            report.flags.append(f"{real_id}: level tag {advisory} undercuts resolved level {result.level}")
    return report
