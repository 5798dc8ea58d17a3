"""Toy formal systems, admissible chains over them and their Cantor-space codes.

A :class:`ToySystem` defines reals syntactically.  Its definable set is the
least fixed point of

* its grants (``"pi"`` defines ``pi``; ``"phi:r_4_3"`` is an axiom named phi
  that defines ``r_4_3``; ``"psi:"`` is an opaque token defining nothing), and
* its closure rules: ``rational`` (every rational of height <= budget),
  ``field`` (one binary field operation over what is already definable, 0 and
  1 included) and ``oracle:k`` (the jump witnesses ``witness_real_1..k``),

truncated to identifiers of description size <= budget.  Atoms have size 1,
a rational p/q has size max(|p|, q) and ``a op b`` has size
``size(a) + size(b) + 2``.  Proof-theoretic strength is therefore carried by
grant tokens, not by real derivability.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .errors import InputError, InsufficientEvidence

CHAIN_FORMAT = "stratum-chain/1"
DEFAULT_BUDGET = 6
MAX_CODE_BITS = 1 << 20

RATIONAL = "rational"
FIELD = "field"

# Low positions in the system enumeration; any other token follows in shortlex order.
NAMED_TOKENS = (
    "phi:r_4_3",
    "psi:",
    "pi",
    "e",
    "sqrt2",
    "sin_sqrt2_over_6",
    "r_4_3",
    "ackermann",
    "one",
    "three_quarters",
    "sum_evens",
    "omega_trunc_12",
    "specker_limit",
    "omega_limit",
    "witness_real_1",
    "witness_real_2",
)
_NAMED_INDEX = {t: i for i, t in enumerate(NAMED_TOKENS)}

_OPS = ("plus", "times", "minus", "over")
_COMMUTATIVE = {"plus", "times"}


# ---------------------------------------------------------------------------
# identifiers

def id_key(ident: str) -> tuple[int, bytes]:
    """Witness ordering: description length first, then bytes."""
    raw = ident.encode("utf-8")
    return len(raw), raw


@lru_cache(maxsize=1 << 16)
def _as_rational(ident: str) -> Optional[Fraction]:
    try:
        q = Fraction(ident)
    except (ValueError, ZeroDivisionError):
        return None
    return q if str(q) == ident else None


def rational_size(q: Fraction) -> int:
    return max(abs(q.numerator), q.denominator)


def oracle_id(k: int) -> str:
    return f"witness_real_{k}"


def _rule_level(rule: str) -> Optional[int]:
    if rule.startswith("oracle:"):
        try:
            k = int(rule[7:])
        except ValueError:
            return None
        return k if k >= 1 and rule == f"oracle:{k}" else None
    return None


def _check_rule(rule: str) -> str:
    if rule in (RATIONAL, FIELD) or _rule_level(rule) is not None:
        return rule
    raise InputError(f"unknown closure rule {rule!r}; expected rational, field or oracle:k")


def grant_id(token: str) -> Optional[str]:
    """The identifier a grant token defines, or None for an opaque token."""
    if ":" in token:
        ident = token.split(":", 1)[1].strip()
        return ident or None
    return token or None


# ---------------------------------------------------------------------------
# system enumeration

def _shortlex_rank(raw: bytes) -> int:
    rank = 0
    for b in raw:
        rank = rank * 256 + b + 1
    return rank


def _shortlex_unrank(rank: int) -> bytes:
    out = bytearray()
    while rank:
        rank, r = divmod(rank - 1, 256)
        out.append(r)
    return bytes(reversed(out))


def token_index(token: str) -> int:
    if token in _NAMED_INDEX:
        return _NAMED_INDEX[token]
    return len(NAMED_TOKENS) + _shortlex_rank(token.encode("utf-8"))


def token_from_index(i: int) -> str:
    if i < len(NAMED_TOKENS):
        return NAMED_TOKENS[i]
    token = _shortlex_unrank(i - len(NAMED_TOKENS)).decode("utf-8")
    if token in _NAMED_INDEX:
        raise InputError(f"position {i} is reserved (token {token!r} has a named slot)")
    return token


def rule_index(rule: str) -> int:
    if rule == RATIONAL:
        return 0
    if rule == FIELD:
        return 1
    return 1 + _rule_level(_check_rule(rule))


def rule_from_index(i: int) -> str:
    return (RATIONAL, FIELD)[i] if i < 2 else f"oracle:{i - 1}"


@dataclass(frozen=True)
class ToySystem:
    grants: frozenset = field(default_factory=frozenset)
    rules: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "grants", frozenset(self.grants))
        object.__setattr__(self, "rules", frozenset(_check_rule(r) for r in self.rules))

    def code_bits(self) -> list[int]:
        return sorted([2 * token_index(g) for g in self.grants] + [2 * rule_index(r) + 1 for r in self.rules])

    @property
    def code_key(self) -> tuple:
        """Orders systems exactly as their codes, without building huge integers."""
        return tuple(reversed(self.code_bits()))

    @property
    def code(self) -> int:
        """Position in the fixed enumeration: grant i sets bit 2i, rule j sets bit 2j+1.

        A proper extension of a system always has a strictly larger code.
        Tokens outside the named list have shortlex positions, so their
        codes can be too large to write down; compare with ``code_key``.
        """
        bits = self.code_bits()
        if bits and bits[-1] > MAX_CODE_BITS:
            raise InputError(f"system code has {bits[-1] + 1} bits; only code_key comparisons are available")
        return sum(1 << b for b in bits)

    @classmethod
    def from_code(cls, code: int) -> "ToySystem":
        if code < 0:
            raise InputError("system codes are naturals")
        grants, rules = [], []
        bit = 0
        while code >> bit:
            if (code >> bit) & 1:
                if bit % 2 == 0:
                    grants.append(token_from_index(bit // 2))
                else:
                    rules.append(rule_from_index(bit // 2))
            bit += 1
        return cls(frozenset(grants), frozenset(rules))

    def extend(self, grants: Iterable[str] = (), rules: Iterable[str] = ()) -> "ToySystem":
        return ToySystem(self.grants | set(grants), self.rules | set(rules))

    def without(self, grants: Iterable[str] = (), rules: Iterable[str] = ()) -> "ToySystem":
        return ToySystem(self.grants - set(grants), self.rules - set(rules))

    def to_dict(self) -> dict:
        out = {"grants": sorted(self.grants), "rules": sorted(self.rules)}
        if self.code_bits() and self.code_bits()[-1] <= MAX_CODE_BITS:
            out["code"] = str(self.code)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ToySystem":
        system = cls(frozenset(data.get("grants", ())), frozenset(data.get("rules", ())))
        if "code" in data and str(data["code"]) != str(system.code):
            raise InputError(f"system code {data['code']} does not match its grants/rules ({system.code})")
        return system

    def to_json(self) -> str:
        return json.dumps({"version": CHAIN_FORMAT, "kind": "system", **self.to_dict()}, sort_keys=True)

    def __str__(self):
        parts = sorted(self.rules) + sorted(self.grants)
        return "{" + ", ".join(parts) + "}"


RCA0 = ToySystem(rules=frozenset({RATIONAL, FIELD}))


# ---------------------------------------------------------------------------
# definability

def _compose(a: str, op: str, b: str) -> str:
    def wrap(x):
        return f"({x})" if "_" in x and any(f"_{o}_" in x for o in _OPS) else x

    return f"{wrap(a)}_{op}_{wrap(b)}"


def _apply(op: str, a: str, b: str, qa: Optional[Fraction], qb: Optional[Fraction]):
    """Identifier of a op b, or None when the operation is trivial or undefined."""
    if qa is not None and qb is not None:
        if op == "plus":
            return str(qa + qb)
        if op == "times":
            return str(qa * qb)
        if op == "minus":
            return str(qa - qb)
        return None if qb == 0 else str(qa / qb)
    # identities, annihilators and x-x, x/x add nothing new
    if qb == 0 or (qa == 0 and op != "minus"):
        return None
    if a == b and op in ("minus", "over"):
        return None
    if op in ("times", "over") and qb == 1 or op == "times" and qa == 1:
        return None
    if op in _COMMUTATIVE:
        # rationals go last, otherwise witness order
        ka = (qa is not None, id_key(a))
        kb = (qb is not None, id_key(b))
        if kb < ka:
            a, b = b, a
    return _compose(a, op, b)


def size_of(ident: str, sizes: dict) -> int:
    q = _as_rational(ident)
    if q is not None:
        return rational_size(q)
    return sizes.get(ident, 1)


def _candidate_pairs(found, frontier, sizes, budget, all_rationals):
    """Ordered pairs with at least one new member that can yield an identifier within budget."""
    by_size: dict[int, list] = {}
    rationals = []
    for ident in sorted(found, key=id_key):
        by_size.setdefault(sizes[ident], []).append(ident)
        if _as_rational(ident) is not None:
            rationals.append(ident)
    for a in sorted(found, key=id_key):
        for sb, group in by_size.items():
            if sizes[a] + sb + 2 > budget:
                continue
            for b in group:
                if a in frontier or b in frontier:
                    yield a, b
    if not all_rationals:
        # rational operands fold, so their size does not grow
        for a in rationals:
            for b in rationals:
                if (a in frontier or b in frontier) and sizes[a] + sizes[b] + 2 > budget:
                    yield a, b


@lru_cache(maxsize=256)
def _rational_field_closure(seeds: frozenset, budget: int) -> frozenset:
    """Rationals reachable from ``seeds`` by field operations, all intermediate heights <= budget."""
    found = {Fraction(x) for x in seeds}
    frontier = set(found)
    while frontier:
        fresh = set()
        for a in list(found):
            for b in list(found):
                if a not in frontier and b not in frontier:
                    continue
                results = [a + b, a - b, a * b] + ([a / b] if b else [])
                for q in results:
                    if rational_size(q) <= budget and q not in found:
                        fresh.add(q)
        found |= fresh
        frontier = fresh
    return frozenset(str(q) for q in found)


@lru_cache(maxsize=4096)
def _definable(system: ToySystem, budget: int) -> frozenset:
    sizes: dict[str, int] = {}
    found: set[str] = set()

    def admit(ident, size):
        if size <= budget and ident not in found:
            found.add(ident)
            sizes[ident] = size
            return True
        return False

    for token in system.grants:
        ident = grant_id(token)
        if ident is not None:
            q = _as_rational(ident)
            admit(ident, rational_size(q) if q is not None else 1)
    if RATIONAL in system.rules:
        for q in _rationals_up_to(budget):
            admit(str(q), rational_size(q))
    for rule in system.rules:
        k = _rule_level(rule)
        if k is not None:
            for j in range(1, k + 1):
                admit(oracle_id(j), 1)
    if FIELD in system.rules:
        admit("0", 1)
        admit("1", 1)
        seeds = frozenset(x for x in found if _as_rational(x) is not None)
        for ident in _rational_field_closure(seeds, budget):
            admit(ident, rational_size(_as_rational(ident)))
        all_rationals = True  # rational-only pairs are settled by the cached closure
        frontier = set(found)
        while frontier:
            fresh = set()
            for a, b in _candidate_pairs(found, frontier, sizes, budget, all_rationals):
                qa, qb = _as_rational(a), _as_rational(b)
                for op in _OPS:
                    ident = _apply(op, a, b, qa, qb)
                    if ident is None:
                        continue
                    q = _as_rational(ident)
                    size = rational_size(q) if q is not None else sizes[a] + sizes[b] + 2
                    if admit(ident, size):
                        fresh.add(ident)
            frontier = fresh
    return frozenset(found)


@lru_cache(maxsize=64)
def _rationals_up_to(height: int) -> tuple:
    out = {Fraction(0)}
    for q in range(1, height + 1):
        for p in range(0, height + 1):
            f = Fraction(p, q)
            if rational_size(f) <= height:
                out.add(f)
                out.add(-f)
    return tuple(sorted(out))


def definable_set(system: ToySystem, budget: int = DEFAULT_BUDGET) -> frozenset:
    """Identifiers definable in ``system`` with description size <= budget."""
    if budget < 1:
        raise InputError("budget must be >= 1")
    return _definable(system, budget)


def verify_strict_growth(sys_a: ToySystem, sys_b: ToySystem, budget: int = DEFAULT_BUDGET) -> Optional[str]:
    """The least identifier definable in ``sys_b`` but not in ``sys_a``, if any."""
    diff = definable_set(sys_b, budget) - definable_set(sys_a, budget)
    return min(diff, key=id_key) if diff else None


# ---------------------------------------------------------------------------
# chains

class Chain:
    """Selector-indexed sequence of toy systems, finite prefix or generator."""

    def __init__(self, levels: Union[Sequence[ToySystem], Callable[[int], ToySystem]], name: str = ""):
        if callable(levels):
            self._levels = None
            self._generator = levels
        else:
            self._levels = tuple(levels)
            self._generator = None
            if not self._levels:
                raise InputError("a chain needs at least one level")
        self.name = name

    @classmethod
    def from_codes(cls, codes: Sequence[int], name: str = "") -> "Chain":
        return cls([ToySystem.from_code(c) for c in codes], name)

    @property
    def length(self) -> Optional[int]:
        return None if self._levels is None else len(self._levels)

    def system(self, n: int) -> ToySystem:
        if n < 0:
            raise InputError("levels are naturals")
        if self._levels is not None:
            if n >= len(self._levels):
                raise InputError(f"chain {self.name or ''} has only {len(self._levels)} levels")
            return self._levels[n]
        return self._generator(n)

    def selector(self, n: int) -> int:
        return self.system(n).code

    def to_dict(self, levels: Optional[int] = None) -> dict:
        count = self.length if levels is None else levels
        if count is None:
            raise InputError("serialising a generator chain needs an explicit level count")
        return {
            "version": CHAIN_FORMAT,
            "kind": "chain",
            "name": self.name,
            "levels": [self.system(i).to_dict() for i in range(count)],
        }

    def to_json(self, levels: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(levels), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Chain":
        data = json.loads(text)
        if data.get("version") != CHAIN_FORMAT:
            raise InputError(f"expected version {CHAIN_FORMAT!r}, got {data.get('version')!r}")
        if data.get("kind") == "system":
            return cls([ToySystem.from_dict(data)])
        if data.get("kind") != "chain":
            raise InputError(f"unknown document kind {data.get('kind')!r}")
        return cls([ToySystem.from_dict(d) for d in data["levels"]], data.get("name", ""))

    def __repr__(self):
        return f"Chain({self.name or '?'}, levels={self.length})"


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    levels_checked: int
    witnesses: tuple
    failed_step: Optional[int] = None
    reason: str = ""


def is_admissible_prefix(chain: Chain, n: int, budget: int = DEFAULT_BUDGET) -> AdmissibilityReport:
    """Check steps 0->1, ..., (n-1)->n for increasing codes and strict growth."""
    witnesses = []
    for k in range(n):
        lo, hi = chain.system(k), chain.system(k + 1)
        if hi.code_key <= lo.code_key:
            return AdmissibilityReport(False, n, tuple(witnesses), k, "selector is not strictly increasing")
        lost = definable_set(lo, budget) - definable_set(hi, budget)
        if lost:
            return AdmissibilityReport(
                False, n, tuple(witnesses), k, f"not an inclusion: {min(lost, key=id_key)} is lost"
            )
        w = verify_strict_growth(lo, hi, budget)
        if w is None:
            return AdmissibilityReport(False, n, tuple(witnesses), k, "no new definable real")
        witnesses.append(w)
    return AdmissibilityReport(True, n, tuple(witnesses))


def level_set(chain: Chain, n: int, budget: int = DEFAULT_BUDGET) -> frozenset:
    return definable_set(chain.system(n), budget)


def cumulative_set(chain: Chain, n: int, budget: int = DEFAULT_BUDGET) -> frozenset:
    out = frozenset()
    for k in range(n + 1):
        out |= level_set(chain, k, budget)
    return out


def global_level(family: Iterable[Chain], n: int, budget: int = DEFAULT_BUDGET) -> frozenset:
    return frozenset().union(*(level_set(c, n, budget) for c in family))


def global_cumulative(family: Iterable[Chain], n: int, budget: int = DEFAULT_BUDGET) -> frozenset:
    return frozenset().union(*(cumulative_set(c, n, budget) for c in family))


# ---------------------------------------------------------------------------
# builders

def build_chain_condition_A(levels: int) -> Chain:
    """Level 0 is the base system; level k adds the level-k oracle closure."""
    if not 0 <= levels <= 3:
        raise InputError("condition A chains are limited to 3 oracle levels")
    systems = [RCA0] + [RCA0.extend(rules=[f"oracle:{k}"]) for k in range(1, levels + 1)]
    return Chain(systems, f"condition-A({levels})")


def build_chain_condition_C(stream: Union[Sequence[str], Callable[[int], str]]) -> Chain:
    """Level 0 is the base system; level k adds the first k grants of the stream."""
    if callable(stream):
        def level(n):
            return RCA0.extend(grants=[stream(i) for i in range(n)])

        return Chain(level, "condition-C(generator)")
    stream = list(stream)
    systems = [RCA0.extend(grants=stream[:k]) for k in range(len(stream) + 1)]
    return Chain(systems, "condition-C(" + ",".join(stream) + ")")


@dataclass(frozen=True)
class NonCollapseReport:
    real: str
    n: int
    c1: Chain
    c2: Chain
    r_in_c1_level0: bool
    r_not_in_c2_level_n: bool
    same_level_n_system: bool
    r_in_global_cumulative: bool
    r_not_in_global_level: bool
    c1_admissibility: AdmissibilityReport
    c2_admissibility: AdmissibilityReport

    @property
    def holds(self) -> bool:
        return (
            self.r_in_c1_level0
            and self.r_not_in_c2_level_n
            and self.same_level_n_system
            and self.r_in_global_cumulative
            and self.r_not_in_global_level
        )


PHI = "phi:r_4_3"
PSI = "psi:"


def noncollapse_chains(with_phi: bool = True) -> tuple[Chain, Chain]:
    """C1 = (RCA0 + phi, F) and C2 = (RCA0, F) with F = RCA0 + psi.

    psi (every Sigma^0_1 formula is decidable) is modelled as access to the
    first jump, so F gains witness_real_1 but not r_4_3.
    """
    top = RCA0.extend(grants=[PSI], rules=["oracle:1"])
    base1 = RCA0.extend(grants=[PHI]) if with_phi else RCA0
    return Chain([base1, top], "C1"), Chain([RCA0, top], "C2")


def counterexample_noncollapse(budget: int = DEFAULT_BUDGET, with_phi: bool = True) -> NonCollapseReport:
    c1, c2 = noncollapse_chains(with_phi)
    r, n = "r_4_3", 1
    family = (c1, c2)
    return NonCollapseReport(
        real=r,
        n=n,
        c1=c1,
        c2=c2,
        r_in_c1_level0=r in level_set(c1, 0, budget),
        r_not_in_c2_level_n=r not in level_set(c2, n, budget),
        same_level_n_system=c1.system(n) == c2.system(n),
        r_in_global_cumulative=r in global_cumulative(family, n, budget),
        r_not_in_global_level=r not in global_level(family, n, budget),
        c1_admissibility=is_admissible_prefix(c1, n, budget),
        c2_admissibility=is_admissible_prefix(c2, n, budget),
    )


# ---------------------------------------------------------------------------
# Cantor-space codes

class ChainCode:
    """A 0/1 sequence known on a finite prefix, optionally extended lazily."""

    def __init__(self, bits: str = "", more: Optional[Iterator[int]] = None):
        if set(bits) - {"0", "1"}:
            raise InputError("bit strings may only contain 0 and 1")
        self._bits = [int(b) for b in bits]
        self._more = more

    @property
    def known_length(self) -> int:
        return len(self._bits)

    @property
    def ones_seen(self) -> int:
        return sum(self._bits)

    @property
    def finite(self) -> bool:
        return self._more is None

    def _extend_to(self, n: int) -> bool:
        while len(self._bits) <= n and self._more is not None:
            try:
                self._bits.append(next(self._more))
            except StopIteration:
                self._more = None
        return n < len(self._bits)

    def bit(self, n: int) -> Optional[int]:
        """b(n), or None when position n lies beyond the available evidence."""
        return self._bits[n] if self._extend_to(n) else None

    def prefix(self, length: Optional[int] = None) -> str:
        if length is not None:
            self._extend_to(length - 1)
            return "".join(map(str, self._bits[:length]))
        return "".join(map(str, self._bits))


def _strictly_increasing(values: Iterable[int]) -> Iterator[int]:
    previous = None
    for i, v in enumerate(values):
        if not isinstance(v, int) or v < 0:
            raise InputError(f"enumerator produced a non-natural {v!r} at position {i}")
        if previous is not None and v <= previous:
            raise InputError(f"enumerator is not strictly increasing at position {i}: {previous} then {v}")
        previous = v
        yield v


def encode_set_to_bits(enumerator: Union[Iterable[int], Callable[[int], int]]) -> ChainCode:
    """Characteristic sequence of the set an increasing enumerator produces.

    A list or tuple is read as a finite prefix (bits known up to its last
    element); an iterator or a callable i -> a_i is consumed lazily.
    """
    if callable(enumerator):
        source = _strictly_increasing(enumerator(i) for i in itertools.count())
    elif isinstance(enumerator, (list, tuple, range)):
        values = list(_strictly_increasing(enumerator))
        bits = ["0"] * (values[-1] + 1 if values else 0)
        for v in values:
            bits[v] = "1"
        return ChainCode("".join(bits))
    else:
        source = _strictly_increasing(enumerator)

    def stream():
        position = 0
        for v in source:
            while position < v:
                yield 0
                position += 1
            yield 1
            position += 1

    return ChainCode("", stream())


DEFAULT_SCAN_LIMIT = 1 << 16


def decode_bits_to_set(code: ChainCode, count: Optional[int] = None, limit: Optional[int] = None) -> tuple:
    """Positions n with b(n) = 1 and a certified later 1, skipping zeros.

    Without ``count`` all certified elements in the evidence (the known prefix,
    or ``limit`` bits of a lazy code) are returned.  With ``count`` exactly that
    many are returned.  Too little evidence raises :class:`InsufficientEvidence`.
    """
    if limit is None:
        limit = code.known_length if (count is None and code.finite) else DEFAULT_SCAN_LIMIT
    elements = []
    pending = None
    n = 0
    while n < limit:
        b = code.bit(n)
        if b is None:
            break
        if b == 1:
            if pending is not None:
                elements.append(pending)
                if count is not None and len(elements) == count:
                    return tuple(elements)
            pending = n
        n += 1
    if count is not None and len(elements) < count:
        raise InsufficientEvidence(
            f"only {len(elements)} of {count} elements are certified within {n} bits", partial=elements
        )
    if not elements:
        raise InsufficientEvidence(f"no element is certified by {n} bits (need two 1s)")
    return tuple(elements)


def encode_chain(chain: Chain, n: int) -> ChainCode:
    """Cantor code of the selector values f(0) < ... < f(n)."""
    return encode_set_to_bits([chain.selector(k) for k in range(n + 1)])


# ---------------------------------------------------------------------------
# random admissible chains (seeded, for property checks and the CLI demo)

GRANT_POOL = ("pi", "e", "sqrt2", "ackermann", "sin_sqrt2_over_6", "r_4_3", "phi:r_4_3", "psi:", "omega_limit")
_BASE_RULES = ((), (RATIONAL,), (FIELD,), (RATIONAL, FIELD))


def _oracle_top(system: ToySystem) -> int:
    return max((_rule_level(r) or 0 for r in system.rules), default=0)


def random_admissible_chain(rng, levels: int, budget: int = DEFAULT_BUDGET) -> Chain:
    """A chain of ``levels`` systems, each step adding one grant or rule that defines something new."""
    if levels < 1:
        raise InputError("a chain needs at least one level")
    base_grants = rng.sample(GRANT_POOL, rng.randint(0, 2))
    system = ToySystem(frozenset(base_grants), frozenset(rng.choice(_BASE_RULES)))
    systems = [system]
    while len(systems) < levels:
        options = [("grant", g) for g in GRANT_POOL if g not in system.grants]
        options += [("rule", r) for r in (RATIONAL, FIELD) if r not in system.rules]
        if _oracle_top(system) < 3:
            options.append(("rule", f"oracle:{_oracle_top(system) + 1}"))
        rng.shuffle(options)
        for kind, item in options:
            nxt = system.extend(grants=[item]) if kind == "grant" else system.extend(rules=[item])
            if verify_strict_growth(system, nxt, budget) is not None:
                break
        else:
            raise InputError("random chain generator ran out of growth options")
        systems.append(nxt)
        system = nxt
    return Chain(systems, "random")
