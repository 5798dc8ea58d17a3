"""Constructive reals: rational Cauchy sequences paired with explicit moduli.

A :class:`CReal` carries three views of the same number:

* ``sequence(j)``  -- the raw rational sequence q_j;
* ``modulus(n)``   -- an index N such that |q_j - q_k| <= 2**-n for j, k >= N;
* ``approximant(n)`` -- a rational within 2**-n of the represented real.

Everything is exact ``fractions.Fraction`` arithmetic; nothing here touches
floating point.
"""
from __future__ import annotations

import enum
import threading
from fractions import Fraction
from math import factorial
from typing import Callable, Optional, Union

from .errors import DomainError, InputError, PrecisionLimitError

RationalLike = Union[Fraction, int, str]

# Leibniz needs 2**(n+2) terms for precision n.
LEIBNIZ_MAX_PRECISION = 20


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, strings like ``"4/3"`` and Fractions; floats are refused."""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction, int or 'p/q' string")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {value!r}") from exc


def ceil_log2(x: Fraction) -> int:
    """Smallest integer t >= 0 with 2**t >= x."""
    if x <= 1:
        return 0
    num, den = x.numerator, x.denominator
    t = max(0, num.bit_length() - den.bit_length() - 1)
    while (den << t) < num:
        t += 1
    return t


def dyadic(n: int) -> Fraction:
    return Fraction(1, 1 << n) if n >= 0 else Fraction(1 << -n)


class Ordering(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    INDISTINGUISHABLE = "indistinguishable"


class CReal:
    """An immutable constructive real.

    ``approximant`` is memoised per instance; the cache only ever stores the
    value the pure computation would return, so concurrent readers cannot
    observe a difference.
    """

    __slots__ = ("_sequence", "_modulus", "_approximant", "level_tag", "provenance", "_cache")

    def __init__(
        self,
        sequence: Callable[[int], Fraction],
        modulus: Callable[[int], int],
        approximant: Optional[Callable[[int], Fraction]] = None,
        *,
        level_tag: int = 1,
        provenance: str = "",
    ):
        self._sequence = sequence
        self._modulus = modulus
        self._approximant = approximant
        self.level_tag = level_tag
        self.provenance = provenance
        self._cache: dict[int, Fraction] = {}

    def sequence(self, j: int) -> Fraction:
        if j < 0:
            raise InputError("sequence index must be >= 0")
        return self._sequence(j)

    def modulus(self, n: int) -> int:
        if n < 0:
            raise InputError("precision index must be >= 0")
        return self._modulus(n)

    def approximant(self, n: int) -> Fraction:
        if n < 0:
            raise InputError("precision index must be >= 0")
        try:
            return self._cache[n]
        except KeyError:
            pass
        if self._approximant is not None:
            value = self._approximant(n)
        else:
            value = self._sequence(self._modulus(n))
        self._cache[n] = value
        return value

    def __repr__(self):
        return f"CReal({self.provenance or '?'}, level_tag={self.level_tag})"


def _normalized(fn: Callable[[int], Fraction], *, level_tag: int, provenance: str) -> CReal:
    # fn(j) is within 2**-j of the value, so j, k >= n+1 differ by at most 2**-n.
    return CReal(fn, lambda n: n + 1, fn, level_tag=level_tag, provenance=provenance)


# ---------------------------------------------------------------------------
# combinators

def from_rational(q: RationalLike) -> CReal:
    q = as_rational(q)
    return CReal(lambda j: q, lambda n: 0, lambda n: q, level_tag=0, provenance=f"rational {q}")


def add(r: CReal, s: CReal) -> CReal:
    return CReal(
        lambda j: r.sequence(j) + s.sequence(j),
        lambda n: max(r.modulus(n + 1), s.modulus(n + 1)),
        lambda n: r.approximant(n + 1) + s.approximant(n + 1),
        level_tag=max(r.level_tag, s.level_tag),
        provenance=f"add({r.provenance},{s.provenance})",
    )


def negate(r: CReal) -> CReal:
    return CReal(
        lambda j: -r.sequence(j),
        r.modulus,
        lambda n: -r.approximant(n),
        level_tag=r.level_tag,
        provenance=f"neg({r.provenance})",
    )


def sub(r: CReal, s: CReal) -> CReal:
    return add(r, negate(s))


def mul(r: CReal, s: CReal) -> CReal:
    """Product with precisions split according to |approximant(0)| + 1 bounds."""

    def bounds():
        b_r = abs(r.approximant(0)) + 1
        b_s = abs(s.approximant(0)) + 1
        return b_r, b_s

    def shifts(n):
        b_r, b_s = bounds()
        return n + 1 + ceil_log2(b_s + 1), n + 1 + ceil_log2(b_r + 1)

    def approximant(n):
        n_r, n_s = shifts(n)
        return r.approximant(n_r) * s.approximant(n_s)

    return _normalized(
        approximant,
        level_tag=max(r.level_tag, s.level_tag),
        provenance=f"mul({r.provenance},{s.provenance})",
    )


def scale(q: RationalLike, r: CReal) -> CReal:
    q = as_rational(q)
    out = mul(from_rational(q), r)
    out.provenance = f"scale({q},{r.provenance})"
    return out


# ---------------------------------------------------------------------------
# named constants

_HERON = [Fraction(3, 2)]
_HERON_LOCK = threading.Lock()


def heron_step(k: int) -> Fraction:
    """The k-th Heron iterate for sqrt 2, x0 = 3/2 (shared table)."""
    with _HERON_LOCK:
        while len(_HERON) <= k:
            x = _HERON[-1]
            _HERON.append((x + 2 / x) / 2)
        return _HERON[k]


def heron_steps_needed(n: int) -> int:
    """Least k with error bound <= 2**-n: x0 is within 1/2, x_k within 2**-(2**k) for k >= 1."""
    return 0 if n <= 1 else (n - 1).bit_length()


def sqrt2() -> CReal:
    """Heron iteration x0 = 3/2, x_{k+1} = (x_k + 2/x_k)/2.

    Iterates double in size at every step, so the sequence visits them on a
    logarithmic clock: q_j = x_{bitlen(j)}.  modulus(n) is the first index
    whose step count reaches ``heron_steps_needed(n)``.
    """

    def sequence(j):
        return heron_step(j.bit_length())

    def modulus(n):
        k = heron_steps_needed(n)
        return 0 if k == 0 else 1 << (k - 1)

    return CReal(sequence, modulus, level_tag=1, provenance="heron")


class _LeibnizTable:
    """Fixed-point partial sums of 4 * sum (-1)^k / (2k+1), shared by all instances.

    Each term is floored at scale 2**-SCALE_BITS, so a partial sum of N terms is
    off by less than N * 2**-SCALE_BITS <= 1/(16 N**2) for every N <= MAX_TERMS.
    """

    CHUNK = 4096
    MAX_TERMS = (1 << (LEIBNIZ_MAX_PRECISION + 2)) + 64
    SCALE_BITS = 3 * (LEIBNIZ_MAX_PRECISION + 3) + 4

    def __init__(self):
        self._numerator = 4 << self.SCALE_BITS
        self._checkpoints = [0]
        self._lock = threading.Lock()

    def _chunk_sum(self, start, stop):
        s = self._numerator
        total = 0
        for k in range(start, stop):
            term = s // (2 * k + 1)
            total += -term if k & 1 else term
        return total

    def _chunk_sum_fast(self, start):
        s = self._numerator
        stop = start + self.CHUNK
        # start is a multiple of CHUNK, hence even: d = 2k+1 runs 1 mod 4 for even k
        pos = sum(s // d for d in range(2 * start + 1, 2 * stop, 4))
        neg = sum(s // d for d in range(2 * start + 3, 2 * stop, 4))
        return pos - neg

    def partial(self, terms: int) -> Fraction:
        if terms > self.MAX_TERMS:
            raise PrecisionLimitError(
                f"Leibniz series is capped at {self.MAX_TERMS} terms "
                f"(precision index {LEIBNIZ_MAX_PRECISION})"
            )
        block, rest = divmod(terms, self.CHUNK)
        with self._lock:
            while len(self._checkpoints) <= block:
                start = (len(self._checkpoints) - 1) * self.CHUNK
                self._checkpoints.append(self._checkpoints[-1] + self._chunk_sum_fast(start))
            base = self._checkpoints[block]
        start = block * self.CHUNK
        return Fraction(base + self._chunk_sum(start, start + rest), 1 << self.SCALE_BITS)


_LEIBNIZ = _LeibnizTable()


def pi_leibniz() -> CReal:
    """pi from the Leibniz series; |pi - S_N| <= 4/(2N+1), modulus(n) = 2**(n+2)."""

    def modulus(n):
        if n > LEIBNIZ_MAX_PRECISION:
            raise PrecisionLimitError(
                f"pi_leibniz supports precision indices <= {LEIBNIZ_MAX_PRECISION}, got {n}"
            )
        return 1 << (n + 2)

    return CReal(_LEIBNIZ.partial, modulus, level_tag=1, provenance="leibniz-series+alt-tail-modulus")


def _arctan_inv_partials(m: int):
    partials = [Fraction(0)]
    lock = threading.Lock()

    def partial(terms):
        with lock:
            while len(partials) <= terms:
                k = len(partials) - 1
                term = Fraction(1, (2 * k + 1) * m ** (2 * k + 1))
                partials.append(partials[-1] + (-term if k & 1 else term))
            return partials[terms]

    return partial


def pi_machin() -> CReal:
    """pi = 16 arctan(1/5) - 4 arctan(1/239) with alternating-series tail bounds."""
    at5 = _arctan_inv_partials(5)
    at239 = _arctan_inv_partials(239)

    def tail(terms):
        odd = 2 * terms + 1
        return Fraction(16, odd * 5 ** odd) + Fraction(4, odd * 239 ** odd)

    def modulus(n):
        target = dyadic(n + 1)
        terms = 0
        while tail(terms) > target:
            terms += 1
        return terms

    return CReal(lambda j: 16 * at5(j) - 4 * at239(j), modulus, level_tag=1, provenance="machin")


def e_series() -> CReal:
    """e = sum 1/k!; the tail after the k = N term is below 2/(N+1)!."""
    partials = [Fraction(1)]
    lock = threading.Lock()

    def sequence(j):
        with lock:
            while len(partials) <= j:
                k = len(partials)
                partials.append(partials[-1] + Fraction(1, factorial(k)))
            return partials[j]

    def modulus(n):
        bound = 1 << (n + 1)  # 2/(N+1)! <= 2**-n  <=>  (N+1)! >= 2**(n+1)
        N, fact = 0, 1
        while fact < bound:
            N += 1
            fact *= N + 1
        return N

    return CReal(sequence, modulus, level_tag=1, provenance="e-series")


def quarter_series() -> CReal:
    """sum_{k>=0} 2**(-2k) = 4/3 as a series; the tail after N terms is (4/3) 4**-N."""

    def sequence(N):
        return Fraction(4, 3) * (1 - Fraction(1, 4 ** N))

    return CReal(sequence, lambda n: (n + 2) // 2, level_tag=1, provenance="quarter-series")


def sin_taylor(x: CReal) -> CReal:
    """sin(x) for |x| <= 3/2 via the Taylor polynomial plus a Lagrange tail bound."""
    a1 = x.approximant(1)
    if abs(a1) > 1:
        raise DomainError(
            f"sin_taylor requires |x.approximant(1)| <= 1 (so |x| <= 3/2); got {a1}"
        )
    radius = Fraction(3, 2)

    def terms_for(n):
        # |x|^(2N+1)/(2N+1)! <= 2**-(n+1)
        target = dyadic(n + 1)
        N = 0
        while radius ** (2 * N + 1) / factorial(2 * N + 1) > target:
            N += 1
        return N

    def value(n):
        # Round x to the 2**-(n+4) grid: input error < 2**-(n+3), and the
        # polynomial is 4-Lipschitz on [-2, 2] (cosh 2 < 4).
        grid = 1 << (n + 4)
        xa = Fraction(round(x.approximant(n + 4) * grid), grid)
        total = Fraction(0)
        power = xa
        x2 = xa * xa
        for k in range(terms_for(n)):
            term = power / factorial(2 * k + 1)
            total += -term if k & 1 else term
            power *= x2
        return total

    return _normalized(value, level_tag=max(1, x.level_tag), provenance=f"taylor-sin({x.provenance})")


# ---------------------------------------------------------------------------
# observation

def digits_precision(k: int) -> int:
    # least n with 2**-n <= 10**-(k+1)
    return (10 ** (k + 1) - 1).bit_length()


def to_decimal(r: CReal, k: int) -> str:
    """Faithful truncation to k fractional digits: |r - value(d)| < 10**-k.

    When the approximant sits within its error of the next digit boundary the
    precision is raised a few times; if the boundary is still ambiguous the
    upper neighbour is emitted, which is faithful either way.
    """
    if k < 1:
        raise InputError("digit count must be >= 1")
    base_n = digits_precision(k)
    unit = 10 ** k
    for extra in (0, 8, 32, 96):
        n = base_n + extra
        a = r.approximant(n)
        negative = a < 0
        scaled = abs(a) * unit
        d = scaled.numerator // scaled.denominator
        if (d + 1) - scaled > dyadic(n) * unit:
            break
    else:
        d += 1
    whole, frac = divmod(d, unit)
    text = f"{whole}.{frac:0{k}d}"
    if negative and d:
        text = "-" + text
    return text


def cmp_at(r: CReal, s: CReal, n: int) -> Ordering:
    """Strict verdicts only when approximants at n+2 differ by more than 2**-n."""
    diff = r.approximant(n + 2) - s.approximant(n + 2)
    if abs(diff) <= dyadic(n):
        return Ordering.INDISTINGUISHABLE
    return Ordering.LESS if diff < 0 else Ordering.GREATER


def agree_at(r: CReal, s: CReal, n: int) -> bool:
    """True when the two precision-n approximants are consistent with one real."""
    return abs(r.approximant(n) - s.approximant(n)) <= dyadic(n - 1)


def perturb(r: CReal, eps: RationalLike) -> CReal:
    """A distinct real with the same level tag, exactly eps/4 above r."""
    eps = as_rational(eps)
    if eps <= 0:
        raise InputError(f"perturb needs eps > 0, got {eps}")
    delta = eps / 4
    out = add(r, from_rational(delta))
    out.level_tag = r.level_tag
    out.provenance = f"perturb({r.provenance},{delta})"
    return out
