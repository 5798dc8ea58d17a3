"""Reference values computed without the package, by different formulas.

Each oracle returns a closed rational interval [lo, hi] containing the true
value; ``truncated_digits`` turns an interval into k faithful digits when the
interval does not straddle a digit boundary.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial, isqrt


def truncated_digits(lo: Fraction, hi: Fraction, k: int) -> str:
    assert 0 <= lo <= hi
    scale = 10 ** k
    a = lo.numerator * scale // lo.denominator
    b = hi.numerator * scale // hi.denominator
    assert a == b, "interval straddles a digit boundary; widen the working precision"
    whole, frac = divmod(a, scale)
    return f"{whole}.{frac:0{k}d}"


def sqrt2_interval(k: int) -> tuple[Fraction, Fraction]:
    """Integer square root of 2 * 10**(2k): floor(sqrt2 * 10**k) and one more."""
    r = isqrt(2 * 10 ** (2 * k))
    return Fraction(r, 10 ** k), Fraction(r + 1, 10 ** k)


def e_interval(terms: int) -> tuple[Fraction, Fraction]:
    """sum_{k<terms} 1/k! with tail in (0, 2/terms!]."""
    s = sum(Fraction(1, factorial(k)) for k in range(terms))
    return s, s + Fraction(2, factorial(terms))


def _arctan_inv_interval(m: int, terms: int) -> tuple[Fraction, Fraction]:
    """arctan(1/m) by its alternating series; consecutive partial sums bracket it."""
    s = Fraction(0)
    for j in range(terms):
        s += Fraction((-1) ** j, (2 * j + 1) * m ** (2 * j + 1))
    nxt = s + Fraction((-1) ** terms, (2 * terms + 1) * m ** (2 * terms + 1))
    return min(s, nxt), max(s, nxt)


def pi_interval(terms: int) -> tuple[Fraction, Fraction]:
    """pi = 4 (arctan 1/2 + arctan 1/3), a different identity from the package's."""
    a_lo, a_hi = _arctan_inv_interval(2, terms)
    b_lo, b_hi = _arctan_inv_interval(3, terms)
    return 4 * (a_lo + b_lo), 4 * (a_hi + b_hi)


def sin_interval(x_lo: Fraction, x_hi: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    """sin over [x_lo, x_hi] for 0 <= x_lo <= x_hi <= 1 (sin is increasing there).

    Uses the Taylor polynomial at each end with the Lagrange remainder bound
    x**(2N+1)/(2N+1)! on both sides.
    """
    assert 0 <= x_lo <= x_hi <= 1

    def poly(x):
        return sum(Fraction((-1) ** j) * x ** (2 * j + 1) / factorial(2 * j + 1) for j in range(terms))

    tail = Fraction(1, factorial(2 * terms + 1))
    return poly(x_lo) - tail, poly(x_hi) + tail


def sin_sqrt2_over_6_interval(k: int) -> tuple[Fraction, Fraction]:
    lo, hi = sqrt2_interval(k + 10)
    return sin_interval(lo / 6, hi / 6, terms=k)


def sieve(limit: int) -> list[int]:
    flags = [True] * limit
    flags[:2] = [False, False][:limit]
    for i in range(2, isqrt(max(limit - 1, 0)) + 1):
        if flags[i]:
            flags[i * i:: i] = [False] * len(range(i * i, limit, i))
    return [i for i, f in enumerate(flags) if f]


def omega_bruteforce(max_len: int, steps: int, run) -> tuple[Fraction, int]:
    """Walk every bit string up to max_len, keep those with a unary header matching
    their length, and sum 2**-len over the halting ones.  ``run(index, steps)`` is
    the only package call (the interpreter itself)."""
    total = Fraction(0)
    count = 0
    for length in range(1, max_len + 1):
        for value in range(1 << length):
            bits = format(value, f"0{length}b")
            header = len(bits) - len(bits.lstrip("1"))
            if length != 2 * header + 1 or bits[header] != "0":
                continue
            payload = bits[header + 1:]
            index = (1 << header) - 1 + (int(payload, 2) if payload else 0)
            if run(index, steps):
                total += Fraction(1, 1 << length)
                count += 1
    return total, count
