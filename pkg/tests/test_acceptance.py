from __future__ import annotations

import random
import time
from fractions import Fraction

import mpmath

from stratum import creal
from stratum.chains import (
    ChainCode,
    counterexample_noncollapse,
    cumulative_set,
    decode_bits_to_set,
    encode_set_to_bits,
    global_cumulative,
    global_level,
    is_admissible_prefix,
    level_set,
    random_admissible_chain,
)
from stratum.cli import main
from stratum.creal import CReal, Ordering, cmp_at, dyadic
from stratum.dcomp import CATALOG, catalog_value, dcomp, replay_matches
from stratum.errors import InsufficientEvidence
from stratum.machine import finite_set_decider, program, run_bounded
from stratum.oracle_tower import specker, sum_real, witness_real
from stratum.omega import PrefixMachine, kraft_sum, omega_trace

from conftest import record
from oracles import (
    e_interval,
    omega_bruteforce,
    pi_interval,
    sin_sqrt2_over_6_interval,
    sqrt2_interval,
    truncated_digits,
)


def _cli_digits(capsys, real_id, count):
    start = time.perf_counter()
    code = main(["digits", real_id, str(count)])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    return code, out.splitlines()[0], elapsed


def test_criterion_1_digits(capsys):
    oracles = {
        "sqrt2": truncated_digits(*sqrt2_interval(40), 30),
        "e": truncated_digits(*e_interval(45), 30),
        "pi": truncated_digits(*pi_interval(70), 30),
    }
    outcomes = {}
    for real_id, expected in oracles.items():
        code, text, elapsed = _cli_digits(capsys, real_id, 30)
        outcomes[real_id] = (code == 0 and text == expected and elapsed < 1.0, elapsed)
    ok = all(good for good, _ in outcomes.values())
    slowest = max(t for _, t in outcomes.values())
    record(1, ok, f"sqrt2/e/pi 30 digits match oracles; slowest {slowest:.3f}s (limit 1s)")
    assert ok, outcomes


def test_criterion_2_four_thirds():
    start = time.perf_counter()
    r = creal.quarter_series()
    ok = all(abs(r.approximant(n) - Fraction(4, 3)) <= dyadic(n) for n in range(41))
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 0.1
    record(2, ok, f"sum of 2^-2k within 2^-n of 4/3 for n <= 40 in {elapsed:.4f}s (limit 0.1s)")
    assert ok


def test_criterion_3_sin_composition(capsys):
    expected = truncated_digits(*sin_sqrt2_over_6_interval(30), 20)
    with mpmath.workdps(60):
        second_opinion = mpmath.sin(mpmath.sqrt(2) / 6)
        assert abs(mpmath.mpf(expected) - second_opinion) < mpmath.mpf(10) ** -20
    code, text, _ = _cli_digits(capsys, "sin_sqrt2_over_6", 20)
    ok = code == 0 and text == expected
    record(3, ok, f"sin(sqrt2/6) = {text} against interval Taylor oracle {expected}")
    assert ok


def test_criterion_4_cauchy_probes():
    rng = random.Random(4)
    constructors = sorted(i for i in CATALOG if isinstance(catalog_value(i), CReal))
    extra = {
        "leibniz": creal.pi_leibniz,
        "pi_machin": creal.pi_machin,
        "sqrt2_times_e": lambda: creal.mul(creal.sqrt2(), creal.e_series()),
        "sqrt2_plus_quarter": lambda: creal.add(creal.sqrt2(), creal.quarter_series()),
    }
    values = {i: catalog_value(i) for i in constructors}
    values.update({name: make() for name, make in extra.items()})
    names = sorted(values)
    start = time.perf_counter()
    violations = []
    for _ in range(10_000):
        name = rng.choice(names)
        r = values[name]
        n = rng.randint(0, 10 if name == "leibniz" else 48)
        m = r.modulus(n)
        j, k = m + rng.randint(0, 64), m + rng.randint(0, 64)
        if abs(r.sequence(j) - r.sequence(k)) > dyadic(n):
            violations.append((name, n, j, k))
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < 30
    record(4, ok, f"10000 probes over {len(names)} constructors, {len(violations)} violations, {elapsed:.2f}s (limit 30s)")
    assert ok, violations[:5]


def test_criterion_5_cantor_roundtrip():
    rng = random.Random(5)
    failures = 0
    for _ in range(1000):
        length = rng.randint(2, 64)
        values = sorted(rng.sample(range(0, 400), length))
        decoded = decode_bits_to_set(encode_set_to_bits(iter(values)), count=length - 1)
        failures += decoded != tuple(values[:-1])
    zero_ok = 0
    for length in (0, 1, 7, 64, 1000):
        try:
            decode_bits_to_set(ChainCode("0" * length))
        except InsufficientEvidence as exc:
            zero_ok += exc.partial == ()
    ok = failures == 0 and zero_ok == 5
    record(5, ok, f"1000 roundtrips, {failures} failures; all-zero prefixes refused {zero_ok}/5")
    assert ok


def test_criterion_6_collapse_laws():
    rng = random.Random(6)
    chains = [random_admissible_chain(rng, rng.randint(1, 5), 6) for _ in range(100)]
    admissible = all(is_admissible_prefix(c, c.length - 1, 6).admissible for c in chains)
    per_chain = all(cumulative_set(c, n, 6) == level_set(c, n, 6) for c in chains for n in range(c.length))
    families = 0
    global_ok = True
    for _ in range(100):
        family = rng.sample(chains, rng.randint(1, 8))
        for n in range(min(c.length for c in family)):
            global_ok &= global_cumulative(family, n, 6) == global_level(family, n, 6)
        families += 1
    rep = counterexample_noncollapse(6)
    counter = (rep.holds and rep.r_in_global_cumulative and rep.r_not_in_global_level
               and not rep.c1_admissibility.admissible)
    ok = admissible and per_chain and global_ok and counter
    record(6, ok, f"100 chains collapse per level, {families} families collapse globally; "
                  f"counterexample holds and C1 flagged non-admissible")
    assert ok


def test_criterion_7_omega():
    start = time.perf_counter()
    m = PrefixMachine(12)
    rows = omega_trace(m, 4096)
    values = [v for _, v, _ in rows]
    counts = [c for _, _, c in rows]
    monotone = all(a <= b for a, b in zip(values, values[1:])) and all(a <= b for a, b in zip(counts, counts[1:]))
    below_one = all(v < 1 for v in values)
    golden = omega_bruteforce(12, 4096, lambda i, s: run_bounded(program(i), 0, s).halted)
    stable = (values[-1], counts[-1]) == golden
    kraft = kraft_sum(m)
    elapsed = time.perf_counter() - start
    ok = monotone and below_one and stable and kraft <= 1 and elapsed < 10
    record(7, ok, f"Omega_4096 = {values[-1]} ({counts[-1]} halted) equals exhaustive golden; "
                  f"Kraft {kraft}; {elapsed:.2f}s (limit 10s)")
    assert ok


def test_criterion_8_specker():
    sp, w = specker(), witness_real(1)
    values = [sp.stage_approximant(s) for s in range(513)]
    monotone = all(a <= b for a, b in zip(values, values[1:]))
    bounded = all(v <= 1 for v in values)
    close = all(abs(values[s] - w.stage_approximant(s)) <= s * dyadic(s) for s in range(513))
    ok = monotone and bounded and close
    record(8, ok, "specker stages monotone, <= 1, within s*2^-s of witness_real(1) for s <= 512")
    assert ok


def test_criterion_9_dcomp():
    rational_ids = [i for i, e in CATALOG.items() if e.declared_level == 0]
    level1_ids = ["sqrt2", "pi", "e", "sin_sqrt2_over_6"]
    oracle_ids = [i for i in CATALOG if not isinstance(catalog_value(i), CReal)]
    rational_ok = all((dcomp(i).level, dcomp(i).status) == (0, "exact") for i in rational_ids)
    level1_ok = all((dcomp(i).level, dcomp(i).status) == (1, "exact") and replay_matches(dcomp(i), 20)
                    for i in level1_ids)
    oracle_ok = all(dcomp(i).status == "upper_bound" and dcomp(i).level0_exhausted for i in oracle_ids)
    monotone_ok = True
    for i in rational_ids + level1_ids + oracle_ids:
        levels = [dcomp(i, 2 ** k).level for k in range(0, 17, 2)]
        monotone_ok &= all(a >= b for a, b in zip(levels, levels[1:]))
    ok = rational_ok and level1_ok and oracle_ok and monotone_ok
    record(9, ok, f"{len(rational_ids)} rationals at (0, exact), {len(level1_ids)} at (1, exact) with replay, "
                  f"{len(oracle_ids)} oracle entries upper_bound after level-0 exhaustion, budgets monotone")
    assert ok, (rational_ok, level1_ok, oracle_ok, monotone_ok)


def test_criterion_10_injectivity():
    rng = random.Random(10)
    separated = 0
    for _ in range(200):
        tail = {k for k in range(16, 24) if rng.random() < 0.5}
        a = {k for k in range(16) if rng.random() < 0.5}
        b = {k for k in range(16) if rng.random() < 0.5}
        while a == b:
            b ^= {rng.randrange(16)}
        x = sum_real(finite_set_decider(a | tail))
        y = sum_real(finite_set_decider(b | tail))
        first = min(a ^ b)
        expected = Ordering.GREATER if first in a else Ordering.LESS
        separated += cmp_at(x, y, 19) is expected
    ok = separated == 200
    record(10, ok, f"{separated}/200 pairs differing below index 16 separated by cmp_at at precision 19")
    assert ok
