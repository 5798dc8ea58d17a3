"""Command-line interface: ``stratum <subcommand> ...`` (also ``python3 -m stratum``).

Exit status 0 on success, 2 on bad input, 3 when an operation refuses a
well-formed request (no modulus, insufficient evidence, precision cap).
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import chains, creal, dcomp as dcomp_mod
from .errors import InputError, InsufficientEvidence, PrecisionLimitError, Refusal, StepBudgetExceeded, StratumError
from .omega import DEFAULT_MAX_LEN, PrefixMachine, omega_trace, trace_csv
from .oracle_tower import OracleReal, specker, witness_real

FORMAT = "stratum/1"
EXIT_OK, EXIT_INPUT, EXIT_REFUSAL = 0, 2, 3

DEFAULTS = {"digits": 20, "budget": dcomp_mod.DEFAULT_BUDGET, "format": "text", "seed": 0,
            "max_len": DEFAULT_MAX_LEN, "stages": 16, "chain_budget": chains.DEFAULT_BUDGET}


def _emit(args, text: str = "", record: Optional[dict] = None, csv_text: Optional[str] = None):
    if args.format == "json":
        if record is None:
            raise InputError(f"{args.command} has no JSON output")
        print(json.dumps({"version": FORMAT, **record}, sort_keys=True))
    elif args.format == "csv":
        if csv_text is None:
            raise InputError(f"{args.command} has no CSV output")
        sys.stdout.write(csv_text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _exact(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# subcommands

def cmd_digits(args) -> int:
    count = args.count if args.count is not None else args.digits
    value = dcomp_mod.catalog_value(args.id)
    if isinstance(value, OracleReal):
        raise Refusal(
            f"{args.id} has no modulus at base level: it is only the limit of stage "
            f"approximations ({value.description}), so no digit can be certified"
        )
    text = creal.to_decimal(value, count)
    n = creal.digits_precision(count)
    provenance = f"provenance: {value.provenance}; precision 2^-{n}; modulus({n}) = {value.modulus(n)}"
    record = {"kind": "digits", "id": args.id, "digits": count, "value": text,
              "provenance": value.provenance, "precision": n, "modulus": value.modulus(n)}
    _emit(args, f"{text}\n{provenance}", record)
    return EXIT_OK


def cmd_dcomp(args) -> int:
    result = dcomp_mod.dcomp(args.id, args.budget)
    text = (f"{result.id}: level {result.level} ({dcomp_mod.DEFAULT_LADDER.name(result.level)}), "
            f"sigma {result.witness}, {result.status}, budget used {result.search_budget_used}\n"
            f"certificate: {result.certificate}")
    _emit(args, text, {"kind": "dcomp", **result.to_dict()})
    return EXIT_OK


def cmd_layers(args) -> int:
    report = dcomp_mod.layer_table(budget=args.budget)
    record = report.to_dict()
    record.pop("version")
    _emit(args, report.to_text(), record)
    return EXIT_OK


def cmd_omega(args) -> int:
    rows = omega_trace(PrefixMachine(args.max_len), args.n_max)
    text = "n\tomega\thalted\n" + "".join(f"{n}\t{_exact(v)}\t{c}\n" for n, v, c in rows)
    record = {"kind": "omega", "max_len": args.max_len,
              "rows": [{"n": n, "omega": _exact(v), "halted": c} for n, v, c in rows]}
    _emit(args, text, record, trace_csv(rows))
    return EXIT_OK


def _parse_naturals(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"expected naturals separated by spaces or commas, got {text!r}") from exc


def _load_chain(source: str, seed: int, budget: int) -> chains.Chain:
    """``builtin:condition-a:K``, ``builtin:condition-c:pi,e``, ``builtin:c1``, ``builtin:c2``,
    ``builtin:random:LEVELS`` (uses --seed) or a path to a chain JSON document."""
    if source.startswith("builtin:"):
        parts = source.split(":")
        name = parts[1] if len(parts) > 1 else ""
        arg = ":".join(parts[2:])
        if name == "condition-a":
            return chains.build_chain_condition_A(int(arg or "3"))
        if name == "condition-c":
            return chains.build_chain_condition_C([t for t in arg.split(",") if t])
        if name in ("c1", "c2"):
            c1, c2 = chains.noncollapse_chains()
            return c1 if name == "c1" else c2
        if name == "random":
            return chains.random_admissible_chain(random.Random(seed), int(arg or "5"), budget)
        raise InputError(f"unknown builtin chain {source!r}")
    path = Path(source)
    if not path.exists():
        raise InputError(f"no such chain file: {source}")
    return chains.Chain.from_json(path.read_text())


def cmd_chain(args) -> int:
    if args.action == "encode":
        code = chains.encode_set_to_bits(_parse_naturals(args.value))
        bits = code.prefix()
        _emit(args, bits, {"kind": "chain-encode", "bits": bits})
        return EXIT_OK
    if args.action == "decode":
        bits = args.value.strip()
        elements = chains.decode_bits_to_set(chains.ChainCode(bits))
        text = " ".join(map(str, elements))
        _emit(args, text, {"kind": "chain-decode", "bits": bits, "elements": list(elements)})
        return EXIT_OK
    chain = _load_chain(args.value, args.seed, args.chain_budget)
    levels = args.levels if args.levels is not None else (chain.length or 2) - 1
    report = chains.is_admissible_prefix(chain, levels, args.chain_budget)
    lines = [f"chain {chain.name or args.value}: levels 0..{levels}"]
    for k in range(levels + 1):
        lines.append(f"  level {k}: {chain.system(k)}")
    if report.admissible:
        lines.append("admissible; witnesses: " + ", ".join(report.witnesses))
    else:
        lines.append(f"not admissible at step {report.failed_step}->{report.failed_step + 1}: {report.reason}")
    record = {"kind": "chain-check", "chain": chain.name, "levels": levels,
              "admissible": report.admissible, "witnesses": list(report.witnesses),
              "failed_step": report.failed_step, "reason": report.reason,
              "systems": [str(chain.system(k)) for k in range(levels + 1)]}
    _emit(args, "\n".join(lines), record)
    return EXIT_OK


def cmd_collapse_demo(args) -> int:
    rep = chains.counterexample_noncollapse(args.chain_budget)
    checks = [
        ("r_4_3 definable at level 0 of C1", rep.r_in_c1_level0),
        ("r_4_3 not definable at level 1 of C2", rep.r_not_in_c2_level_n),
        ("C1 and C2 share the level-1 system", rep.same_level_n_system),
    ]
    lines = [f"C1: {rep.c1.system(0)} -> {rep.c1.system(1)}", f"C2: {rep.c2.system(0)} -> {rep.c2.system(1)}"]
    lines += [f"[{'ok' if ok else 'FAIL'}] {label}" for label, ok in checks]
    lines.append(f"r_4_3 in global cumulative(1): {rep.r_in_global_cumulative}")
    lines.append(f"r_4_3 in global level(1): {not rep.r_not_in_global_level}")
    adm = rep.c1_admissibility
    lines.append(f"C1 admissible: {adm.admissible}" + ("" if adm.admissible else f" (step {adm.failed_step}->{adm.failed_step + 1}: {adm.reason})"))
    lines.append(f"C2 admissible: {rep.c2_admissibility.admissible}")
    record = {"kind": "collapse-demo", "real": rep.real, "n": rep.n, "holds": rep.holds,
              "conditions": {label: ok for label, ok in checks},
              "in_global_cumulative": rep.r_in_global_cumulative,
              "in_global_level": not rep.r_not_in_global_level,
              "c1_admissible": adm.admissible, "c1_failed_step": adm.failed_step,
              "c2_admissible": rep.c2_admissibility.admissible}
    _emit(args, "\n".join(lines), record)
    return EXIT_OK if rep.holds else EXIT_REFUSAL


def cmd_specker(args) -> int:
    seq, target = specker(), witness_real(1)
    rows = []
    for s in range(args.stages + 1):
        rows.append((s, seq.stage_approximant(s), target.stage_approximant(s)))
    text = "s\tspecker\twitness_real_1\n" + "".join(f"{s}\t{_exact(a)}\t{_exact(b)}\n" for s, a, b in rows)
    csv_text = "s,specker_num,specker_den,witness_num,witness_den\n" + "".join(
        f"{s},{a.numerator},{a.denominator},{b.numerator},{b.denominator}\n" for s, a, b in rows
    )
    record = {"kind": "specker", "rows": [{"s": s, "specker": _exact(a), "witness_real_1": _exact(b)}
                                          for s, a, b in rows]}
    _emit(args, text, record, csv_text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=DEFAULTS["format"],
                        help="output format (default: text)")
    common.add_argument("--digits", type=_natural, default=DEFAULTS["digits"],
                        help="fractional digits for `digits` (default: 20)")
    common.add_argument("--budget", type=_natural, default=DEFAULTS["budget"],
                        help="candidates per ladder level for dcomp/layers (default: 100000)")
    common.add_argument("--chain-budget", type=_natural, default=DEFAULTS["chain_budget"],
                        help="description-size budget for toy systems (default: 6)")
    common.add_argument("--seed", type=_natural, default=DEFAULTS["seed"],
                        help="seed for randomized demos (default: 0)")
    common.add_argument("--max-len", type=_natural, default=DEFAULTS["max_len"],
                        help="longest program string for `omega` (default: 16)")

    parser = argparse.ArgumentParser(prog="stratum", description="Stratified definability toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("digits", parents=[common], help="faithful decimal digits of a catalog constant")
    p.add_argument("id")
    p.add_argument("count", nargs="?", type=_natural, help="digits (overrides --digits)")
    p.set_defaults(func=cmd_digits)

    p = sub.add_parser("dcomp", parents=[common], help="least ladder level and minimal witness")
    p.add_argument("id")
    p.set_defaults(func=cmd_dcomp)

    p = sub.add_parser("layers", parents=[common], help="classify the catalog into Delta_n buckets")
    p.set_defaults(func=cmd_layers)

    p = sub.add_parser("omega", parents=[common], help="Omega_n trace of the toy prefix-free machine")
    p.add_argument("n_max", type=_natural)
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("chain", parents=[common], help="Cantor codes and admissibility checks")
    p.add_argument("action", choices=("encode", "decode", "check"))
    p.add_argument("value", help="naturals (encode), bits (decode) or a chain source (check)")
    p.add_argument("--levels", type=_natural, help="check steps up to this level")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("collapse-demo", parents=[common], help="the two-chain non-collapse example")
    p.set_defaults(func=cmd_collapse_demo)

    p = sub.add_parser("specker", parents=[common], help="Specker sequence next to the halting-set real")
    p.add_argument("--stages", type=_natural, default=DEFAULTS["stages"])
    p.set_defaults(func=cmd_specker)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (Refusal, InsufficientEvidence, PrecisionLimitError, StepBudgetExceeded) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSAL
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except StratumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSAL


if __name__ == "__main__":
    sys.exit(main())
