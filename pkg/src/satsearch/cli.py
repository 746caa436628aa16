"""Command-line front end.

Subcommands: gen, analyze, run, sweep, grover, spectrum.  Every command is
deterministic given its flags and seed; JSON output has a fixed key order and
full-precision floats, so identical invocations produce byte-identical files.

Exit codes: 0 success, 2 usage error, 3 invalid instance or formula,
4 enumeration/dimension guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cnf import (
    DEFAULT_GUARD_N,
    FormulaError,
    GuardError,
    InstanceError,
    build_unsat_table,
    parse_dimacs,
    serialize_dimacs,
)
from .experiment import (
    RunConfig,
    grover_curve_csv,
    grover_optimal_steps,
    repeat_until_success_stats,
    run_grover_baseline,
    run_sweep,
    total_cost_report,
)
from .generate import generate_planted_3sat
from .spectral import MAX_EIGENCHECK_N, dense_eigencheck, spectral_summary
from .statevector import state_snapshot


def _int_or_auto(text: str):
    if text == "auto":
        return None
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satsearch",
        description="Simulate and analyze amplitude-amplification search on CNF instances.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", default=None, help="write result to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="RNG seed (PCG64)")
    common.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("SATSEARCH_THREADS", "1")),
        help="worker threads for enumeration (default from SATSEARCH_THREADS)",
    )
    common.add_argument(
        "--guard-n",
        type=int,
        default=DEFAULT_GUARD_N,
        help=f"enumeration guard on variable count (default {DEFAULT_GUARD_N})",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="write a planted 3SAT instance as DIMACS")
    gen.add_argument("-n", type=int, required=True, help="variable count (>= 3)")
    gen.add_argument("-m", type=int, required=True, help="initial random clause count")

    analyze = sub.add_parser("analyze", parents=[common], help="spectral summary of an instance")
    analyze.add_argument("-f", "--formula", required=True, help="DIMACS CNF file")
    analyze.add_argument("--table", default=None, help="also write the violation table JSON here")

    sweep = sub.add_parser("sweep", parents=[common], help="success-probability curve over iterations")
    sweep.add_argument("-f", "--formula", required=True)
    sweep.add_argument("--qmax", type=_int_or_auto, default=None, help="sweep bound ('auto' = 2*q_m)")
    sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    sweep.add_argument("--snapshot", default=None, help="write final-state amplitudes (JSON) here")
    sweep.add_argument("--snapshot-threshold", type=float, default=1e-6, help="magnitude cutoff for snapshots")

    run = sub.add_parser("run", parents=[common], help="full run report (JSON)")
    run.add_argument("-f", "--formula", required=True)
    run.add_argument("--qmax", type=_int_or_auto, default=None)
    run.add_argument("--grover", action="store_true", help="include the Grover baseline curve")
    run.add_argument("--steps", type=_int_or_auto, default=None, help="baseline steps ('auto' = floor(pi/4*sqrt(N)))")
    run.add_argument("--trials", type=int, default=0, help="repeat-until-success sampling trials")
    run.add_argument("--trials-seed", type=int, default=0)
    run.add_argument("--timings", action="store_true", help="include wall times (breaks byte-determinism)")
    run.add_argument("--snapshot", default=None)
    run.add_argument("--snapshot-threshold", type=float, default=1e-6)

    grover = sub.add_parser("grover", parents=[common], help="Grover baseline curve")
    grover.add_argument("-f", "--formula", required=True)
    grover.add_argument("--steps", type=_int_or_auto, default=None)
    grover.add_argument("--format", choices=["csv", "json"], default="csv")

    spectrum = sub.add_parser("spectrum", parents=[common], help="dense eigendecomposition check (n <= 10)")
    spectrum.add_argument("-f", "--formula", required=True)

    return parser


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w") as handle:
            handle.write(text)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _read_formula(path: str):
    with open(path) as handle:
        return parse_dimacs(handle.read())


def _cmd_gen(args) -> int:
    formula = generate_planted_3sat(args.n, args.m, args.seed, guard_n=args.guard_n)
    table = build_unsat_table(formula, guard_n=args.guard_n, threads=args.threads)
    planted = table.unique_solution()
    text = serialize_dimacs(formula, comments=[f"planted {planted}", f"seed {args.seed}"])
    _emit(text, args.output)
    return 0


def _cmd_analyze(args) -> int:
    formula = _read_formula(args.formula)
    table = build_unsat_table(formula, guard_n=args.guard_n, threads=args.threads)
    summary = spectral_summary(table)
    if args.table is not None:
        _emit(_json_text(table.to_json_dict()), args.table)
    _emit(_json_text(summary.to_json_dict(histogram=table.histogram)), args.output)
    return 0


def _run_config(args, include_grover: bool = False, grover_steps=None) -> RunConfig:
    return RunConfig(
        formula_path=args.formula,
        q_max=getattr(args, "qmax", None),
        include_grover=include_grover,
        grover_steps=grover_steps,
        guard_n=args.guard_n,
        threads=args.threads,
    )


def _write_snapshot(report, args) -> None:
    if getattr(args, "snapshot", None) is None:
        return
    triples = state_snapshot(report.final_state, args.snapshot_threshold)
    payload = {
        "threshold": args.snapshot_threshold,
        "amplitudes": [[k, re, im] for k, re, im in triples],
    }
    _emit(_json_text(payload), args.snapshot)


def _cmd_sweep(args) -> int:
    config = _run_config(args)
    report = run_sweep(config, keep_final_state=args.snapshot is not None)
    _write_snapshot(report, args)
    if args.format == "csv":
        _emit(report.curve_csv(), args.output)
    else:
        _emit(_json_text(report.to_json_dict()), args.output)
    return 0


def _cmd_run(args) -> int:
    config = _run_config(args, include_grover=args.grover, grover_steps=args.steps)
    report = run_sweep(config, keep_final_state=args.snapshot is not None)
    _write_snapshot(report, args)
    payload = report.to_json_dict(include_timings=args.timings)
    payload["cost"] = total_cost_report(report).to_json_dict()
    if args.trials > 0:
        rate, mean_repeats = repeat_until_success_stats(config, args.trials, args.trials_seed)
        payload["repeat_stats"] = {
            "trials": args.trials,
            "rng_seed": args.trials_seed,
            "empirical_success_rate": rate,
            "mean_repeats": mean_repeats,
        }
    _emit(_json_text(payload), args.output)
    return 0


def _cmd_grover(args) -> int:
    formula = _read_formula(args.formula)
    table = build_unsat_table(formula, guard_n=args.guard_n, threads=args.threads)
    solution = table.unique_solution()
    steps = args.steps if args.steps is not None else grover_optimal_steps(formula.assignment_count)
    curve = run_grover_baseline(formula, solution, steps)
    if args.format == "csv":
        _emit(grover_curve_csv(curve), args.output)
    else:
        payload = {"steps": steps, "curve": [[int(k), float(p)] for k, p in curve]}
        _emit(_json_text(payload), args.output)
    return 0


def _cmd_spectrum(args) -> int:
    formula = _read_formula(args.formula)
    if formula.n > MAX_EIGENCHECK_N:
        raise GuardError(
            f"spectrum requires n <= {MAX_EIGENCHECK_N}, got n={formula.n}"
        )
    table = build_unsat_table(formula, guard_n=args.guard_n, threads=args.threads)
    summary = spectral_summary(table)
    report = dense_eigencheck(formula, table)
    payload = report.to_json_dict()
    payload["predicted_lambda_pm"] = summary.lambda_pm
    _emit(_json_text(payload), args.output)
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "analyze": _cmd_analyze,
    "sweep": _cmd_sweep,
    "run": _cmd_run,
    "grover": _cmd_grover,
    "spectrum": _cmd_spectrum,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return _COMMANDS[args.command](args)
    except (FormulaError, InstanceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
