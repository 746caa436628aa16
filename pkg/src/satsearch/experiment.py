"""End-to-end runs: iteration sweeps, Grover baseline, sampling statistics.

A sweep starts from the uniform state and applies the search iterate up to
q_max times, recording two success metrics per iteration count: the
data-register marginal probability of reading the solution (what a lab
measurement gives) and the squared overlap with the amplified state
(|0,r> + |1,r>)/sqrt(2), which is what the closed-form peak 1/B**2 bounds.
The marginal is never smaller than the overlap, so both are kept.

Reports serialize to JSON (stable key order, full-precision floats) or to CSV
for the curves.  Timing information is collected but excluded from the JSON
by default so that identical configurations produce byte-identical output.
All sampling uses numpy's seeded PCG64 generator, so runs are reproducible
across platforms.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .cnf import (
    CnfFormula,
    DEFAULT_GUARD_N,
    UnsatTable,
    build_unsat_table,
    parse_dimacs,
)
from .generate import generate_planted_3sat
from .spectral import SpectralSummary, spectral_summary
from .statevector import (
    PhaseProfile,
    grover_step,
    measure_distribution,
    search_step,
    uniform_state,
)


@dataclass
class RunConfig:
    """Where the instance comes from and how far to sweep.

    Exactly one of ``formula_path`` or the (gen_n, gen_m, gen_seed) generator
    triple must be given.  ``q_max=None`` means 2*q_m, which covers the full
    first oscillation lobe so the peak position is measurable.
    """

    formula_path: str | None = None
    gen_n: int | None = None
    gen_m: int | None = None
    gen_seed: int | None = None
    q_max: int | None = None
    include_grover: bool = False
    grover_steps: int | None = None
    guard_n: int = DEFAULT_GUARD_N
    threads: int = 1

    def __post_init__(self) -> None:
        has_path = self.formula_path is not None
        has_gen = self.gen_n is not None or self.gen_m is not None or self.gen_seed is not None
        if has_path == has_gen:
            raise ValueError("specify exactly one of formula_path or gen_n/gen_m/gen_seed")
        if has_gen and (self.gen_n is None or self.gen_m is None):
            raise ValueError("generator source needs both gen_n and gen_m")
        if self.q_max is not None and self.q_max < 1:
            raise ValueError("q_max must be >= 1")

    def echo(self) -> dict:
        # threads is an execution detail with no effect on any emitted value,
        # so it is excluded to keep reports byte-identical across thread counts
        return {
            "formula_path": self.formula_path,
            "gen_n": self.gen_n,
            "gen_m": self.gen_m,
            "gen_seed": self.gen_seed,
            "q_max": self.q_max,
            "include_grover": self.include_grover,
            "grover_steps": self.grover_steps,
            "guard_n": self.guard_n,
        }


@dataclass
class RunReport:
    """Everything one sweep produced, plus the predictions it is judged against."""

    config: dict
    version: str
    spectral: SpectralSummary
    histogram: list[int]
    solution: int
    curve: np.ndarray  # rows (q, p_marginal, p_overlap) for q = 0..q_max
    q_peak_measured: int
    p_peak_measured: float
    grover_curve: np.ndarray | None
    timings: dict[str, float]
    final_state: np.ndarray | None = field(default=None, repr=False)

    def to_json_dict(self, include_timings: bool = False) -> dict:
        out = {
            "version": self.version,
            "config": self.config,
            "spectral": self.spectral.to_json_dict(),
            "histogram": self.histogram,
            "solution": self.solution,
            "predicted": {
                "q_m": self.spectral.q_m,
                "success": self.spectral.predicted_success,
            },
            "q_peak_measured": self.q_peak_measured,
            "p_peak_measured": self.p_peak_measured,
            "curve": [[int(q), float(pm), float(po)] for q, pm, po in self.curve],
            "grover_curve": None
            if self.grover_curve is None
            else [[int(k), float(p)] for k, p in self.grover_curve],
        }
        if include_timings:
            out["timings"] = self.timings
        return out

    def curve_csv(self) -> str:
        lines = ["q,p_marginal,p_overlap"]
        for q, pm, po in self.curve:
            lines.append(f"{int(q)},{float(pm)!r},{float(po)!r}")
        return "\n".join(lines) + "\n"


def load_formula(config: RunConfig) -> CnfFormula:
    if config.formula_path is not None:
        with open(config.formula_path) as handle:
            return parse_dimacs(handle.read())
    return generate_planted_3sat(
        config.gen_n, config.gen_m, config.gen_seed or 0, guard_n=config.guard_n
    )


def success_curve(profile: PhaseProfile, solution: int, q_max: int) -> np.ndarray:
    """Rows (q, p_marginal, p_overlap) for q = 0..q_max applications of the iterate."""
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    n = int(profile.size).bit_length() - 1
    state = uniform_state(n)
    out = np.empty((q_max + 1, 3))
    marginal, overlap, _ = measure_distribution(state, solution)
    out[0] = (0, marginal, overlap)
    for q in range(1, q_max + 1):
        state = search_step(state, profile)
        marginal, overlap, _ = measure_distribution(state, solution)
        out[q] = (q, marginal, overlap)
    return out


def state_after(profile: PhaseProfile, iterations: int) -> np.ndarray:
    """State reached from uniform after the given number of iterate applications."""
    n = int(profile.size).bit_length() - 1
    state = uniform_state(n)
    for _ in range(iterations):
        state = search_step(state, profile)
    return state


def run_sweep(config: RunConfig, keep_final_state: bool = False) -> RunReport:
    """Full pipeline: load/generate, enumerate, predict, sweep, compare."""
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    formula = load_formula(config)
    table = build_unsat_table(formula, guard_n=config.guard_n, threads=config.threads)
    solution = table.unique_solution()
    timings["enumerate_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    summary = spectral_summary(table)
    timings["spectral_s"] = time.perf_counter() - t0

    q_max = config.q_max if config.q_max is not None else 2 * summary.q_m
    profile = PhaseProfile.from_table(table)
    t0 = time.perf_counter()
    curve = success_curve(profile, solution, q_max)
    timings["sweep_s"] = time.perf_counter() - t0
    q_peak = int(np.argmax(curve[:, 2]))
    p_peak = float(curve[q_peak, 2])

    grover_curve = None
    if config.include_grover:
        steps = config.grover_steps
        if steps is None:
            steps = grover_optimal_steps(table.assignment_count)
        t0 = time.perf_counter()
        grover_curve = run_grover_baseline(formula, solution, steps)
        timings["grover_s"] = time.perf_counter() - t0

    final_state = state_after(profile, q_max) if keep_final_state else None
    return RunReport(
        config=config.echo(),
        version=__version__,
        spectral=summary,
        histogram=[int(v) for v in table.histogram],
        solution=solution,
        curve=curve,
        q_peak_measured=q_peak,
        p_peak_measured=p_peak,
        grover_curve=grover_curve,
        timings=timings,
        final_state=final_state,
    )


def grover_optimal_steps(total: int) -> int:
    """floor((pi/4) * sqrt(N)), the baseline's standard iteration count."""
    return int(math.floor(math.pi / 4.0 * math.sqrt(total)))


def run_grover_baseline(formula: CnfFormula, solution: int, steps: int) -> np.ndarray:
    """Rows (step, p_solution) for the N-dimensional Grover baseline."""
    total = formula.assignment_count
    state = np.full(total, 1.0 / math.sqrt(total), dtype=np.complex128)
    out = np.empty((steps + 1, 2))
    out[0] = (0, abs(state[solution]) ** 2)
    for k in range(1, steps + 1):
        state = grover_step(state, solution)
        out[k] = (k, abs(state[solution]) ** 2)
    return out


def grover_closed_form(total: int, steps: int) -> np.ndarray:
    """sin^2((2k+1) * theta / 2) with theta = 2*arcsin(1/sqrt(N)), k = 0..steps."""
    theta = 2.0 * math.asin(1.0 / math.sqrt(total))
    k = np.arange(steps + 1, dtype=np.float64)
    return np.sin((2.0 * k + 1.0) * theta / 2.0) ** 2


def measurement_success_rate(
    profile: PhaseProfile,
    solution: int,
    iterations: int,
    trials: int,
    rng_seed: int,
) -> float:
    """Fraction of sampled data-register measurements that read out the solution.

    Evolves the uniform state for the given iteration count, forms the
    data-register marginal distribution, and samples it ``trials`` times with
    numpy's PCG64 generator.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    state = state_after(profile, iterations)
    probs = np.abs(state) ** 2
    data_dim = profile.size
    marginal = probs[:data_dim] + probs[data_dim:]
    marginal /= marginal.sum()
    rng = np.random.default_rng(rng_seed)
    samples = np.searchsorted(np.cumsum(marginal), rng.random(trials), side="right")
    return float(np.mean(samples == solution))


def repeat_until_success_stats(
    config: RunConfig,
    trials: int,
    rng_seed: int,
) -> tuple[float, float]:
    """Sample data-register measurements at q = q_m.

    Returns the fraction of trials that read out the solution and the implied
    geometric-distribution mean repeat count 1/rate (inf when no trial
    succeeded).  Sampling uses numpy's PCG64 generator seeded with
    ``rng_seed``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    formula = load_formula(config)
    table = build_unsat_table(formula, guard_n=config.guard_n, threads=config.threads)
    solution = table.unique_solution()
    summary = spectral_summary(table)
    rate = measurement_success_rate(
        PhaseProfile.from_table(table), solution, summary.q_m, trials, rng_seed
    )
    mean_repeats = math.inf if rate == 0.0 else 1.0 / rate
    return rate, mean_repeats


@dataclass(frozen=True)
class CostReport:
    """Iteration budget: one run, expected total, and the B**3 scaling figure."""

    iterations_per_run: int
    expected_total_iterations: float
    scaling_figure: float

    def to_json_dict(self) -> dict:
        return {
            "iterations_per_run": self.iterations_per_run,
            "expected_total_iterations": self.expected_total_iterations,
            "scaling_figure": self.scaling_figure,
        }


def total_cost_report(report: RunReport) -> CostReport:
    """Expected iteration cost from the measured peak, plus pi*B**3*sqrt(N)/4."""
    summary = report.spectral
    sqrt_n = math.sqrt(1 << summary.n)
    expected = (
        math.inf
        if report.p_peak_measured == 0.0
        else summary.q_m / report.p_peak_measured
    )
    return CostReport(
        iterations_per_run=summary.q_m,
        expected_total_iterations=expected,
        scaling_figure=math.pi * summary.B**3 * sqrt_n / 4.0,
    )


def grover_curve_csv(curve: np.ndarray) -> str:
    lines = ["step,p_r"]
    for k, p in curve:
        lines.append(f"{int(k)},{float(p)!r}")
    return "\n".join(lines) + "\n"
