"""Simulation and analysis toolkit for amplitude-amplification search on CNF instances."""

__version__ = "0.1.0"

from .cnf import (
    Clause,
    CnfFormula,
    DimacsError,
    FormulaError,
    GuardError,
    InstanceError,
    Literal,
    UnsatTable,
    build_unsat_table,
    eval_clause,
    parse_dimacs,
    serialize_dimacs,
    unsat_count,
)
from .generate import (
    generate_planted_3sat,
    generate_planted_block3sat,
    generate_planted_chain,
)
from .statevector import (
    PhaseProfile,
    apply_clause_phases,
    apply_clause_phases_factored,
    grover_step,
    measure_distribution,
    reflect_about_uniform,
    search_step,
    state_snapshot,
    uniform_state,
)
from .spectral import (
    EigenPairReport,
    SpectralSummary,
    cotangent_sum,
    dense_eigencheck,
    lambda2_from_histogram,
    spectral_summary,
)
from .experiment import (
    CostReport,
    RunConfig,
    RunReport,
    grover_closed_form,
    grover_optimal_steps,
    measurement_success_rate,
    repeat_until_success_stats,
    run_grover_baseline,
    run_sweep,
    state_after,
    success_curve,
    total_cost_report,
)

__all__ = [
    "__version__",
    "Clause",
    "CnfFormula",
    "CostReport",
    "DimacsError",
    "EigenPairReport",
    "FormulaError",
    "GuardError",
    "InstanceError",
    "Literal",
    "PhaseProfile",
    "RunConfig",
    "RunReport",
    "SpectralSummary",
    "UnsatTable",
    "apply_clause_phases",
    "apply_clause_phases_factored",
    "build_unsat_table",
    "cotangent_sum",
    "dense_eigencheck",
    "eval_clause",
    "generate_planted_3sat",
    "generate_planted_block3sat",
    "generate_planted_chain",
    "grover_closed_form",
    "grover_optimal_steps",
    "grover_step",
    "lambda2_from_histogram",
    "measure_distribution",
    "measurement_success_rate",
    "parse_dimacs",
    "reflect_about_uniform",
    "repeat_until_success_stats",
    "run_grover_baseline",
    "run_sweep",
    "search_step",
    "serialize_dimacs",
    "spectral_summary",
    "state_after",
    "state_snapshot",
    "success_curve",
    "total_cost_report",
    "uniform_state",
    "unsat_count",
]
