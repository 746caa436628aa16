"""Closed-form spectral predictions for the search iterate, plus a dense oracle.

For a unique-solution instance the iterate's two principal eigenphases sit at
+/- 2/(B*sqrt(N)) with B = sqrt(1 + lambda2), where lambda2 is the quadratic
cotangent moment of the violation histogram:

    lambda2 = (1/N) * sum_{u=1..m} N_u * cot^2(pi*u / (2m))

The linear moment lambda1 cancels identically between the two conjugate
ancilla branches (cot is odd), so it is pinned to exact zero instead of being
reported as float residue.  The two-eigenphase picture needs the principal
phases well separated from the smallest clause phase pi/m; ``validity_ratio``
measures that separation and a summary is flagged once it exceeds 0.1.

``dense_eigencheck`` materializes the iterate column by column through the
production kernel and hands it to a dense eigensolver.  It is the numerical
oracle the formulas are tested against, never a production path, and is
guarded to n <= 10 (matrix dimension 2048).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cnf import CnfFormula, GuardError, UnsatTable
from .statevector import PhaseProfile, search_step

VALIDITY_WARNING_RATIO = 0.1
MAX_EIGENCHECK_N = 10


@dataclass(frozen=True)
class SpectralSummary:
    """Closed-form predictions derived from a violation histogram."""

    n: int
    m: int
    lambda1: float
    lambda2: float
    B: float
    lambda_pm: float
    q_m: int
    predicted_success: float
    validity_ratio: float
    alpha: float
    validity_warning: bool

    def to_json_dict(self, histogram=None) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "B": self.B,
            "lambda_pm": self.lambda_pm,
            "q_m": self.q_m,
            "predicted_success": self.predicted_success,
            "validity_ratio": self.validity_ratio,
            "alpha": self.alpha,
            "validity_warning": self.validity_warning,
        }
        if histogram is not None:
            out["histogram"] = [int(v) for v in histogram]
        return out


def lambda2_from_histogram(histogram, m: int) -> float:
    """Quadratic cotangent moment of a violation histogram (the u = 0 bin is excluded).

    Defined for any histogram, including multi-solution instances; only the
    closed-form summary requires uniqueness.
    """
    hist = np.asarray(histogram, dtype=np.float64)
    if hist.shape[0] != m + 1:
        raise ValueError(f"histogram must have m+1 = {m + 1} bins, got {hist.shape[0]}")
    total = hist.sum()
    u = np.arange(1, m + 1, dtype=np.float64)
    half_angle = np.pi * u / (2.0 * m)
    cot_sq = (np.cos(half_angle) / np.sin(half_angle)) ** 2
    return float(np.dot(hist[1:], cot_sq) / total)


def cotangent_sum(table: UnsatTable, p: int) -> float:
    """p-th cotangent moment of the iterate's non-solution eigenphases.

    p=1 pairs each cot(+theta/2) with cot(-theta/2) from the conjugate ancilla
    branch, cancelling term by term; it is returned as exact zero so callers
    never see rounding residue.  p=2 is ``lambda2_from_histogram``, where the
    branches add instead.
    """
    table.unique_solution()
    if p == 1:
        return 0.0
    if p == 2:
        return lambda2_from_histogram(table.histogram, table.m)
    raise ValueError(f"only moments p=1 and p=2 are defined, got p={p}")


def spectral_summary(table: UnsatTable) -> SpectralSummary:
    """All closed-form predictions for a unique-solution instance."""
    table.unique_solution()
    total = table.assignment_count
    sqrt_n = math.sqrt(total)
    lam2 = lambda2_from_histogram(table.histogram, table.m)
    b = math.sqrt(1.0 + lam2)
    lambda_pm = 2.0 / (b * sqrt_n)
    q_m = max(1, round(math.pi * b * sqrt_n / 4.0))
    ratio = lambda_pm / (math.pi / table.m)
    return SpectralSummary(
        n=table.n,
        m=table.m,
        lambda1=0.0,
        lambda2=lam2,
        B=b,
        lambda_pm=lambda_pm,
        q_m=q_m,
        predicted_success=1.0 / (b * b),
        validity_ratio=ratio,
        alpha=1.0 / sqrt_n,
        validity_warning=ratio > VALIDITY_WARNING_RATIO,
    )


@dataclass
class EigenPairReport:
    """Dense-eigendecomposition view of the iterate's principal eigenphase pair."""

    eigenphases: np.ndarray
    lambda_plus: float
    lambda_minus: float
    span_weight: float

    @property
    def principal_pair(self) -> tuple[float, float]:
        return (self.lambda_plus, self.lambda_minus)

    def to_json_dict(self) -> dict:
        return {
            "lambda_plus": self.lambda_plus,
            "lambda_minus": self.lambda_minus,
            "span_weight": self.span_weight,
            "eigenphases": [float(p) for p in self.eigenphases],
        }


def iterate_matrix(profile: PhaseProfile) -> np.ndarray:
    """Materialize the search iterate column by column through ``search_step``."""
    dim = 2 * profile.size
    matrix = np.empty((dim, dim), dtype=np.complex128)
    basis = np.zeros(dim, dtype=np.complex128)
    for k in range(dim):
        basis[k] = 1.0
        matrix[:, k] = search_step(basis, profile)
        basis[k] = 0.0
    return matrix


def dense_eigencheck(
    formula: CnfFormula,
    table: UnsatTable,
    zero_phase_floor: float = 1e-9,
    overlap_floor: float = 1e-6,
) -> EigenPairReport:
    """Full eigendecomposition of the iterate; extracts the principal pair.

    The principal pair is the conjugate eigenphase pair of smallest nonzero
    magnitude with nonzero overlap against the amplified state (|0,r> +
    |1,r>)/sqrt(2); the overlap floor filters the exact zero-phase spectator
    (|0,r> - |1,r>)/sqrt(2), which is orthogonal to everything the search
    dynamics touches.
    """
    if formula.n > MAX_EIGENCHECK_N:
        raise GuardError(
            f"dense eigencheck limited to n <= {MAX_EIGENCHECK_N} "
            f"(matrix dimension {2 << MAX_EIGENCHECK_N}), got n={formula.n}"
        )
    solution = table.unique_solution()
    matrix = iterate_matrix(PhaseProfile.from_table(table))
    values, vectors = np.linalg.eig(matrix)
    if np.max(np.abs(np.abs(values) - 1.0)) > 1e-8:
        raise RuntimeError("eigensolver returned non-unimodular eigenvalues for a unitary")

    phases = np.angle(values)
    data_dim = table.assignment_count
    target = np.zeros(2 * data_dim, dtype=np.complex128)
    target[solution] = target[data_dim + solution] = 1.0 / math.sqrt(2.0)
    overlaps = np.abs(vectors.conj().T @ target) ** 2

    eligible = np.flatnonzero((np.abs(phases) > zero_phase_floor) & (overlaps > overlap_floor))
    if eligible.size < 2:
        raise RuntimeError("no principal eigenphase pair found above the overlap floor")
    eligible = eligible[np.argsort(np.abs(phases[eligible]))]
    first = eligible[0]
    opposite = [k for k in eligible[1:] if phases[k] * phases[first] < 0]
    if not opposite:
        raise RuntimeError("principal eigenphases do not form a conjugate pair")
    second = opposite[0]
    plus, minus = (first, second) if phases[first] > 0 else (second, first)
    return EigenPairReport(
        eigenphases=np.sort(phases),
        lambda_plus=float(phases[plus]),
        lambda_minus=float(phases[minus]),
        span_weight=float(overlaps[plus] + overlaps[minus]),
    )
