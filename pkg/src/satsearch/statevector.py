"""State-vector kernels over the ancilla-extended search space.

The register is one ancilla qubit plus n data qubits.  Amplitude (b, i) lives
at flat index b*N + i with N = 2**n, so each ancilla branch is a contiguous
block: the clause-phase operator becomes a stride-1 elementwise multiply and
the reflection needs a single global sum.  That sum uses numpy's fixed
pairwise reduction, so results are reproducible and independent of threading.

Phase convention: an assignment violating u of the m clauses picks up
exp(+i*pi*u/m) on the b=0 branch and the conjugate on b=1.  Assignments
satisfying everything (u = 0) are untouched; the search iterate amplifies
exactly that fixed fiber.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cnf import CnfFormula, violation_mask


@dataclass
class PhaseProfile:
    """Violation counts plus clause count; caches the diagonal phase vector."""

    m: int
    u: np.ndarray
    conjugated: bool = False
    _phases: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("clause count m must be >= 1")
        self.u = np.asarray(self.u)

    @classmethod
    def from_table(cls, table) -> "PhaseProfile":
        return cls(table.m, table.counts)

    @classmethod
    def all_violated(cls, n: int, solution: int, m: int = 1) -> "PhaseProfile":
        """Profile where every non-solution violates all m clauses.

        All non-solution phases are exp(+/- i*pi) = -1, which turns the search
        iterate into a plain Grover iterate on the doubled register.  This
        regime is not realizable as a CNF formula for n > 1 (a single
        OR-clause can only be violated on a subcube), so it is constructed
        directly as a table.
        """
        u = np.full(1 << n, m, dtype=np.int32)
        u[solution] = 0
        return cls(m, u)

    @property
    def size(self) -> int:
        return int(self.u.shape[0])

    def inverse(self) -> "PhaseProfile":
        return PhaseProfile(self.m, self.u, not self.conjugated)

    def phase_vector(self) -> np.ndarray:
        if self._phases is None:
            theta = (np.pi / self.m) * self.u.astype(np.float64)
            if self.conjugated:
                theta = -theta
            upper = np.exp(1j * theta)
            self._phases = np.concatenate([upper, upper.conj()])
        return self._phases


def uniform_state(n: int) -> np.ndarray:
    """Equal superposition over all 2N = 2**(n+1) basis states."""
    if n < 1:
        raise ValueError("need n >= 1 data qubits")
    dim = 2 << n
    return np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128)


def _check_dimension(state: np.ndarray, data_dim: int) -> None:
    if state.shape[0] != 2 * data_dim:
        raise ValueError(
            f"state has {state.shape[0]} amplitudes, expected {2 * data_dim}"
        )


def apply_clause_phases(state: np.ndarray, profile: PhaseProfile) -> np.ndarray:
    """Diagonal clause-phase operator as one precomputed elementwise pass."""
    _check_dimension(state, profile.size)
    return state * profile.phase_vector()


def apply_clause_phases_factored(state: np.ndarray, formula: CnfFormula) -> np.ndarray:
    """Apply the m per-clause phase factors sequentially.

    Each clause multiplies branch b=0 by exp(i*pi/m) on the assignments it
    leaves unsatisfied, and branch b=1 by the conjugate.  This path evaluates
    clauses directly instead of using a precomputed violation table, so it
    cross-checks ``apply_clause_phases`` as an independent implementation.
    Being diagonal, the factors commute and clause order is irrelevant.
    """
    data_dim = 1 << formula.n
    _check_dimension(state, data_dim)
    indices = np.arange(data_dim, dtype=np.int64)
    out = np.array(state, dtype=np.complex128, copy=True)
    factor = np.exp(1j * np.pi / formula.m)
    for clause in formula.clauses:
        violated = violation_mask(clause, indices)
        out[:data_dim][violated] *= factor
        out[data_dim:][violated] *= factor.conjugate()
    return out


def reflect_about_uniform(state: np.ndarray) -> np.ndarray:
    """psi -> psi - 2<+|psi>|+>: negates the uniform component, fixes the rest."""
    data_dim = state.shape[0] // 2
    return state - state.sum() / data_dim


def search_step(state: np.ndarray, profile: PhaseProfile) -> np.ndarray:
    """One search iteration: clause phases first, then reflection about uniform."""
    _check_dimension(state, profile.size)
    out = state * profile.phase_vector()
    out -= out.sum() / profile.size
    return out


def grover_step(state: np.ndarray, solution: int) -> np.ndarray:
    """Textbook Grover iterate on a bare N-dim data register.

    The baseline flips the known solution's phase directly (the oracle answer
    is injected), then reflects about the uniform state.  The sign convention
    matches ``reflect_about_uniform``; it differs from the inversion-about-mean
    form only by a global phase.
    """
    out = np.array(state, dtype=np.complex128, copy=True)
    out[solution] = -out[solution]
    out -= 2.0 * out.sum() / out.shape[0]
    return out


def measure_distribution(
    state: np.ndarray,
    solution: int,
    include_full: bool = False,
) -> tuple[float, float, np.ndarray | None]:
    """Success statistics of a joint-register state for a known solution.

    Returns the data-register marginal probability of reading the solution,
    the squared overlap with the state (|0,r> + |1,r>)/sqrt(2), and optionally
    the full probability vector.  The marginal can never be smaller than the
    overlap: the overlap picks one direction out of the two-dimensional
    ancilla fiber the marginal sums over.
    """
    data_dim = state.shape[0] // 2
    if not 0 <= solution < data_dim:
        raise ValueError(f"solution index {solution} out of range for N={data_dim}")
    a0 = state[solution]
    a1 = state[data_dim + solution]
    marginal = abs(a0) ** 2 + abs(a1) ** 2
    overlap = 0.5 * abs(a0 + a1) ** 2
    full = np.abs(state) ** 2 if include_full else None
    return float(marginal), float(overlap), full


def state_snapshot(state: np.ndarray, threshold: float = 1e-6) -> list[tuple[int, float, float]]:
    """(index, re, im) triples for amplitudes above the magnitude threshold."""
    keep = np.flatnonzero(np.abs(state) > threshold)
    return [(int(k), float(state[k].real), float(state[k].imag)) for k in keep]
