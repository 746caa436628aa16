"""CNF formulas over Boolean variables, DIMACS I/O, and exhaustive violation tables.

An assignment of n variables is packed into an integer index i in [0, 2**n):
bit k-1 of i holds the value of variable x_k.  Every other component (phase
operators, spectral sums, success metrics) is keyed to this encoding, so it is
fixed here once and tested bit-exactly.

``build_unsat_table`` enumerates every assignment and is the classical oracle
the rest of the toolkit is validated against.  It is deliberately the only
solver in the package: exhaustive, vectorized with numpy bit tricks, and
guarded to n <= 30 unless explicitly overridden.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_GUARD_N = 30


class FormulaError(ValueError):
    """Structurally invalid clause or formula."""


class DimacsError(FormulaError):
    """Malformed DIMACS CNF text."""


class InstanceError(ValueError):
    """Instance lacks the solution structure an operation requires."""


class GuardError(RuntimeError):
    """Enumeration or matrix-dimension guard exceeded."""


@dataclass(frozen=True)
class Literal:
    """A 1-indexed Boolean variable or its negation."""

    var: int
    negated: bool = False

    def to_int(self) -> int:
        return -self.var if self.negated else self.var

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        if lit == 0:
            raise FormulaError("literal 0 is reserved as the clause terminator")
        return cls(abs(lit), lit < 0)

    def holds(self, assignment: int) -> bool:
        bit = (assignment >> (self.var - 1)) & 1
        return bool(bit) != self.negated


@dataclass(frozen=True)
class Clause:
    """Disjunction of literals.  Duplicates are dropped; tautologies rejected."""

    literals: tuple[Literal, ...]

    def __post_init__(self) -> None:
        seen: dict[tuple[int, bool], Literal] = {}
        for lit in self.literals:
            if lit.var < 1:
                raise FormulaError(f"variable index {lit.var} out of range")
            seen.setdefault((lit.var, lit.negated), lit)
        if not seen:
            raise FormulaError("empty clause")
        positive = {v for v, neg in seen if not neg}
        negative = {v for v, neg in seen if neg}
        if positive & negative:
            raise FormulaError("tautological clause: contains a literal and its negation")
        object.__setattr__(self, "literals", tuple(seen.values()))

    @classmethod
    def from_ints(cls, lits: Iterable[int]) -> "Clause":
        return cls(tuple(Literal.from_int(lit) for lit in lits))

    def to_ints(self) -> tuple[int, ...]:
        return tuple(lit.to_int() for lit in self.literals)

    def satisfied_by(self, assignment: int) -> bool:
        return any(lit.holds(assignment) for lit in self.literals)


@dataclass(frozen=True)
class CnfFormula:
    """A conjunction of OR-clauses over n variables."""

    n: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise FormulaError("formula needs at least one variable")
        clauses = tuple(self.clauses)
        if not clauses:
            raise FormulaError("formula needs at least one clause")
        for clause in clauses:
            for lit in clause.literals:
                if lit.var > self.n:
                    raise FormulaError(
                        f"variable x{lit.var} exceeds declared count n={self.n}"
                    )
        object.__setattr__(self, "clauses", clauses)

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def assignment_count(self) -> int:
        return 1 << self.n


def eval_clause(clause: Clause, assignment: int) -> bool:
    """True iff at least one literal of the clause holds under the assignment."""
    return clause.satisfied_by(assignment)


def unsat_count(formula: CnfFormula, assignment: int) -> int:
    """Number of clauses the assignment leaves unsatisfied."""
    return sum(not clause.satisfied_by(assignment) for clause in formula.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF text.

    Accepts ``c`` comment lines, exactly one ``p cnf <vars> <clauses>`` header,
    then whitespace-separated signed integers with each clause terminated by 0.
    Clauses may span lines or share one.  Raises ``DimacsError`` on a malformed
    header, a clause count mismatch, out-of-range literals, empty clauses, or
    tautological clauses.
    """
    n = m = None
    tokens: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if n is not None:
                raise DimacsError(f"line {lineno}: duplicate problem header")
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise DimacsError(
                    f"line {lineno}: malformed header {line!r}, expected 'p cnf <vars> <clauses>'"
                )
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer counts in header {line!r}") from None
            if n < 1 or m < 1:
                raise DimacsError(f"line {lineno}: header requires n >= 1 and m >= 1")
            continue
        if n is None:
            raise DimacsError(f"line {lineno}: clause data before 'p cnf' header")
        tokens.extend(line.split())

    if n is None or m is None:
        raise DimacsError("missing 'p cnf' header")

    clauses: list[Clause] = []
    current: list[int] = []
    for tok in tokens:
        try:
            lit = int(tok)
        except ValueError:
            raise DimacsError(f"non-integer token {tok!r} in clause data") from None
        if lit == 0:
            try:
                clauses.append(Clause.from_ints(current))
            except FormulaError as exc:
                raise DimacsError(f"clause {len(clauses) + 1}: {exc}") from None
            current = []
        else:
            if abs(lit) > n:
                raise DimacsError(f"literal {lit} out of range for n={n}")
            current.append(lit)
    if current:
        raise DimacsError("unterminated clause (missing trailing 0)")
    if len(clauses) != m:
        raise DimacsError(f"header declares {m} clauses, found {len(clauses)}")
    return CnfFormula(n, tuple(clauses))


def serialize_dimacs(formula: CnfFormula, comments: Sequence[str] = ()) -> str:
    lines = [f"c {comment}" for comment in comments]
    lines.append(f"p cnf {formula.n} {formula.m}")
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause.to_ints()) + " 0")
    return "\n".join(lines) + "\n"


@dataclass
class UnsatTable:
    """Per-assignment violation counts with derived histogram and solution list.

    ``counts[i]`` is the number of clauses assignment i violates,
    ``histogram[u]`` the number of assignments violating exactly u clauses,
    and ``solutions`` the indices with zero violations.
    """

    n: int
    m: int
    counts: np.ndarray
    histogram: np.ndarray
    solutions: list[int]

    @property
    def assignment_count(self) -> int:
        return 1 << self.n

    def unique_solution(self) -> int:
        if len(self.solutions) != 1:
            raise InstanceError(
                f"expected exactly one satisfying assignment, found {len(self.solutions)}"
            )
        return self.solutions[0]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "histogram": [int(v) for v in self.histogram],
            "solutions": [int(i) for i in self.solutions],
        }


def violation_mask(clause: Clause, indices: np.ndarray) -> np.ndarray:
    """Boolean mask over assignment indices: True where the clause is violated."""
    violated = np.ones(indices.shape, dtype=bool)
    for lit in clause.literals:
        bit = (indices >> (lit.var - 1)) & 1
        violated &= (bit == 1) == lit.negated
    return violated


def _violation_counts(formula: CnfFormula, lo: int, hi: int) -> np.ndarray:
    indices = np.arange(lo, hi, dtype=np.int64)
    counts = np.zeros(hi - lo, dtype=np.int32)
    for clause in formula.clauses:
        counts += violation_mask(clause, indices)
    return counts


def build_unsat_table(
    formula: CnfFormula,
    guard_n: int = DEFAULT_GUARD_N,
    threads: int = 1,
) -> UnsatTable:
    """Exhaustively enumerate all 2**n assignments.

    With ``threads > 1`` the index range is partitioned into equal blocks and
    counted in a thread pool; the counts are integers, so the result is
    identical to the sequential pass regardless of scheduling.
    """
    if formula.n > guard_n:
        raise GuardError(
            f"enumeration over 2**{formula.n} assignments exceeds guard n <= {guard_n}"
        )
    total = formula.assignment_count
    if threads > 1:
        block = -(-total // threads)
        bounds = [(lo, min(lo + block, total)) for lo in range(0, total, block)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _violation_counts(formula, *b), bounds))
        counts = np.concatenate(parts)
    else:
        counts = _violation_counts(formula, 0, total)
    histogram = np.bincount(counts, minlength=formula.m + 1).astype(np.int64)
    solutions = [int(i) for i in np.flatnonzero(counts == 0)]
    return UnsatTable(formula.n, formula.m, counts, histogram, solutions)
