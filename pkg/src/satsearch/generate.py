"""Planted unique-solution instance generators.

Three families, all deterministic for a given seed and all verified unique by
exhaustive enumeration before they are returned:

* ``generate_planted_3sat`` draws random 3-literal clauses satisfied by a
  hidden assignment, then greedily appends clauses that each kill at least one
  surviving non-solution until the solution is unique.  The returned clause
  count is whatever uniqueness required, which for random clauses lands near
  5n or above.
* ``generate_planted_chain`` builds n nested clauses (lengths 1..n) whose
  violation sets partition the non-solutions, so every wrong assignment
  violates exactly one clause.  That concentrates the violation histogram at
  u=1, which maximizes the phase contrast per clause and keeps the clause
  count at n + extras.  Optional extra clauses are random 3-literal ones
  satisfied by the hidden assignment.
* ``generate_planted_block3sat`` is the 3-literal-only analogue: variables are
  grouped into blocks of three and each block contributes the seven clauses
  that forbid every wrong value pattern of the block.  A remainder block of
  one or two variables borrows variables from the first block.  Clause count
  is about 7n/3, far below what the random family needs for uniqueness.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .cnf import (
    Clause,
    CnfFormula,
    DEFAULT_GUARD_N,
    GuardError,
    InstanceError,
    Literal,
    violation_mask,
)


def _bit(assignment: int, position: int) -> int:
    return (assignment >> position) & 1


def _random_clause_satisfied_by(rng: np.random.Generator, n: int, planted: int) -> Clause:
    while True:
        positions = rng.choice(n, size=3, replace=False)
        negations = rng.integers(0, 2, size=3)
        clause = Clause(
            tuple(
                Literal(int(pos) + 1, bool(neg))
                for pos, neg in zip(positions, negations)
            )
        )
        if clause.satisfied_by(planted):
            return clause


def _separating_clause(rng: np.random.Generator, n: int, planted: int, survivor: int) -> Clause:
    """3-literal clause violated by ``survivor`` and satisfied by ``planted``."""
    differing = [k for k in range(n) if _bit(planted, k) != _bit(survivor, k)]
    anchor = int(rng.choice(differing))
    pool = [k for k in range(n) if k != anchor]
    others = rng.choice(pool, size=2, replace=False)
    literals = [Literal(anchor + 1, negated=not _bit(planted, anchor))]
    for k in others:
        literals.append(Literal(int(k) + 1, negated=bool(_bit(survivor, int(k)))))
    return Clause(tuple(literals))


def _check_bounds(n: int, minimum: int, guard_n: int, family: str) -> None:
    if n < minimum:
        raise InstanceError(f"{family} generation needs n >= {minimum}, got n={n}")
    if n > guard_n:
        raise GuardError(
            f"uniqueness check over 2**{n} assignments exceeds guard n <= {guard_n}"
        )


def generate_planted_3sat(
    n: int,
    m: int,
    seed: int,
    guard_n: int = DEFAULT_GUARD_N,
) -> CnfFormula:
    """Random planted 3SAT with exactly one satisfying assignment.

    ``m`` is the size of the initial random batch; the repair loop appends
    further clauses (each falsifying at least one surviving non-solution)
    until the planted assignment is the unique solution, so the returned
    formula typically has more than ``m`` clauses.
    """
    if m < 1:
        raise InstanceError(f"need m >= 1 initial clauses, got m={m}")
    _check_bounds(n, 3, guard_n, "planted 3SAT")
    rng = np.random.default_rng(seed)
    planted = int(rng.integers(0, 1 << n))
    clauses = [_random_clause_satisfied_by(rng, n, planted) for _ in range(m)]

    indices = np.arange(1 << n, dtype=np.int64)
    alive = np.ones(1 << n, dtype=bool)
    for clause in clauses:
        alive &= ~violation_mask(clause, indices)
    survivors = np.flatnonzero(alive)
    while survivors.size > 1:
        target = int(survivors[0]) if int(survivors[0]) != planted else int(survivors[1])
        clause = _separating_clause(rng, n, planted, target)
        clauses.append(clause)
        survivors = survivors[~violation_mask(clause, survivors)]
    return CnfFormula(n, tuple(clauses))


def generate_planted_chain(
    n: int,
    extras: int = 0,
    seed: int = 0,
    guard_n: int = DEFAULT_GUARD_N,
) -> CnfFormula:
    """Nested-clause instance whose non-solutions each violate exactly one clause.

    Clause j (over the first j variables in a random order) is violated
    precisely by the assignments that agree with the planted one on the first
    j-1 chain variables and differ on the j-th, so the violation sets
    partition the non-solutions.  ``extras`` appends random 3-literal clauses
    satisfied by the planted assignment, spreading the histogram to u >= 1.
    """
    if extras < 0:
        raise InstanceError("extras must be >= 0")
    _check_bounds(n, 3 if extras else 1, guard_n, "planted chain")
    rng = np.random.default_rng(seed)
    planted = int(rng.integers(0, 1 << n))
    order = [int(v) for v in rng.permutation(n)]

    clauses = []
    for j in range(n):
        literals = [
            Literal(order[t] + 1, negated=bool(_bit(planted, order[t])))
            for t in range(j)
        ]
        literals.append(Literal(order[j] + 1, negated=not _bit(planted, order[j])))
        clauses.append(Clause(tuple(literals)))
    for _ in range(extras):
        clauses.append(_random_clause_satisfied_by(rng, n, planted))
    return CnfFormula(n, tuple(clauses))


def generate_planted_block3sat(
    n: int,
    seed: int = 0,
    guard_n: int = DEFAULT_GUARD_N,
) -> CnfFormula:
    """Unique-solution 3SAT from per-block pattern exclusion.

    Variables are split into blocks of three (in a random order); each full
    block contributes seven clauses, one forbidding each value pattern that
    disagrees with the planted assignment on that block.  A remainder of one
    or two variables borrows enough variables from the first block to keep
    every clause at three literals.
    """
    _check_bounds(n, 4, guard_n, "planted block 3SAT")
    rng = np.random.default_rng(seed)
    planted = int(rng.integers(0, 1 << n))
    order = [int(v) for v in rng.permutation(n)]
    full, remainder = divmod(n, 3)

    def pattern_clause(variables: list[int], pattern: tuple[int, ...]) -> Clause:
        return Clause(
            tuple(Literal(v + 1, negated=bool(p)) for v, p in zip(variables, pattern))
        )

    clauses = []
    for b in range(full):
        trio = order[3 * b : 3 * b + 3]
        planted_pattern = tuple(_bit(planted, v) for v in trio)
        for pattern in product((0, 1), repeat=3):
            if pattern != planted_pattern:
                clauses.append(pattern_clause(trio, pattern))
    if remainder:
        tail = order[3 * full :]
        borrowed = order[: 3 - remainder]
        planted_tail = tuple(_bit(planted, v) for v in tail)
        anchored = tuple(_bit(planted, v) for v in borrowed)
        for pattern in product((0, 1), repeat=remainder):
            if pattern != planted_tail:
                clauses.append(pattern_clause(tail + borrowed, pattern + anchored))
    return CnfFormula(n, tuple(clauses))
