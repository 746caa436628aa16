import numpy as np
import pytest
from hypothesis import strategies as st

import satsearch as ss

# {(x1), (x2)} over two variables: histogram [1, 2, 1], unique solution 3.
TOY_DIMACS = "p cnf 2 2\n1 0\n2 0\n"


@pytest.fixture(scope="session")
def toy_formula():
    return ss.parse_dimacs(TOY_DIMACS)


@pytest.fixture(scope="session")
def toy_table(toy_formula):
    return ss.build_unsat_table(toy_formula)


@pytest.fixture(scope="session")
def planted14():
    """Random planted 3SAT instance at n=14 with table and summary."""
    formula = ss.generate_planted_3sat(14, 16, seed=1)
    table = ss.build_unsat_table(formula)
    return formula, table, ss.spectral_summary(table)


def random_state(dim: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    state = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return state / np.linalg.norm(state)


def random_3sat(n: int, m: int, seed: int) -> ss.CnfFormula:
    """Plain random 3SAT (distinct variables per clause, no planting)."""
    rng = np.random.default_rng(seed)
    clauses = []
    for _ in range(m):
        positions = rng.choice(n, size=3, replace=False)
        negations = rng.integers(0, 2, size=3)
        clauses.append(
            ss.Clause(
                tuple(
                    ss.Literal(int(p) + 1, bool(g))
                    for p, g in zip(positions, negations)
                )
            )
        )
    return ss.CnfFormula(n, tuple(clauses))


@st.composite
def formulas(draw, max_n: int = 6, max_m: int = 8):
    n = draw(st.integers(2, max_n))
    m = draw(st.integers(1, max_m))
    clauses = []
    for _ in range(m):
        width = draw(st.integers(1, min(3, n)))
        variables = draw(st.permutations(range(1, n + 1)))[:width]
        negations = draw(st.lists(st.booleans(), min_size=width, max_size=width))
        clauses.append(
            ss.Clause(
                tuple(ss.Literal(v, g) for v, g in zip(variables, negations))
            )
        )
    return ss.CnfFormula(n, tuple(clauses))


@st.composite
def formula_with_assignment(draw):
    formula = draw(formulas())
    assignment = draw(st.integers(0, formula.assignment_count - 1))
    return formula, assignment
