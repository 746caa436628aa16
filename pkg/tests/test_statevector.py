import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import satsearch as ss

from conftest import formulas, random_state


def profile_for(formula):
    return ss.PhaseProfile.from_table(ss.build_unsat_table(formula))


class TestUniformState:
    def test_n1_amplitudes(self):
        state = ss.uniform_state(1)
        assert np.allclose(state, 0.5)
        assert state.shape == (4,)

    def test_n2_single_amplitude(self):
        state = ss.uniform_state(2)
        assert state[1 * 4 + 3] == pytest.approx(1 / math.sqrt(8))

    @pytest.mark.parametrize("n", [1, 3, 7, 12])
    def test_normalized(self, n):
        assert np.linalg.norm(ss.uniform_state(n)) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_n0(self):
        with pytest.raises(ValueError):
            ss.uniform_state(0)


class TestClausePhases:
    def test_single_clause_phase_inversion(self):
        # one clause (x1), n=1: assignment 0 violates it, phase exp(i*pi) = -1
        formula = ss.parse_dimacs("p cnf 1 1\n1 0\n")
        profile = profile_for(formula)
        state = np.zeros(4, dtype=complex)
        state[0] = 1.0  # (b=0, i=0)
        out = ss.apply_clause_phases(state, profile)
        assert out[0] == pytest.approx(-1.0, abs=1e-15)

    def test_solution_fiber_untouched_exactly(self, toy_formula, toy_table):
        profile = ss.PhaseProfile.from_table(toy_table)
        r = toy_table.unique_solution()
        for index in (r, 4 + r):
            state = np.zeros(8, dtype=complex)
            state[index] = 1.0
            out = ss.apply_clause_phases(state, profile)
            assert out[index] == 1.0 + 0.0j  # eigenvalue exactly 1 on the solution fiber

    @pytest.mark.parametrize("n,m_req,seed", [(4, 6, 0), (6, 10, 1)])
    def test_eigenbasis_phases(self, n, m_req, seed):
        formula = ss.generate_planted_3sat(n, m_req, seed)
        table = ss.build_unsat_table(formula)
        profile = ss.PhaseProfile.from_table(table)
        total = 1 << n
        for b in (0, 1):
            for i in range(total):
                state = np.zeros(2 * total, dtype=complex)
                state[b * total + i] = 1.0
                out = ss.apply_clause_phases(state, profile)
                sign = 1.0 if b == 0 else -1.0
                expected = np.exp(sign * 1j * np.pi * table.counts[i] / table.m)
                assert abs(out[b * total + i] - expected) < 1e-12

    def test_inverse_profile_roundtrip(self, toy_table):
        profile = ss.PhaseProfile.from_table(toy_table)
        state = random_state(8, seed=11)
        back = ss.apply_clause_phases(ss.apply_clause_phases(state, profile), profile.inverse())
        assert np.max(np.abs(back - state)) < 1e-12

    def test_dimension_mismatch(self, toy_table):
        profile = ss.PhaseProfile.from_table(toy_table)
        with pytest.raises(ValueError, match="amplitudes"):
            ss.apply_clause_phases(np.zeros(4, dtype=complex), profile)


class TestFactoredEquivalence:
    @given(formulas(max_n=6, max_m=8), st.integers(0, 10_000))
    @settings(max_examples=30, deadline=None)
    def test_matches_single_pass(self, formula, seed):
        profile = profile_for(formula)
        state = random_state(2 * formula.assignment_count, seed)
        fast = ss.apply_clause_phases(state, profile)
        factored = ss.apply_clause_phases_factored(state, formula)
        assert np.max(np.abs(fast - factored)) < 1e-10

    def test_clause_order_irrelevant(self):
        formula = ss.generate_planted_3sat(6, 10, seed=2)
        state = random_state(2 * formula.assignment_count, seed=3)
        shuffled = ss.CnfFormula(formula.n, tuple(reversed(formula.clauses)))
        a = ss.apply_clause_phases_factored(state, formula)
        b = ss.apply_clause_phases_factored(state, shuffled)
        assert np.max(np.abs(a - b)) < 1e-12

    def test_single_clause_case(self):
        formula = ss.parse_dimacs("p cnf 2 1\n1 -2 0\n")
        profile = profile_for(formula)
        state = random_state(8, seed=5)
        assert np.max(
            np.abs(
                ss.apply_clause_phases(state, profile)
                - ss.apply_clause_phases_factored(state, formula)
            )
        ) < 1e-14


class TestReflection:
    def test_uniform_negated(self):
        state = ss.uniform_state(3)
        assert np.max(np.abs(ss.reflect_about_uniform(state) + state)) < 1e-14

    def test_orthogonal_state_unchanged(self):
        # (|0> - |1>) x |i> / sqrt(2) has zero overlap with the uniform state
        state = np.zeros(16, dtype=complex)
        state[3] = 1 / math.sqrt(2)
        state[8 + 3] = -1 / math.sqrt(2)
        assert np.max(np.abs(ss.reflect_about_uniform(state) - state)) < 1e-15

    def test_self_inverse(self):
        state = random_state(32, seed=8)
        twice = ss.reflect_about_uniform(ss.reflect_about_uniform(state))
        assert np.max(np.abs(twice - state)) < 1e-12

    def test_negates_only_uniform_component(self):
        state = random_state(16, seed=9)
        out = ss.reflect_about_uniform(state)
        uniform = np.full(16, 1 / 4.0, dtype=complex)
        assert np.vdot(uniform, out) == pytest.approx(-np.vdot(uniform, state), abs=1e-12)
        # the difference is purely along the uniform direction
        diff = out - state
        assert np.max(np.abs(diff - diff[0])) < 1e-12


class TestSearchStep:
    def test_composition(self, toy_table):
        profile = ss.PhaseProfile.from_table(toy_table)
        state = random_state(8, seed=13)
        composed = ss.reflect_about_uniform(ss.apply_clause_phases(state, profile))
        assert np.max(np.abs(ss.search_step(state, profile) - composed)) < 1e-14

    def test_norm_preserved(self, toy_table):
        profile = ss.PhaseProfile.from_table(toy_table)
        state = random_state(8, seed=14)
        for _ in range(1000):
            state = ss.search_step(state, profile)
        assert abs(np.linalg.norm(state) - 1.0) < 1e-12

    def test_zero_violations_reduces_to_reflection(self):
        # all-zero violation counts: the phase pass is the identity
        profile = ss.PhaseProfile(m=1, u=np.zeros(8, dtype=np.int32))
        state = ss.uniform_state(3)
        assert np.max(np.abs(ss.search_step(state, profile) + state)) < 1e-14


class TestGroverStep:
    def test_n4_single_step_exact(self):
        state = np.full(4, 0.5, dtype=complex)
        out = ss.grover_step(state, 2)
        assert abs(out[2]) ** 2 == pytest.approx(1.0, abs=1e-12)

    def test_norm_preserved(self):
        state = np.full(64, 1 / 8.0, dtype=complex)
        for _ in range(100):
            state = ss.grover_step(state, 17)
        assert abs(np.linalg.norm(state) - 1.0) < 1e-12


class TestMeasureDistribution:
    def test_amplified_state(self):
        state = np.zeros(8, dtype=complex)
        state[2] = state[4 + 2] = 1 / math.sqrt(2)
        marginal, overlap, _ = ss.measure_distribution(state, 2)
        assert marginal == pytest.approx(1.0)
        assert overlap == pytest.approx(1.0)

    def test_uniform_state(self):
        marginal, overlap, _ = ss.measure_distribution(ss.uniform_state(3), 5)
        assert marginal == pytest.approx(1 / 8)
        assert overlap == pytest.approx(1 / 8)

    @given(st.integers(0, 10_000))
    @settings(max_examples=40)
    def test_marginal_dominates_overlap(self, seed):
        state = random_state(16, seed)
        marginal, overlap, _ = ss.measure_distribution(state, 3)
        assert marginal >= overlap - 1e-15

    def test_full_probabilities(self):
        state = ss.uniform_state(2)
        _, _, probs = ss.measure_distribution(state, 0, include_full=True)
        assert probs.shape == (8,)
        assert probs.sum() == pytest.approx(1.0)

    def test_bad_solution_index(self):
        with pytest.raises(ValueError):
            ss.measure_distribution(ss.uniform_state(2), 4)


class TestSnapshot:
    def test_threshold_filters(self):
        state = np.zeros(8, dtype=complex)
        state[1] = 0.9
        state[5] = 1e-8
        triples = ss.state_snapshot(state, threshold=1e-6)
        assert triples == [(1, 0.9, 0.0)]
