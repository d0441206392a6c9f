"""Delegation game: utilities, vertex best responses, dynamics, regret."""

import numpy as np
import pytest

from liquidpower import (
    DelegationProfile,
    DimensionMismatch,
    DuplicateOwner,
    EmptyNeighborhood,
    PreferenceProfile,
    StrategySpace,
    best_response,
    br_dynamics,
    matrix_from_rows,
    utility,
    verify_equilibrium,
)

CHAIN = matrix_from_rows(np.array([[0.0, 1.0], [0.0, 1.0]]))
KEEPERS = matrix_from_rows(np.array([[1.0, 0.0], [0.0, 1.0]]))


class TestUtility:
    def test_chain_closed_form(self):
        # one unit from agent 0 reaches agent 1 after a single penalized hop
        for eps in (0.1, 0.4):
            b, c = 3.0, 7.0
            expected = b * (1 - eps) ** 2 + c * eps * (2 - eps)
            assert utility(CHAIN, 0, [0.0, b, c], eps) == pytest.approx(expected, abs=1e-12)

    def test_shift_invariance(self):
        base = utility(CHAIN, 0, [1.0, 2.0, 3.0], 0.2)
        shifted = utility(CHAIN, 0, [6.0, 7.0, 8.0], 0.2)
        assert shifted == pytest.approx(base + 5.0, abs=1e-12)

    def test_preference_length_checked(self):
        with pytest.raises(DimensionMismatch):
            utility(CHAIN, 0, [1.0, 2.0], 0.2)


class TestBestResponse:
    def test_prefers_self_when_keeping_pays(self):
        br = best_response(0, KEEPERS, [1.0, 0.0, 0.0], 0.1)
        assert br.argmax_vertices == (0,)
        assert br.value == pytest.approx(0.9, abs=1e-12)

    def test_prefers_delegation_when_target_pays(self):
        br = best_response(0, KEEPERS, [0.0, 1.0, 0.0], 0.1)
        assert br.argmax_vertices == (1,)
        assert br.value == pytest.approx(0.81, abs=1e-12)

    def test_indifference_ties_all_vertices(self):
        # constant preferences make every strategy worth exactly 1
        br = best_response(0, KEEPERS, [1.0, 1.0, 1.0], 0.3)
        assert br.argmax_vertices == (0, 1)
        assert br.value == pytest.approx(1.0, abs=1e-12)

    def test_restricted_space(self):
        # keeping would pay 0.9 but the neighborhood forbids it
        space = StrategySpace((frozenset({1}), frozenset({0, 1})))
        br = best_response(0, KEEPERS, [1.0, 0.5, 0.0], 0.1, space=space)
        assert br.argmax_vertices == (1,)
        assert br.value == pytest.approx(0.5 * 0.81, abs=1e-12)
        assert set(br.vertex_values) == {1}

    def test_empty_neighborhood(self):
        space = StrategySpace((frozenset(), frozenset({0, 1})))
        with pytest.raises(EmptyNeighborhood):
            best_response(0, KEEPERS, [1.0, 0.0, 0.0], 0.1, space=space)

    def test_profile_list_matches_matrix_form(self):
        others = [DelegationProfile(np.array([0.0, 1.0]), owner=1)]
        a = best_response(0, others, [0.5, 0.25, 0.0], 0.2)
        b = best_response(0, KEEPERS, [0.5, 0.25, 0.0], 0.2)
        assert a.argmax_vertices == b.argmax_vertices
        assert a.value == b.value

    def test_profile_list_rejects_owner_collision(self):
        mine = [DelegationProfile(np.array([1.0, 0.0]), owner=0)]
        with pytest.raises(DuplicateOwner):
            best_response(0, mine, [1.0, 0.0, 0.0], 0.2)
        twice = [
            DelegationProfile(np.array([0.0, 1.0, 0.0]), owner=1),
            DelegationProfile(np.array([0.0, 1.0, 0.0]), owner=1),
        ]
        with pytest.raises(DuplicateOwner):
            best_response(0, twice, [1.0, 0.0, 0.0, 0.0], 0.2)


class TestVerifyEquilibrium:
    def test_mutual_keeping_is_nash_for_self_lovers(self):
        W = PreferenceProfile(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
        report = verify_equilibrium(KEEPERS, W, 0.1)
        assert report.max_regret <= 1e-12
        assert report.is_epsilon_nash()

    def test_regret_measures_forgone_gain(self):
        # agent 0 delegates although she wants her own consumption
        W = PreferenceProfile(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
        report = verify_equilibrium(CHAIN, W, 0.1)
        assert report.regrets[0] == pytest.approx(0.9, abs=1e-12)
        assert report.regrets[1] == pytest.approx(0.0, abs=1e-12)
        assert not report.is_epsilon_nash()
        assert report.best_values[0] == pytest.approx(0.9, abs=1e-12)
        assert report.utilities[0] == pytest.approx(0.0, abs=1e-12)

    def test_dissipation_seekers_on_a_swap_cycle(self):
        # both agents want their vote destroyed; the mutual swap does that
        # perfectly, while keeping would leak only epsilon to the sink
        swap = matrix_from_rows(np.array([[0.0, 1.0], [1.0, 0.0]]))
        W = PreferenceProfile(np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 1.0]]))
        report = verify_equilibrium(swap, W, 0.1)
        assert report.utilities == pytest.approx([1.0, 1.0], abs=1e-12)
        assert report.max_regret <= 1e-12
        assert report.is_epsilon_nash()

    def test_dimension_guard(self):
        W = PreferenceProfile(np.zeros((3, 4)))
        with pytest.raises(DimensionMismatch):
            verify_equilibrium(KEEPERS, W, 0.1)


class TestDynamics:
    def test_self_lovers_converge_from_anywhere(self):
        W = PreferenceProfile(np.array([[5.0, 0.0, 0.0], [0.0, 5.0, 0.0]]))
        traj = br_dynamics(CHAIN, W, 0.2, max_iters=50, seed=3)
        assert traj.status == "Converged"
        assert traj.rounds <= 2
        assert np.array_equal(traj.final.entries, np.eye(2))
        assert traj.report.max_regret <= 1e-6

    def test_indifferent_agents_never_switch(self):
        W = PreferenceProfile(np.ones((2, 3)))
        traj = br_dynamics(CHAIN, W, 0.2, max_iters=50)
        assert traj.status == "Converged"
        assert traj.steps == ()
        assert traj.rounds == 1
        assert np.array_equal(traj.final.entries, CHAIN.entries)

    def test_chasing_preferences_cycle(self):
        # 0 wants to follow 1's consumption, 1 wants to dodge it
        W = PreferenceProfile(np.array([[1.0, 2.0, 0.0], [0.0, 0.5, 1.0]]))
        traj = br_dynamics(KEEPERS, W, 0.2, max_iters=20, seed=0)
        assert traj.status == "CycleDetected"
        assert traj.rounds == 2
        assert len(traj.steps) == 4

    def test_round_cap(self):
        W = PreferenceProfile(np.array([[1.0, 2.0, 0.0], [0.0, 0.5, 1.0]]))
        traj = br_dynamics(KEEPERS, W, 0.2, max_iters=1, seed=0)
        assert traj.status == "MaxIters"
        assert traj.rounds == 1

    def test_same_seed_same_trajectory(self):
        W = PreferenceProfile(np.array([[1.0, 2.0, 0.0], [0.0, 0.5, 1.0]]))
        a = br_dynamics(KEEPERS, W, 0.2, max_iters=20, seed=11)
        b = br_dynamics(KEEPERS, W, 0.2, max_iters=20, seed=11)
        assert a.status == b.status
        assert len(a.steps) == len(b.steps)
        for sa, sb in zip(a.steps, b.steps):
            assert sa.agent == sb.agent and sa.iteration == sb.iteration
            assert np.array_equal(sa.new_profile, sb.new_profile)
        assert np.array_equal(a.final.entries, b.final.entries)

    def test_steps_record_improvements(self):
        W = PreferenceProfile(np.array([[5.0, 0.0, 0.0], [0.0, 5.0, 0.0]]))
        traj = br_dynamics(CHAIN, W, 0.2, max_iters=50)
        assert len(traj.steps) == 1
        step = traj.steps[0]
        assert step.agent == 0
        assert step.regret > 1e-6
        assert step.new_profile.tolist() == [1.0, 0.0]
