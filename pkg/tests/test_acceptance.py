"""Acceptance gate: one test per shipped guarantee, at its stated tolerance.

The terminal summary (see conftest) prints one PASS/FAIL line per
criterion. Tolerances and trial counts here are contractual; do not
loosen them to make a failure go away.
"""

import time

import numpy as np
import pytest

from liquidpower import (
    delegation_reduction,
    enumerate_pure_support,
    classic_power,
    mixed_strategy_power,
    particle_estimate,
    power_eps,
    power_exact,
    run_suite,
    standard_generalization,
)
from liquidpower.checks import random_matrix, random_weights


def test_criterion_01(chain5, chain5_split, chain5_cycle):
    """Chain worked example: exact weights, split variant, cycle loss."""
    base = power_exact(chain5).power
    assert np.allclose(base.v, [0, 0, 0, 4, 1, 0], atol=1e-12)
    split = power_exact(chain5_split).power
    assert np.allclose(split.v, [0, 0, 0, 2, 3, 0], atol=1e-12)
    cycle = power_exact(chain5_cycle).power
    assert np.allclose(cycle.v, [0, 0, 0, 2, 0, 3], atol=1e-12)
    assert cycle.loss == pytest.approx(3.0, abs=1e-12)

    power_exact(chain5)  # warm path before timing
    best = min(
        (lambda t0: (power_exact(chain5), time.perf_counter() - t0)[1])(time.perf_counter())
        for _ in range(5)
    )
    assert best < 1e-3, f"exact solve took {best * 1e3:.3f} ms"


def test_criterion_02(triangle_left, triangle_right):
    """Truncated iterative measure differs across the pair; exact does not."""
    vl, _ = standard_generalization(triangle_left, k_max=3)
    vr, _ = standard_generalization(triangle_right, k_max=3)
    assert np.allclose(vl, [9 / 16, 0, 0], atol=1e-9)
    assert np.allclose(vr, [13 / 16, 0, 0], atol=1e-9)

    el = power_exact(triangle_left).power.v
    er = power_exact(triangle_right).power.v
    assert np.allclose(el, [3, 0, 0, 0], atol=1e-12)
    assert np.allclose(er, [3, 0, 0, 0], atol=1e-12)
    assert np.abs(el - er).max() <= 1e-12


def test_criterion_03(star4_original, star4_reduced):
    """Mixed-strategy expectation on the four-agent pair."""
    assert np.allclose(mixed_strategy_power(star4_original),
                       [2, 0, 0, 1.5], atol=1e-9)
    assert np.allclose(mixed_strategy_power(star4_reduced),
                       [7 / 3, 0, 0, 5 / 3], atol=1e-9)


def test_criterion_04(star4_original):
    """Replication transform lands on the reduced profile exactly."""
    reduced, spec = delegation_reduction(star4_original, 2, {1})
    assert reduced.entries[:, 2].tolist() == [2 / 3, 0.0, 0.0, 1 / 3]
    assert spec.x_star_k.weights.tolist() == [2 / 3, 0.0, 0.0, 1 / 3]


def test_criterion_05():
    """Conservation: total power equals total inherent weight."""
    start = time.perf_counter()
    report = run_suite("conservation")
    elapsed = time.perf_counter() - start
    assert report.trials == 300
    assert report.passed, [f.detail for f in report.failures]
    assert report.notes["max_conservation_gap"] <= 1e-9
    assert elapsed < 5.0, f"conservation suite took {elapsed:.2f} s"


def test_criterion_06():
    """Consistency: retained-share floor and zero-retention zero power."""
    report = run_suite("consistency")
    assert report.trials == 300
    assert report.passed, [f.detail for f in report.failures]


def test_criterion_07():
    """Generalization: exact equals classic on 0/1-diagonal matrices."""
    report = run_suite("generalization")
    assert report.trials == 200
    assert report.passed, [f.detail for f in report.failures]
    assert report.notes["max_generalization_gap"] <= 1e-9


def test_criterion_08():
    """Delegation invariance plus the penalized deviation bound."""
    invariance = run_suite("delegation")
    assert invariance.trials == 200
    assert invariance.passed, [f.detail for f in invariance.failures]
    assert invariance.notes["max_reduction_gap"] <= 1e-8

    bound = run_suite("delta-delegation")
    assert bound.trials == 200
    assert bound.passed, [f.detail for f in bound.failures]


def test_criterion_09():
    """Penalized measure walks down to the exact one along the ladder."""
    report = run_suite("limit")
    assert report.trials == 100
    assert report.passed, [f.detail for f in report.failures]
    assert report.notes["max_final_deviation"] < 1e-4


def test_criterion_10():
    """Game guarantees: vertex optimality, ties, dynamics, regrets."""
    start = time.perf_counter()
    report = run_suite("game-vertex")
    elapsed = time.perf_counter() - start
    assert report.trials == 100
    assert report.passed, [f.detail for f in report.failures]
    assert elapsed < 60.0, f"game suite took {elapsed:.2f} s"


def test_criterion_11():
    """Stochastic and enumerative oracles agree with the solver."""
    kinds = ("dense", "sparse", "candidates", "cyclic", "acyclic", "bclass", "pure")
    worst_z = 0.0
    for i in range(20):
        rng = np.random.default_rng([911, i])
        n = 1 + i % 5
        matrix = random_matrix(rng, n, kinds[i % len(kinds)])
        f = random_weights(rng, n)
        eps = (0.3, 0.1, 0.05)[i % 3]
        t_max = 1500.0 if n <= 3 else 2500.0
        est = particle_estimate(matrix, f.f, eps, dt=0.01, t_max=t_max,
                                seed=5000 + i)
        reference = power_eps(matrix, f, eps).power.v
        safe_se = np.where(est.std_error > 0, est.std_error, np.inf)
        z = float(np.abs((est.rates - reference) / safe_se).max())
        worst_z = max(worst_z, z)
        assert z <= 3.0, f"instance {i}: particle estimate off by {z:.2f} sigma"

    for seed in range(5):
        rng = np.random.default_rng([912, seed])
        matrix = random_matrix(rng, 1 + seed, kind="sparse")
        outcomes = enumerate_pure_support(matrix)
        total_p = sum(p for _, p in outcomes)
        assert abs(total_p - 1.0) <= 1e-9
        expectation = np.zeros(matrix.n)
        for A, p in outcomes:
            expectation = expectation + p * classic_power(A)
        assert np.array_equal(expectation, mixed_strategy_power(matrix))
