"""Independent reference implementations used to validate the measures.

Nothing here is a production path. The particle simulation estimates the
penalized measure from the microscopic process it models; the grid search
brute-forces best responses over the simplex; the support enumeration
spells out the pure-outcome distribution behind the mixed-strategy
measure. Each is deliberately written from the definitions rather than
reusing the solver shortcuts it is meant to check.
"""

from __future__ import annotations

import itertools

import numpy as np

from .delegation import augment, matrix_from_columns
from .errors import GridTooLarge, ParameterOutOfRange, SupportTooLarge
from .game import _columns_for_agent, utility
from .measures import SUPPORT_GUARD
from .types import DelegationMatrix, ParticleEstimate, as_weight_source

GRID_STEPS = (0.05, 0.1)
GRID_MAX_AGENTS = 5


def _as_matrix(P) -> DelegationMatrix:
    if isinstance(P, DelegationMatrix):
        return P
    return matrix_from_columns(P)


def particle_estimate(P, f, epsilon: float, dt: float = 0.01,
                      t_max: float = 2000.0, seed: int = 0) -> ParticleEstimate:
    """Simulate the particle process and report consumption rates.

    Per step of length dt: agent j gains a particle with probability
    dt * f_j; each particle at j independently jumps to i != j with
    probability dt * Peps[i, j], is consumed with probability
    dt * Peps[j, j], and stays otherwise. The sink agent consumes at
    rate 1, so dissipated weight shows up as its consumption. Rates are
    averaged after discarding the first half of the horizon; standard
    errors come from batch means, which tolerate the autocorrelation of
    the particle counts.
    """
    P = _as_matrix(P)
    n = P.n
    if not 0.0 < dt <= 0.01:
        raise ParameterOutOfRange(f"dt must lie in (0, 0.01], got {dt}")
    if t_max <= 0:
        raise ParameterOutOfRange(f"t_max must be positive, got {t_max}")
    if not 0.0 < epsilon < 1.0:
        raise ParameterOutOfRange(f"epsilon must lie strictly in (0, 1), got {epsilon}")
    fvec = as_weight_source(f, n).f
    if fvec.min() < 0:
        raise ParameterOutOfRange("f must be nonnegative")
    arrival_prob = dt * fvec
    if arrival_prob.max() > 1.0:
        raise ParameterOutOfRange("dt * f exceeds 1; not a probability")

    aug = augment(P, epsilon).entries
    m = n + 1
    # outcome row for a particle at j: destinations 0..n (entry j means
    # consumed), last entry stays put
    pmat = np.zeros((m, m + 1))
    pmat[:, :m] = dt * aug.T
    pmat[:, m] = 1.0 - dt
    steps = int(round(t_max / dt))
    burn = steps // 2
    post = steps - burn
    n_batches = min(30, post)
    batch_len = post // n_batches
    used = n_batches * batch_len

    rng = np.random.default_rng(seed)
    counts = np.zeros(m, dtype=np.int64)
    batch_consumed = np.zeros((n_batches, m))
    recorded = 0
    for step in range(steps):
        arrivals = rng.random(m) < arrival_prob
        counts = counts + arrivals
        moves = rng.multinomial(counts, pmat)
        consumed = np.diagonal(moves).copy()
        counts = moves[:, :m].sum(axis=0) - consumed + moves[:, m]
        if step >= burn and recorded < used:
            batch_consumed[recorded // batch_len] += consumed
            recorded += 1

    rates = batch_consumed.sum(axis=0) / (used * dt)
    batch_rates = batch_consumed / (batch_len * dt)
    if n_batches > 1:
        std_error = batch_rates.std(axis=0, ddof=1) / np.sqrt(n_batches)
    else:
        std_error = np.zeros(m)
    return ParticleEstimate(rates=rates, std_error=std_error, steps=steps, seed=seed)


def _compositions(total: int, parts: int):
    """All nonnegative integer vectors of the given length summing to total."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head, *rest)


def grid_best_response(i: int, others, w_i, epsilon: float,
                       step: float = 0.05) -> tuple[np.ndarray, float]:
    """Exhaustive utility search over a simplex grid for agent i.

    Validates the vertex best-response shortcut: the grid optimum can
    never beat the best vertex by more than discretization noise.
    """
    if not any(abs(step - s) <= 1e-12 for s in GRID_STEPS):
        raise ParameterOutOfRange(f"grid step must be one of {GRID_STEPS}, got {step}")
    if isinstance(others, DelegationMatrix):
        cols0 = others.entries
    elif isinstance(others, np.ndarray):
        cols0 = _as_matrix(others).entries
    else:
        cols0 = _columns_for_agent(others, i)
    n = cols0.shape[0]
    if n > GRID_MAX_AGENTS:
        raise GridTooLarge(f"grid search supports at most {GRID_MAX_AGENTS} agents, got {n}")
    m = round(1.0 / step)
    cols = cols0.copy()
    best_value = -np.inf
    best_profile = None
    for combo in _compositions(m, n):
        profile = np.asarray(combo, dtype=float) / m
        cols[:, i] = profile
        value = utility(DelegationMatrix(cols), i, w_i, epsilon)
        if value > best_value:
            best_value = value
            best_profile = profile
    return best_profile, float(best_value)


def enumerate_pure_support(P) -> list[tuple[np.ndarray, float]]:
    """Every pure delegation outcome in the support of P with its probability.

    Agent j picks one target from the support of her column, independently,
    with her shares as probabilities. Probabilities sum to 1.
    """
    P = _as_matrix(P)
    n = P.n
    supports = [np.nonzero(P.entries[:, j] > 0)[0] for j in range(n)]
    count = 1
    for s in supports:
        count *= len(s)
        if count > SUPPORT_GUARD:
            raise SupportTooLarge(f"pure-outcome count exceeds the {SUPPORT_GUARD} guard")
    outcomes: list[tuple[np.ndarray, float]] = []
    cols = np.arange(n)
    for combo in itertools.product(*supports):
        p = 1.0
        for j, t in enumerate(combo):
            p *= P.entries[t, j]
        A = np.zeros((n, n))
        A[combo, cols] = 1.0
        outcomes.append((A, p))
    return outcomes
