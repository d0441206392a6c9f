"""The delegation game: utilities, best responses, dynamics, regret checks.

Each agent's strategy is her own delegation profile. Her utility is the
preference-weighted account of where one unit of her inherent weight is
consumed under the penalized measure: U_i = w_i . V_eps(P, delta_i) with
delta_i the i-th unit source. Because total consumption of that unit is
always exactly 1, adding a constant to every preference entry shifts the
utility by the same constant and changes no decision.

Best responses only ever need the simplex vertices: along any line
segment inside an agent's own strategy simplex the utility is monotone
(a linear-fractional function of the step), so some vertex attains the
optimum and the set of optimal strategies is the convex hull of the
optimal vertices.
"""

from __future__ import annotations

import numpy as np

from .delegation import matrix_from_columns
from .errors import DuplicateOwner, DimensionMismatch, EmptyNeighborhood
from .measures import power_eps
from .types import (
    BestResponse,
    DelegationMatrix,
    DelegationProfile,
    PreferenceProfile,
    RegretReport,
    StrategySpace,
    Trajectory,
    TrajectoryStep,
)

TIE_TOL = 1e-10
DEFAULT_REGRET_TOL = 1e-6


def _as_matrix(P) -> DelegationMatrix:
    if isinstance(P, DelegationMatrix):
        return P
    return matrix_from_columns(P)


def _columns_for_agent(others, i: int) -> np.ndarray:
    """Writable column array with column i free to be overwritten.

    Accepts a full DelegationMatrix (column i is ignored) or the n-1
    profiles of the other agents.
    """
    if isinstance(others, DelegationMatrix):
        cols = others.entries.copy()
        if not 0 <= i < others.n:
            raise DimensionMismatch(f"agent index {i + 1} outside 1..{others.n}")
        return cols
    profiles = list(others)
    n = len(profiles) + 1
    if not 0 <= i < n:
        raise DimensionMismatch(f"agent index {i + 1} outside 1..{n}")
    cols = np.zeros((n, n))
    seen: set[int] = set()
    for prof in profiles:
        if not isinstance(prof, DelegationProfile):
            raise DimensionMismatch("others must be DelegationProfile values or a matrix")
        if prof.n != n:
            raise DimensionMismatch(
                f"profile of agent {prof.owner + 1} has length {prof.n}, expected {n}"
            )
        if prof.owner == i:
            raise DuplicateOwner(f"agent {i + 1} appears among the other players")
        if prof.owner in seen:
            raise DuplicateOwner(f"two profiles claim agent {prof.owner + 1}")
        seen.add(prof.owner)
        cols[:, prof.owner] = prof.weights
    cols[i, i] = 1.0  # placeholder, replaced before every evaluation
    return cols


def utility(P, i: int, w_i, epsilon: float) -> float:
    """Agent i's satisfaction with where her unit of weight is consumed."""
    P = _as_matrix(P)
    n = P.n
    w = np.asarray(w_i, dtype=float)
    if w.shape != (n + 1,):
        raise DimensionMismatch(f"preference row must have length {n + 1}")
    delta = np.zeros(n + 1)
    delta[i] = 1.0
    result = power_eps(P, delta, epsilon)
    return float(w @ result.power.v)


def best_response(i: int, others, w_i, epsilon: float,
                  space: StrategySpace | None = None) -> BestResponse:
    """Evaluate every allowed vertex strategy for agent i and keep the best.

    Returns all vertices within the tie tolerance of the maximum; their
    convex hull is the full best-response set.
    """
    cols = _columns_for_agent(others, i)
    n = cols.shape[0]
    allowed = space.allowed(i) if space is not None else frozenset(range(n))
    targets = sorted(allowed)
    if not targets:
        raise EmptyNeighborhood(f"agent {i + 1} has no allowed delegation targets")
    if any(j < 0 or j >= n for j in targets):
        raise DimensionMismatch(f"neighborhood of agent {i + 1} has indices outside 1..{n}")
    values: dict[int, float] = {}
    for j in targets:
        cols[:, i] = 0.0
        cols[j, i] = 1.0
        values[j] = utility(DelegationMatrix(cols), i, w_i, epsilon)
    best = max(values.values())
    vertices = tuple(j for j in targets if values[j] >= best - TIE_TOL)
    return BestResponse(agent=i, argmax_vertices=vertices, value=best, vertex_values=values)


def verify_equilibrium(P, W: PreferenceProfile, epsilon: float,
                       space: StrategySpace | None = None,
                       tol: float = DEFAULT_REGRET_TOL) -> RegretReport:
    """Per-agent regret against the vertex best response.

    max_regret <= tol certifies the profile as an approximate pure Nash
    equilibrium at that tolerance.
    """
    P = _as_matrix(P)
    n = P.n
    if W.n != n:
        raise DimensionMismatch(f"preference profile has n={W.n}, expected {n}")
    utilities = np.zeros(n)
    best_values = np.zeros(n)
    for i in range(n):
        utilities[i] = utility(P, i, W.row(i), epsilon)
        best_values[i] = best_response(i, P, W.row(i), epsilon, space).value
    return RegretReport(
        regrets=best_values - utilities,
        utilities=utilities,
        best_values=best_values,
    )


def br_dynamics(P0, W: PreferenceProfile, epsilon: float,
                space: StrategySpace | None = None,
                max_iters: int = 100, tol: float = DEFAULT_REGRET_TOL,
                seed: int = 0) -> Trajectory:
    """Sequential best-response dynamics with inertia.

    Agents are visited round-robin in a seed-fixed random order; an agent
    switches to her lowest-index best vertex only when that improves her
    utility by more than tol. A switch-free round means convergence; a
    repeated strategy profile means a cycle; otherwise the round cap ends
    the run. Existence of an equilibrium does not make this dynamics find
    one, so all three outcomes are legitimate results.
    """
    P0 = _as_matrix(P0)
    n = P0.n
    if W.n != n:
        raise DimensionMismatch(f"preference profile has n={W.n}, expected {n}")
    order = np.random.default_rng(seed).permutation(n)
    cols = P0.entries.copy()
    steps: list[TrajectoryStep] = []
    seen = {cols.round(12).tobytes(): 0}
    status = "MaxIters"
    visits = 0
    rounds = 0
    for _ in range(max_iters):
        rounds += 1
        switched = False
        for i in order:
            i = int(i)
            visits += 1
            current = utility(DelegationMatrix(cols), i, W.row(i), epsilon)
            response = best_response(i, DelegationMatrix(cols), W.row(i), epsilon, space)
            gain = response.value - current
            if gain > tol:
                j = response.argmax_vertices[0]
                cols[:, i] = 0.0
                cols[j, i] = 1.0
                switched = True
                steps.append(TrajectoryStep(
                    iteration=visits, agent=i,
                    new_profile=cols[:, i].copy(), regret=gain,
                ))
        if not switched:
            status = "Converged"
            break
        key = cols.round(12).tobytes()
        if key in seen:
            status = "CycleDetected"
            break
        seen[key] = rounds
    final = DelegationMatrix(cols)
    report = verify_equilibrium(final, W, epsilon, space, tol)
    return Trajectory(
        status=status,
        steps=tuple(steps),
        final=final,
        rounds=rounds,
        report=report,
    )
