"""Voting-power measures for fractional delegation.

The production path is power_exact: restrict the zero-diagonal matrix to
the agents whose weight actually resolves (N1 and N2), solve one small
well-conditioned linear system, and assign the trapped remainder to the
loss entry. power_eps solves the penalized augmented system instead and
converges to power_exact as epsilon drops to 0; it is the object the
delegation game plays with. The remaining measures (series form, classic
0/1 measure, its naive generalization, and the mixed-strategy expectation)
exist for study and for demonstrating where naive generalizations break.

Conventions: P is column-stochastic with P[i, j] the share j sends to i;
f is the inherent-weight vector of length n+1 defaulting to (1, ..., 1, 0);
all returned power vectors have n+1 entries with the loss last.
"""

from __future__ import annotations

import itertools

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .delegation import ZERO_TOL, augment, matrix_from_columns, partition_agents
from .errors import (
    DegenerateDenominator,
    DimensionMismatch,
    EmptySet,
    NoConvergence,
    NotInClassB,
    ParameterOutOfRange,
    PreconditionViolated,
    SolverFailure,
    SupportTooLarge,
)
from .types import (
    DelegationMatrix,
    DelegationProfile,
    MeasureResult,
    Method,
    PowerVector,
    ReductionSpec,
    as_weight_source,
)

RESIDUAL_TOL = 1e-9
SUPPORT_GUARD = 10**7


def _as_matrix(P) -> DelegationMatrix:
    if isinstance(P, DelegationMatrix):
        return P
    return matrix_from_columns(P)


def _solve_refined(A: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float]:
    """Dense LU solve with one step of iterative refinement.

    Returns the solution and the max-norm residual of A x - b.
    """
    try:
        factors = lu_factor(A)
        x = lu_solve(factors, b)
        r = b - A @ x
        x = x + lu_solve(factors, r)
    except (ValueError, np.linalg.LinAlgError) as exc:
        raise SolverFailure(f"linear solve failed: {exc}") from exc
    residual = float(np.abs(b - A @ x).max())
    return x, residual


def power_eps(P, f, epsilon: float) -> MeasureResult:
    """Penalized measure: one linear solve on the augmented system.

    Solves (I - Ptilde_eps) u = f where Ptilde_eps is the augmented matrix
    with its diagonal zeroed, then reads off v_i = P_eps[i, i] * u_i for
    real agents and v_{n+1} = u_{n+1} for the sink.
    """
    P = _as_matrix(P)
    aug = augment(P, epsilon)
    src = as_weight_source(f, P.n)
    m = P.n + 1
    tilde = aug.entries.copy()
    np.fill_diagonal(tilde, 0.0)
    A = np.eye(m) - tilde
    u, residual = _solve_refined(A, src.f)
    if not residual <= RESIDUAL_TOL:
        raise SolverFailure(
            f"augmented solve residual {residual:.3g} exceeds {RESIDUAL_TOL} (epsilon={epsilon})"
        )
    v = np.diagonal(aug.entries) * u
    return MeasureResult(
        power=PowerVector(v),
        method=Method("epsilon", epsilon=float(epsilon)),
        residual=residual,
    )


def power_exact(P, f=None) -> MeasureResult:
    """Exact measure, the epsilon -> 0 limit, via the restricted solve.

    Restricts the zero-diagonal system to N1 and N2, solves it, scales by
    the retained shares, and books everything else as loss so that total
    power equals total inherent weight. Agents in N3 get exactly zero.
    """
    P = _as_matrix(P)
    src = as_weight_source(f, P.n)
    n = P.n
    part = partition_agents(P)
    keep = sorted(part.n1 | part.n2)
    out = np.zeros(n + 1)
    residual = 0.0
    if keep:
        sub = P.entries[np.ix_(keep, keep)].copy()
        np.fill_diagonal(sub, 0.0)
        A = np.eye(len(keep)) - sub
        u, residual = _solve_refined(A, src.f[keep])
        if not residual <= RESIDUAL_TOL:
            raise SolverFailure(
                f"restricted solve residual {residual:.3g} exceeds {RESIDUAL_TOL}; "
                "partition classification is suspect"
            )
        out[keep] = P.entries[keep, keep] * u
    out[n] = src.total - out[:n].sum()
    return MeasureResult(power=PowerVector(out), method=Method("exact"), residual=residual)


def power_series(P, f=None, tol: float = 1e-10, k_max: int = 10000) -> MeasureResult:
    """Exact measure as a truncated path series instead of a solve.

    Accumulates partial sums of matrix-power terms masked by the retained
    shares. Stops once the in-flight weight that can still reach a
    self-retainer drops below tol: that weight bounds every future
    addition to any entry, so small term-to-term changes alone (which a
    zero-weight relay produces spuriously) are never trusted. Weight
    circulating where no self-retainer is reachable is excluded, since it
    can only end up as loss. The loss entry is completed by conservation.
    """
    P = _as_matrix(P)
    if tol <= 0:
        raise ParameterOutOfRange(f"series tolerance must be positive, got {tol}")
    if k_max < 1:
        raise ParameterOutOfRange(f"series cap must be at least 1, got {k_max}")
    src = as_weight_source(f, P.n)
    n = P.n
    d = np.diagonal(P.entries).copy()
    part = partition_agents(P)
    keep = sorted(part.n1 | part.n2)
    tilde = P.entries.copy()
    np.fill_diagonal(tilde, 0.0)
    term = src.f[:n].copy()
    total = term.copy()
    in_flight = float(term[keep].sum())
    k_used = 0
    while in_flight >= tol:
        if k_used >= k_max:
            raise NoConvergence(
                f"series did not settle after {k_max} terms "
                f"(in-flight weight {in_flight:.3g})"
            )
        term = tilde @ term
        total += term
        in_flight = float(term[keep].sum())
        k_used += 1
    v = d * total
    out = np.zeros(n + 1)
    out[:n] = v
    out[n] = src.total - v.sum()
    return MeasureResult(
        power=PowerVector(out),
        method=Method("series", k_used=k_used),
        residual=in_flight,
    )


def classic_power(P) -> np.ndarray:
    """Classic measure for matrices whose diagonal is 0/1.

    Computes the limit of (P^k 1) masked by the diagonal. Repeated
    squaring drives k high enough that even slowly draining instances
    settle; for 0/1 matrices the limit is hit exactly once all acyclic
    weight has reached a candidate.
    """
    P = _as_matrix(P)
    d = np.diagonal(P.entries)
    off = np.minimum(np.abs(d), np.abs(d - 1.0))
    if off.max() > ZERO_TOL:
        bad = int(off.argmax())
        raise NotInClassB(
            f"diagonal entry of agent {bad + 1} is {d[bad]:.6g}, must be 0 or 1"
        )
    mask = d > 0.5
    ones = np.ones(P.n)
    Q = P.entries.copy()
    v = np.where(mask, Q @ ones, 0.0)
    for _ in range(60):
        Q = Q @ Q
        v_next = np.where(mask, Q @ ones, 0.0)
        done = np.abs(v_next - v).max() <= 1e-13
        v = v_next
        if done:
            break
    return v


def standard_iteration(P, k_max: int = 1000, tol: float = 1e-9):
    """Masked power iteration behind the naive generalization.

    Returns (vector, converged, k_used). The stopping rule demands two
    consecutive sub-tol changes because a single step can stall
    coincidentally while the sequence is still moving.
    """
    P = _as_matrix(P)
    if k_max < 1:
        raise ParameterOutOfRange(f"iteration cap must be at least 1, got {k_max}")
    if tol <= 0:
        raise ParameterOutOfRange(f"tolerance must be positive, got {tol}")
    d = np.diagonal(P.entries)
    w = np.ones(P.n)
    v = d * w
    streak = 0
    k = 0
    for k in range(1, k_max + 1):
        w = P.entries @ w
        v_next = d * w
        change = float(np.abs(v_next - v).max())
        v = v_next
        if change < tol:
            streak += 1
            if streak >= 2:
                return v, True, k
        else:
            streak = 0
    return v, False, k


def standard_generalization(P, k_max: int = 1000, tol: float = 1e-9):
    """Classic formula applied verbatim to a fractional matrix.

    Returns (vector, converged). This measure is broken by design: it is
    kept as the counterexample showing that masked matrix powers do not
    generalize, so non-convergence is reported rather than raised.
    """
    v, converged, _ = standard_iteration(P, k_max=k_max, tol=tol)
    return v, converged


def _support_sets(P: DelegationMatrix) -> list[np.ndarray]:
    return [np.nonzero(P.entries[:, j] > 0)[0] for j in range(P.n)]


def _guard_support(supports) -> int:
    count = 1
    for s in supports:
        count *= len(s)
        if count > SUPPORT_GUARD:
            raise SupportTooLarge(
                f"pure-outcome count exceeds the {SUPPORT_GUARD} guard"
            )
    return count


def mixed_strategy_power(P) -> np.ndarray:
    """Expected classic power over independently sampled pure delegations.

    Each agent picks one target from her support with her own shares as
    probabilities; the result averages the classic measure over all such
    pure matrices. Another known-broken generalization, kept as a
    counterexample.
    """
    P = _as_matrix(P)
    n = P.n
    supports = _support_sets(P)
    _guard_support(supports)
    acc = np.zeros(n)
    cols = np.arange(n)
    for combo in itertools.product(*supports):
        p = 1.0
        for j, t in enumerate(combo):
            p *= P.entries[t, j]
        A = np.zeros((n, n))
        A[combo, cols] = 1.0
        acc = acc + p * classic_power(DelegationMatrix(A))
    return acc


def _reduction_preconditions(P: DelegationMatrix, k: int, D) -> tuple[frozenset[int], float]:
    """Validate the replication preconditions; return (D, denominator)."""
    n = P.n
    if not 0 <= k < n:
        raise DimensionMismatch(f"agent index {k + 1} outside 1..{n}")
    members = frozenset(int(i) for i in D)
    if not members:
        raise EmptySet("proxy set is empty")
    if any(i < 0 or i >= n for i in members):
        raise DimensionMismatch(f"proxy set has indices outside 1..{n}")
    if k in members:
        raise PreconditionViolated(f"agent {k + 1} cannot appear in her own proxy set")
    entries = P.entries
    for i in sorted(members):
        if entries[i, i] > ZERO_TOL:
            raise PreconditionViolated(
                f"proxy agent {i + 1} retains share {entries[i, i]:.6g} of her own vote"
            )
    support = {int(j) for j in np.nonzero(entries[:, k] > 0)[0]}
    if support != members:
        missing = sorted(j + 1 for j in members - support)
        extra = sorted(j + 1 for j in support - members)
        raise PreconditionViolated(
            f"agent {k + 1} must delegate positively to exactly the proxy set; "
            f"missing {missing}, extra {extra}"
        )
    if k in partition_agents(P).n3:
        raise PreconditionViolated(f"agent {k + 1} is involved in a delegation cycle")
    den = 1.0 - float(sum(entries[i, k] * entries[k, i] for i in sorted(members)))
    if den <= 1e-12:
        raise DegenerateDenominator(
            f"replication denominator {den:.3g} is numerically zero; "
            f"agent {k + 1} sits in a two-way delegation loop with her proxies"
        )
    return members, den


def delegation_reduction(P, k: int, D) -> tuple[DelegationMatrix, ReductionSpec]:
    """Replace agent k's full delegation by replicating her proxies' profiles.

    Column k becomes the back-flow-corrected mixture of the proxy columns
    with their k-entries zeroed; every other column is untouched. The
    exact measure is invariant under this rewrite.
    """
    P = _as_matrix(P)
    members, den = _reduction_preconditions(P, k, D)
    n = P.n
    x_star = np.zeros(n)
    for i in sorted(members):
        col = P.entries[:, i].copy()
        col[k] = 0.0
        x_star = x_star + P.entries[i, k] * col
    x_star = x_star / den
    new_entries = P.entries.copy()
    new_entries[:, k] = x_star
    spec = ReductionSpec(k=k, d=members, x_star_k=DelegationProfile(x_star, owner=k))
    return DelegationMatrix(new_entries), spec


def delta_delegation_constant(P, f, k: int, D) -> float:
    """Scale constant bounding how far the penalized measure moves under reduction.

    The penalized measures of the original and the reduced matrix differ
    by at most this constant times epsilon.
    """
    P = _as_matrix(P)
    _, den = _reduction_preconditions(P, k, D)
    src = as_weight_source(f, P.n)
    return (P.n + 1) * src.total / den


def pad_with_loss(v: np.ndarray, total: float) -> PowerVector:
    """Extend an n-entry measure with a loss entry so it sums to total."""
    v = np.asarray(v, dtype=float)
    return PowerVector(np.append(v, total - v.sum()))
