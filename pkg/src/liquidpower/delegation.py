"""Profile validation, delegation-graph classification, and penalty augmentation.

The delegation graph has an edge i -> k exactly when agent i assigns a
positive share to agent k, i.e. P[k, i] > 0 with i != k. Self-retention
(the diagonal) is membership data for the N1/N2/N3 partition, not an edge.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateOwner,
    EmptyProfile,
    EmptySet,
    EpsilonOutOfRange,
    NegativeShare,
    NotNormalized,
)
from .types import AgentPartition, AugmentedMatrix, DelegationMatrix, DelegationProfile

# Shares in [-CLAMP_BAND, 0] are treated as serialization round-off and
# clamped to zero; anything more negative is a hard error.
CLAMP_BAND = 1e-12
SUM_TOL = 1e-9
# Zero test for diagonal entries (N1 membership and cycle definitions).
ZERO_TOL = 1e-12


def validate_profile(raw, owner: int = 0) -> DelegationProfile:
    """Validate one agent's share vector and renormalize it to sum exactly 1.

    Entries in [-1e-12, 0] are clamped to zero; the sum must be within
    1e-9 of 1 before renormalization.
    """
    weights = np.asarray(raw, dtype=float).ravel()
    if weights.size == 0:
        raise EmptyProfile("delegation profile over zero agents")
    low = weights.min()
    if low < -CLAMP_BAND:
        idx = int(weights.argmin())
        raise NegativeShare(
            f"profile of agent {owner + 1}: share {low:.3g} at position {idx + 1} is negative"
        )
    weights = np.clip(weights, 0.0, None)
    total = weights.sum()
    if abs(total - 1.0) > SUM_TOL:
        raise NotNormalized(
            f"profile of agent {owner + 1}: shares sum to {total:.12g}, expected 1"
        )
    # sums already within one rounding step of 1 count as normalized, so
    # revalidating a validated profile is a bitwise no-op
    if abs(total - 1.0) > 2.0 * np.finfo(float).eps:
        weights = weights / total
        # fold the division remainder into an entry that absorbs it
        # exactly; the largest entry's ulp can be too coarse, so search
        for _ in range(4):
            excess = weights.sum() - 1.0
            if excess == 0.0:
                break
            for idx in np.argsort(-weights):
                trial = weights.copy()
                trial[idx] -= excess
                if trial[idx] >= 0.0 and trial.sum() == 1.0:
                    weights = trial
                    break
            else:
                weights[weights.argmax()] -= excess
    return DelegationProfile(weights, owner=owner)


def assemble_matrix(profiles: Sequence[DelegationProfile]) -> DelegationMatrix:
    """Stack n validated profiles into the column-stochastic matrix.

    Column j of the result is the profile owned by agent j; owners must
    cover 0..n-1 exactly once.
    """
    n = len(profiles)
    if n == 0:
        raise EmptyProfile("no profiles given")
    entries = np.zeros((n, n))
    seen: set[int] = set()
    for prof in profiles:
        if prof.n != n:
            raise DimensionMismatch(
                f"profile of agent {prof.owner + 1} has length {prof.n}, expected {n}"
            )
        if not 0 <= prof.owner < n:
            raise DimensionMismatch(
                f"profile owner {prof.owner + 1} outside 1..{n}"
            )
        if prof.owner in seen:
            raise DuplicateOwner(f"two profiles claim agent {prof.owner + 1}")
        seen.add(prof.owner)
        entries[:, prof.owner] = prof.weights
    return DelegationMatrix(entries)


def matrix_from_columns(entries) -> DelegationMatrix:
    """Validate a raw array column by column and build a DelegationMatrix."""
    arr = np.asarray(entries, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    n = arr.shape[0]
    profiles = [validate_profile(arr[:, j], owner=j) for j in range(n)]
    return assemble_matrix(profiles)


def matrix_from_rows(rows) -> DelegationMatrix:
    """Build a matrix from agent-major rows (row i = profile of agent i)."""
    arr = np.asarray(rows, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected n rows of length n, got shape {arr.shape}")
    return matrix_from_columns(arr.T)


def partition_agents(P: DelegationMatrix) -> AgentPartition:
    """Split agents into self-retainers (N1), their feeders (N2), and the rest (N3).

    N2 is computed by reverse breadth-first search from N1 over positive
    delegation edges; N3 agents have no positive-share path to any
    self-retainer, so their weight circulates forever.
    """
    entries = P.entries
    n = P.n
    n1 = {i for i in range(n) if entries[i, i] > ZERO_TOL}
    # predecessors of k: agents that send k a positive share
    reached = set(n1)
    queue = deque(n1)
    while queue:
        k = queue.popleft()
        senders = np.nonzero(entries[k, :] > 0)[0]
        for i in senders:
            i = int(i)
            if i != k and i not in reached:
                reached.add(i)
                queue.append(i)
    n2 = reached - n1
    n3 = set(range(n)) - reached
    return AgentPartition(frozenset(n1), frozenset(n2), frozenset(n3), n)


def is_delegation_cycle(P: DelegationMatrix, C: Iterable[int]) -> bool:
    """True iff no agent in C retains any share and no share leaves C."""
    members = frozenset(int(i) for i in C)
    if not members:
        raise EmptySet("cycle candidate set is empty")
    n = P.n
    if any(i < 0 or i >= n for i in members):
        raise DimensionMismatch(f"cycle candidate set has indices outside 1..{n}")
    entries = P.entries
    outside = [j for j in range(n) if j not in members]
    for i in members:
        if entries[i, i] > ZERO_TOL:
            return False
        if outside and entries[outside, i].max() > ZERO_TOL:
            return False
    return True


def delegation_cycles(P: DelegationMatrix) -> list[frozenset[int]]:
    """Maximal delegation cycles: connected components of the trapped set N3.

    Each component is closed under delegation and free of self-retention,
    so it satisfies is_delegation_cycle; their union is exactly N3.
    """
    part = partition_agents(P)
    remaining = set(part.n3)
    entries = P.entries
    components: list[frozenset[int]] = []
    while remaining:
        seed = remaining.pop()
        comp = {seed}
        queue = deque([seed])
        while queue:
            k = queue.popleft()
            # undirected adjacency within N3
            links = set(np.nonzero(entries[k, :] > 0)[0]) | set(
                np.nonzero(entries[:, k] > 0)[0]
            )
            for j in links & remaining:
                remaining.discard(j)
                comp.add(j)
                queue.append(j)
        components.append(frozenset(comp))
    return components


def augment(P: DelegationMatrix, epsilon: float) -> AugmentedMatrix:
    """Attach the absorbing sink agent with leak probability epsilon.

    The result scales P by (1 - epsilon), routes epsilon from every real
    agent to the sink, and fixes the sink column at the unit vector.
    """
    if not 0.0 < epsilon < 1.0:
        raise EpsilonOutOfRange(f"epsilon must lie strictly in (0, 1), got {epsilon}")
    n = P.n
    out = np.zeros((n + 1, n + 1))
    out[:n, :n] = (1.0 - epsilon) * P.entries
    out[n, :n] = epsilon
    out[n, n] = 1.0
    return AugmentedMatrix(out, epsilon)
