"""Core value types.

Orientation convention, used everywhere and worth stating once and loudly:
the delegation matrix P is column-stochastic and P[i, j] is the share that
agent j assigns to agent i. Column j is agent j's delegation profile. A
particle sitting at j therefore jumps to i with rate P[i, j].

Agent indices are 0-based throughout the library. File formats and the CLI
use 1-based indices and convert at the boundary.

All wrapped numpy arrays are read-only; instances are safe to share across
threads.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch

__all__ = [
    "DelegationProfile",
    "DelegationMatrix",
    "AgentPartition",
    "AugmentedMatrix",
    "WeightSource",
    "PowerVector",
    "Method",
    "MeasureResult",
    "ReductionSpec",
    "PreferenceProfile",
    "StrategySpace",
    "BestResponse",
    "RegretReport",
    "TrajectoryStep",
    "Trajectory",
    "ParticleEstimate",
]


def readonly_array(values, dtype=float) -> np.ndarray:
    """Copy values into a new array and lock it against writes."""
    out = np.array(values, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class DelegationProfile:
    """One agent's split of her voting weight across all n agents.

    weights[k] is the share sent to agent k; entries are nonnegative and
    sum to 1. Construct through delegation.validate_profile unless the
    entries are already known to be valid.
    """

    weights: np.ndarray
    owner: int = 0

    def __post_init__(self):
        object.__setattr__(self, "weights", readonly_array(self.weights))

    @property
    def n(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class DelegationMatrix:
    """Column-stochastic n x n matrix; column j is agent j's profile."""

    entries: np.ndarray

    def __post_init__(self):
        entries = readonly_array(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError("delegation matrix must be square")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j]

    def profile(self, j: int) -> DelegationProfile:
        return DelegationProfile(self.entries[:, j], owner=j)


@dataclass(frozen=True)
class AgentPartition:
    """Classification of agents by how their voting weight resolves.

    n1: agents with positive self-retention (diagonal entry nonzero).
    n2: agents with a positive-share delegation path into n1.
    n3: everyone else; their weight is trapped in cycles.
    """

    n1: frozenset[int]
    n2: frozenset[int]
    n3: frozenset[int]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "n1", frozenset(self.n1))
        object.__setattr__(self, "n2", frozenset(self.n2))
        object.__setattr__(self, "n3", frozenset(self.n3))


@dataclass(frozen=True)
class AugmentedMatrix:
    """(n+1) x (n+1) penalized matrix.

    Top-left block is (1 - epsilon) * P, the last row is epsilon on the
    first n columns, and the last column is the absorbing unit vector.
    Columns sum to 1.
    """

    entries: np.ndarray
    epsilon: float

    def __post_init__(self):
        object.__setattr__(self, "entries", readonly_array(self.entries))

    @property
    def n(self) -> int:
        return self.entries.shape[0] - 1


@dataclass(frozen=True)
class WeightSource:
    """Inherent voting weight f per agent, length n+1.

    Entry n+1 belongs to the sink agent. Arbitrary values are admitted;
    a warning is emitted for negative entries or a nonzero sink entry
    because downstream guarantees assume f >= 0 with zero sink weight.
    """

    f: np.ndarray

    def __post_init__(self):
        f = readonly_array(self.f)
        if f.ndim != 1 or f.shape[0] < 2:
            raise ValueError("weight source must be a vector of length n+1 with n >= 1")
        object.__setattr__(self, "f", f)
        if np.any(f[:-1] < 0):
            warnings.warn("negative inherent weights: nonnegativity guarantees do not apply",
                          stacklevel=3)
        if f[-1] != 0:
            warnings.warn("nonzero sink weight: interpretation is not defined by the model",
                          stacklevel=3)

    @classmethod
    def default(cls, n: int) -> "WeightSource":
        """The unit source (1, ..., 1, 0)."""
        f = np.ones(n + 1)
        f[-1] = 0.0
        return cls(f)

    @property
    def n(self) -> int:
        return self.f.shape[0] - 1

    @property
    def total(self) -> float:
        return float(self.f.sum())


def as_weight_source(f, n: int) -> WeightSource:
    """Coerce None, length-n, or length-(n+1) input into a WeightSource."""
    if f is None:
        return WeightSource.default(n)
    if isinstance(f, WeightSource):
        if f.n != n:
            raise DimensionMismatch(f"weight source has n={f.n}, expected {n}")
        return f
    arr = np.asarray(f, dtype=float)
    if arr.shape == (n,):
        arr = np.append(arr, 0.0)
    if arr.shape != (n + 1,):
        raise DimensionMismatch(f"weight source must have length {n} or {n + 1}")
    return WeightSource(arr)


@dataclass(frozen=True)
class PowerVector:
    """Voting power per agent, length n+1; the last entry is the loss.

    The loss entry is the weight dissipated in cycles and, under an
    epsilon penalty, along delegation chains.
    """

    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "v", readonly_array(self.v))

    @property
    def n(self) -> int:
        return self.v.shape[0] - 1

    @property
    def loss(self) -> float:
        return float(self.v[-1])

    @property
    def total(self) -> float:
        return float(self.v.sum())


@dataclass(frozen=True)
class Method:
    """Which measure produced a result, plus method-specific metadata."""

    kind: str  # epsilon | exact | series | classic | standard | ms
    epsilon: float | None = None
    k_used: int | None = None
    converged: bool | None = None


@dataclass(frozen=True)
class MeasureResult:
    """A power vector together with how it was computed.

    residual is the solver residual max-norm for solve-based methods and
    the last masked change (a tail proxy) for iterative ones.
    """

    power: PowerVector
    method: Method
    residual: float


@dataclass(frozen=True)
class ReductionSpec:
    """Record of a delegation-equivalence rewrite.

    Agent k delegated everything to the proxy set d; x_star_k is the
    replicated profile that replaces column k.
    """

    k: int
    d: frozenset[int]
    x_star_k: DelegationProfile

    def __post_init__(self):
        object.__setattr__(self, "d", frozenset(self.d))


@dataclass(frozen=True)
class PreferenceProfile:
    """Satisfaction weights w, one row per agent, each of length n+1.

    w[i][j] is agent i's satisfaction per unit of her vote consumed by
    agent j; the last column weights dissipated vote. Negative entries
    are allowed.
    """

    w: np.ndarray

    def __post_init__(self):
        w = readonly_array(self.w)
        if w.ndim != 2 or w.shape[1] != w.shape[0] + 1:
            raise ValueError("preference profile must be n rows of length n+1")
        if not np.all(np.isfinite(w)):
            raise ValueError("preference entries must be finite")
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    def row(self, i: int) -> np.ndarray:
        return self.w[i]


@dataclass(frozen=True)
class StrategySpace:
    """Allowed delegation targets per agent; default is everyone."""

    neighborhoods: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "neighborhoods", tuple(frozenset(s) for s in self.neighborhoods)
        )

    @classmethod
    def full(cls, n: int) -> "StrategySpace":
        return cls(tuple(frozenset(range(n)) for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.neighborhoods)

    def allowed(self, i: int) -> frozenset[int]:
        return self.neighborhoods[i]


@dataclass(frozen=True)
class BestResponse:
    """All utility-maximizing vertex strategies for one agent.

    Every j in argmax_vertices is within the tie tolerance of value; by
    convexity of the best-response set, any convex combination of those
    vertices is optimal too.
    """

    agent: int
    argmax_vertices: tuple[int, ...]
    value: float
    vertex_values: dict[int, float] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class RegretReport:
    """Per-agent gap between best-response value and current utility."""

    regrets: np.ndarray
    utilities: np.ndarray
    best_values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "regrets", readonly_array(self.regrets))
        object.__setattr__(self, "utilities", readonly_array(self.utilities))
        object.__setattr__(self, "best_values", readonly_array(self.best_values))

    @property
    def max_regret(self) -> float:
        return float(self.regrets.max())

    def is_epsilon_nash(self, tol: float = 1e-6) -> bool:
        return self.max_regret <= tol


@dataclass(frozen=True)
class TrajectoryStep:
    """One accepted switch during best-response dynamics.

    regret is the switching agent's improvement against the pre-switch
    profile, which lower-bounds the profile's max regret at that moment.
    """

    iteration: int
    agent: int
    new_profile: np.ndarray
    regret: float

    def __post_init__(self):
        object.__setattr__(self, "new_profile", readonly_array(self.new_profile))


@dataclass(frozen=True)
class Trajectory:
    """Outcome of best-response dynamics.

    status is Converged (a full round produced no switch), CycleDetected
    (a strategy profile repeated), or MaxIters. Converged implies the
    final report's max_regret is at most the dynamics tolerance.
    """

    status: str
    steps: tuple[TrajectoryStep, ...]
    final: DelegationMatrix
    rounds: int
    report: RegretReport


@dataclass(frozen=True)
class ParticleEstimate:
    """Monte Carlo estimate of consumption rates on the augmented chain."""

    rates: np.ndarray
    std_error: np.ndarray
    steps: int
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "rates", readonly_array(self.rates))
        object.__setattr__(self, "std_error", readonly_array(self.std_error))
