"""Voting-power measures and delegation games for fractional liquid democracy.

Agents split their voting weight among proxies; the engine measures how much
weight each agent ultimately consumes (several related measures), transforms
delegation structures without changing the measurement, and studies the
strategic game in which agents pick proxies to maximize weighted power.
"""

from .delegation import (
    assemble_matrix,
    augment,
    delegation_cycles,
    is_delegation_cycle,
    matrix_from_columns,
    matrix_from_rows,
    partition_agents,
    validate_profile,
)
from .errors import (
    DegenerateDenominator,
    DimensionMismatch,
    DuplicateOwner,
    EmptyNeighborhood,
    EmptyProfile,
    EmptySet,
    EpsilonOutOfRange,
    GridTooLarge,
    LiquidPowerError,
    NegativeShare,
    NoConvergence,
    NotInClassB,
    NotNormalized,
    NumericalError,
    ParameterOutOfRange,
    PreconditionViolated,
    SolverFailure,
    SupportTooLarge,
    UnknownSuite,
    ValidationError,
)
from .game import best_response, br_dynamics, utility, verify_equilibrium
from .instances import Instance, instance_doc, load_instance, parse_instance, save_instance
from .measures import (
    classic_power,
    delegation_reduction,
    delta_delegation_constant,
    mixed_strategy_power,
    power_eps,
    power_exact,
    power_series,
    standard_generalization,
    standard_iteration,
)
from .oracles import enumerate_pure_support, grid_best_response, particle_estimate
from .checks import SUITES, run_suite
from .types import (
    AgentPartition,
    AugmentedMatrix,
    BestResponse,
    DelegationMatrix,
    DelegationProfile,
    MeasureResult,
    Method,
    ParticleEstimate,
    PowerVector,
    PreferenceProfile,
    ReductionSpec,
    RegretReport,
    StrategySpace,
    Trajectory,
    TrajectoryStep,
    WeightSource,
    as_weight_source,
)

__version__ = "0.1.0"

__all__ = [
    "AgentPartition",
    "AugmentedMatrix",
    "BestResponse",
    "DegenerateDenominator",
    "DelegationMatrix",
    "DelegationProfile",
    "DimensionMismatch",
    "DuplicateOwner",
    "EmptyNeighborhood",
    "EmptyProfile",
    "EmptySet",
    "EpsilonOutOfRange",
    "GridTooLarge",
    "Instance",
    "LiquidPowerError",
    "MeasureResult",
    "Method",
    "NegativeShare",
    "NoConvergence",
    "NotInClassB",
    "NotNormalized",
    "NumericalError",
    "ParameterOutOfRange",
    "ParticleEstimate",
    "PowerVector",
    "PreconditionViolated",
    "PreferenceProfile",
    "ReductionSpec",
    "RegretReport",
    "SUITES",
    "SolverFailure",
    "StrategySpace",
    "SupportTooLarge",
    "Trajectory",
    "TrajectoryStep",
    "UnknownSuite",
    "ValidationError",
    "WeightSource",
    "as_weight_source",
    "assemble_matrix",
    "augment",
    "best_response",
    "br_dynamics",
    "classic_power",
    "delegation_cycles",
    "delegation_reduction",
    "delta_delegation_constant",
    "enumerate_pure_support",
    "grid_best_response",
    "instance_doc",
    "is_delegation_cycle",
    "load_instance",
    "matrix_from_columns",
    "matrix_from_rows",
    "mixed_strategy_power",
    "parse_instance",
    "particle_estimate",
    "partition_agents",
    "power_eps",
    "power_exact",
    "power_series",
    "run_suite",
    "save_instance",
    "standard_generalization",
    "standard_iteration",
    "utility",
    "validate_profile",
    "verify_equilibrium",
]
