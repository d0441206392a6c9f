"""Exception hierarchy shared by every module.

Callers mostly care about two families: ValidationError means the input
was rejected before any computation ran (CLI exit code 2), NumericalError
means a computation ran but its result cannot be trusted (CLI exit code 3).
"""


class LiquidPowerError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class ValidationError(LiquidPowerError):
    """Input rejected before any computation ran."""

    exit_code = 2


class NumericalError(LiquidPowerError):
    """Computation ran but did not produce a trustworthy result."""

    exit_code = 3


class NegativeShare(ValidationError):
    """A delegation share is negative beyond the clamping band."""


class NotNormalized(ValidationError):
    """A delegation profile does not sum to 1 within tolerance."""


class EmptyProfile(ValidationError):
    """A delegation profile over zero agents."""


class DimensionMismatch(ValidationError):
    """Array shapes or index ranges do not line up."""


class DuplicateOwner(ValidationError):
    """Two delegation profiles claim the same agent."""


class EmptySet(ValidationError):
    """An agent set argument that must be nonempty is empty."""


class EpsilonOutOfRange(ValidationError):
    """Penalty parameter outside the open interval (0, 1)."""


class PreconditionViolated(ValidationError):
    """A reduction precondition failed; the message names the clause."""


class NotInClassB(ValidationError):
    """Matrix diagonal has an entry that is neither 0 nor 1."""


class SupportTooLarge(ValidationError):
    """Pure-outcome enumeration would exceed the size guard."""


class GridTooLarge(ValidationError):
    """Simplex grid search request exceeds the size guard."""


class EmptyNeighborhood(ValidationError):
    """An agent has no allowed delegation targets."""


class ParameterOutOfRange(ValidationError):
    """A numeric parameter violates its documented range."""


class UnknownSuite(ValidationError):
    """Requested check suite does not exist."""


class SolverFailure(NumericalError):
    """Linear solve residual exceeded tolerance after refinement."""


class NoConvergence(NumericalError):
    """Iteration hit its cap before reaching the requested tolerance."""


class DegenerateDenominator(NumericalError):
    """Reduction denominator is numerically zero (cycle signature)."""
