"""Exception types shared across the package."""


class TwistedToriError(Exception):
    """Base class for all package errors."""


class ParseError(TwistedToriError):
    """A curve/family/config file could not be parsed."""


class RegularityViolation(TwistedToriError):
    """The curve parametrization degenerates (v^2 + w^2 below threshold)."""


class CrossCheckMismatch(TwistedToriError):
    """An independent cross-check disagreed with the structural value."""


class OrientationError(TwistedToriError):
    """Operation requires a counterclockwise curve."""


class DomainError(TwistedToriError):
    """Argument outside the mathematical domain of the operation."""


class IntegrationFailure(TwistedToriError):
    """Numerical integration failed to meet its accuracy contract."""


class BudgetExhausted(TwistedToriError):
    """A scan or polish did not converge within its evaluation budget."""
