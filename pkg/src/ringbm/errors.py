"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ConvergenceError(RuntimeError):
    """A series or quadrature failed to reach the requested tolerance."""


class FactorizationError(RuntimeError):
    """Covariance factorization failed beyond the jitter budget."""


class UnsupportedParameterError(ValueError):
    """The requested quantity has no implemented closed form for these parameters."""
