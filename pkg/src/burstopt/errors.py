"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the range a model or solver accepts."""


class InfeasibleError(RuntimeError):
    """No level sequence has finite score under the given parameters."""


class CapacityError(RuntimeError):
    """The requested computation exceeds a configured size budget."""
