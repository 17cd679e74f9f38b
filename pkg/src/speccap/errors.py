"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Invalid parameters or malformed input data."""


class ComputationError(RuntimeError):
    """A numerical routine failed to produce a trustworthy result."""


class ConvergenceError(ComputationError):
    """Iteration budget exhausted before reaching the accuracy target."""

    def __init__(self, message, error_estimate=None):
        super().__init__(message)
        self.error_estimate = error_estimate


class PsdViolationError(ComputationError):
    """An eigenvalue fell below the tolerated negative floor."""
