"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: ConfigError -> 2, PreconditionError -> 3,
anything else escaping a workflow -> 4.
"""


class HoloscopeError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(HoloscopeError):
    """Malformed input file, bad flag value, unusable environment setting."""


class PreconditionError(HoloscopeError):
    """A documented numeric precondition failed (not repelling, exceptional
    point, too few samples, and so on)."""


class NonConvergenceError(PreconditionError):
    """An iterative solve ran out of its iteration budget.

    Carries the residual report so callers can see how close it got.
    """

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class InternalError(HoloscopeError):
    """An invariant the code itself maintains was violated."""
