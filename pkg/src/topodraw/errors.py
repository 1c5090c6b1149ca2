"""Exception types shared across the package."""


class TopodrawError(Exception):
    """Base class for all package errors."""


class InputError(TopodrawError, ValueError):
    """Malformed or out-of-contract input (bad JSON, invalid pattern, size caps)."""


class DegenerateDrawingError(InputError):
    """A drawing violates general position (coincident points, tangency, overlap)."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


class InconsistencyError(TopodrawError, RuntimeError):
    """Internal state that is impossible for well-formed input.

    Example: both independent edge pairs of an induced 4-cycle crossing,
    which cannot happen in a simple drawing.
    """


class BudgetExceededError(TopodrawError, RuntimeError):
    """An exhaustive search exceeded its configured size budget.

    Deliberately distinct from a "not found" result: the search space was
    not exhausted, so no negative conclusion may be drawn.
    """
