"""Exception types shared by every algorithm in the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class OverflowRangeError(OverflowError):
    """A doubling, accumulation or squaring left the supported number range.

    Raised instead of wrapping or silently producing inf/0, because a wrapped
    intermediate would falsify the loop invariants the algorithms maintain.
    The message identifies the offending step.
    """


class ConvergenceError(ArithmeticError):
    """An iteration cap was hit before the convergence test was met."""


class TraceSchemaError(ValueError):
    """A trace log was used with the wrong algorithm or a malformed payload."""
