"""Exception hierarchy shared by all cuevol modules."""


class CuevolError(Exception):
    """Base class for library errors."""


class DomainError(CuevolError, ValueError):
    """An argument lies outside the contracted domain of an operation."""


class UnsupportedError(DomainError):
    """The operation does not support the requested case (e.g. oracle dimension)."""


class ToleranceError(CuevolError, ArithmeticError):
    """A requested accuracy could not be met."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class ConvergenceError(CuevolError, RuntimeError):
    """An iteration hit its cap. ``bracket`` holds the best enclosing interval."""

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class VanishingCoefficientError(CuevolError, ZeroDivisionError):
    """A multivariate Pochhammer symbol has a zero factor."""


class BudgetError(CuevolError, MemoryError):
    """Exact-arithmetic work would exceed the supported budget."""
