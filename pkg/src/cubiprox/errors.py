"""Exception hierarchy shared by every operator in the package."""


class CubiproxError(Exception):
    """Base class for all errors raised by cubiprox."""


class DomainError(CubiproxError, ValueError):
    """Input outside the mathematical domain (non-finite values, bad parameters)."""


class DegenerateDegreeError(DomainError):
    """A cubic was requested with leading coefficient zero."""


class PreconditionError(CubiproxError, ValueError):
    """An operator's closed form does not cover the given input."""


class ConsistencyError(CubiproxError, ArithmeticError):
    """A closed-form result failed its runtime check and no fallback could repair it."""
