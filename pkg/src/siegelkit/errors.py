"""Exception hierarchy shared by every module."""


class SiegelError(Exception):
    """Base class for all library errors."""


class ContractViolation(SiegelError, ValueError):
    """Arguments break an operation's precondition (shape, sign, collinearity)."""


class DomainViolation(SiegelError, ValueError):
    """A matrix lies outside the model domain it was declared to belong to."""


class SingularMatrix(SiegelError, ArithmeticError):
    """Gaussian elimination met a pivot below the singularity threshold."""

    def __init__(self, message, pivot=None):
        super().__init__(message)
        self.pivot = pivot


class NumericalConvergence(SiegelError, ArithmeticError):
    """An iterative solver hit its iteration cap."""


class NumericalDomain(SiegelError, ArithmeticError):
    """A computed quantity left its admissible range beyond rounding tolerance."""
