"""Exception hierarchy shared by every module of the package."""


class BorweinPiError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BorweinPiError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConvergenceError(BorweinPiError, ArithmeticError):
    """An iteration failed to reach the requested accuracy within its cap."""


class PrecisionNotReached(ConvergenceError):
    """A series hit its term cap before its terms fell below the threshold."""


class DivergenceError(ConvergenceError):
    """A series argument or term sequence does not converge."""


class InconsistentInitialValues(BorweinPiError, ValueError):
    """A user-supplied initial-value set failed its consistency check."""
