"""Exception types raised across the package."""


class EtaqError(Exception):
    """Base class for all package errors."""


class ZeroSeries(EtaqError, ZeroDivisionError):
    """Raised when inverting (or taking a negative power of) the zero series."""


class InsufficientPrecision(EtaqError):
    """A series or linear system is not known far enough for the request."""


class IncompatibleOffsets(EtaqError, ValueError):
    """Two series whose leading exponents differ by a non-integer amount were added."""


class NotADivisor(EtaqError, ValueError):
    pass


class NotPrime(EtaqError, ValueError):
    pass


class OutOfDomain(EtaqError, ValueError):
    pass


class HalfIntegralWeight(EtaqError, ValueError):
    pass


class NoSolution(EtaqError):
    """The target is not in the span of the given columns."""


class Underdetermined(EtaqError):
    """The linear system has a non-trivial kernel."""

    def __init__(self, kernel_dim, message=None):
        self.kernel_dim = kernel_dim
        super().__init__(message or f"system is underdetermined (kernel dimension {kernel_dim})")
