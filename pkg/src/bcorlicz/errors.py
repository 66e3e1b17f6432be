"""Exception types shared across the package."""

__all__ = [
    "BCOrliczError",
    "InvalidInputError",
    "NotInvertibleError",
    "UnsupportedInstanceError",
    "InvalidMapError",
    "NotInSpaceError",
    "NotSummableError",
]


class BCOrliczError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(BCOrliczError, ValueError):
    """Malformed, inconsistent, or non-finite input."""


class NotInvertibleError(BCOrliczError, ArithmeticError):
    """Inversion requested for a zero / zero-divisor element or operator.

    ``classification`` carries the diagnosis that triggered the error when
    one is available (see :class:`bcorlicz.bicomplex.Classification`).
    """

    def __init__(self, message: str, classification=None):
        super().__init__(message)
        self.classification = classification


class UnsupportedInstanceError(BCOrliczError, ValueError):
    """Problem instance outside the hypotheses an algorithm needs."""


class InvalidMapError(BCOrliczError, ValueError):
    """Index map whose images fall outside the atom index set."""


class NotInSpaceError(BCOrliczError, ArithmeticError):
    """No finite gauge scale exists: the sequence is outside the space."""


class NotSummableError(BCOrliczError, ArithmeticError):
    """A summation probe certified divergence."""
