"""Exception types shared across the package.

Each maps to a distinct CLI exit code (see cli.EXIT_CODES).
"""


class PolyoscError(Exception):
    """Base class for all package errors."""


class ConfigError(PolyoscError):
    """Malformed job configuration or unparseable input."""


class ExactDivisionError(PolyoscError):
    """Polynomial division that was expected to be exact left a remainder."""


class InconsistentSystem(PolyoscError):
    """Linear system has no solution."""


class ZeroResultant(PolyoscError):
    """Resultant vanished identically: the inputs share a common factor."""

    def __init__(self, message, common_factor=None):
        super().__init__(message)
        self.common_factor = common_factor


class ZeroDenominator(PolyoscError):
    """A defining denominator is identically zero (degenerate parameters)."""


class SingularSystem(PolyoscError):
    """The 2x2 structure-function system is singular (degenerate A(N))."""


class NonIntegrable(PolyoscError):
    """Right-hand side has no antiderivative in the supported class."""


class EliminationDegenerate(PolyoscError):
    """The two spectral conditions share a common factor."""

    def __init__(self, message, common_factor=None):
        super().__init__(message)
        self.common_factor = common_factor


class UndecidedSign(PolyoscError):
    """Interval evaluation too wide to certify a sign; refine precision."""


class ModeMismatch(PolyoscError):
    """Mixed quantum/classical oscillator elements in one operation."""
