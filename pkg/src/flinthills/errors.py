"""Exception hierarchy.

Every error the library raises deliberately derives from FlintHillsError so
the CLI can map domain failures to a single exit code.
"""


class FlintHillsError(Exception):
    """Base class for all errors raised by this package."""


class PrecisionError(FlintHillsError, ValueError):
    """Requested precision is below the supported minimum."""


class DomainError(FlintHillsError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class SingularArgumentError(DomainError):
    """Evaluation point coincides with a pole (z an integer multiple of pi,
    or a vanishing sine argument in a series term)."""


class UndefinedMeasureError(DomainError):
    """Empirical measure requested for q < 2, where log q vanishes."""


class PrecisionInsufficientError(FlintHillsError, ArithmeticError):
    """Working precision cannot resolve a near-cancelling quantity."""


class CrossCheckError(FlintHillsError, ArithmeticError):
    """Two independent evaluation routes disagree; indicates an arithmetic bug."""


class InsufficientTermsError(FlintHillsError, ValueError):
    """More continued-fraction terms requested than are available."""


class FixtureFormatError(FlintHillsError, ValueError):
    """A fixture file could not be parsed."""


class CacheError(FlintHillsError, ValueError):
    """An expansion cache entry is unreadable or fails its checksum."""
