"""Exception types raised by the library.

Every error that is part of an operation's contract gets its own class so
callers can react to specific failure modes instead of parsing messages.
"""


class AnpolarError(Exception):
    """Base class for all library errors."""


class ZeroChannel(AnpolarError):
    """Legitimate channel vector has (numerically) zero norm."""


class DegenerateDenominator(AnpolarError):
    """Eavesdropper SNR denominator vanished: the AN cannot jam this draw."""


class NonConvergent(AnpolarError):
    """A series evaluation produced a non-finite term."""


class QuadratureFailure(AnpolarError):
    """Numerical integration did not reach the requested tolerance."""


class InvalidBudget(AnpolarError):
    """Total power budget must be positive."""


class BadLength(AnpolarError):
    """Vector length is not the power of two the polar transform requires."""


class MissingFrozenValue(AnpolarError):
    """A frozen index has no assigned frozen value."""


class LengthMismatch(AnpolarError):
    """Secret/random bit lengths do not match the partition."""


class RateInversion(AnpolarError):
    """Eavesdropper rate exceeds the legitimate rate; no secrecy possible."""


class SkippedPair(AnpolarError):
    """Channel pair has zero secrecy capacity and is skipped by experiments."""


class DegenerateSample(AnpolarError):
    """Too many degenerate draws while estimating the eta quantile."""


class ConfigError(AnpolarError):
    """Configuration file is malformed or fails validation."""
