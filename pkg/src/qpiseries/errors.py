"""Exception types shared across the package."""


class QvError(Exception):
    """Base class for all package errors."""


class DomainError(QvError):
    """An argument lies outside the mathematical domain of the operation."""


class ModeError(QvError):
    """Operation requested in the wrong evaluation mode (exact vs certified)."""


class LatticeError(QvError):
    """A q-exponent is not an integer multiple of 1/L on the chosen lattice."""


class PoleError(QvError):
    """A denominator factor vanishes; the message names the offending factor."""


class ConvergenceError(QvError):
    """A series or product failed its decay/truncation preconditions."""


class PrecisionError(QvError):
    """The certified error bound is too wide to complete the operation."""
