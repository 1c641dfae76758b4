"""Exceptions shared across the package."""


class SusyKdvError(Exception):
    """Base class for all package-specific errors."""


class PoleError(SusyKdvError, ZeroDivisionError):
    """A field was evaluated at a genuine pole (a tau-function body or a
    Yablonskii-Vorob'ev polynomial vanishes at the requested point)."""


class DomainError(SusyKdvError, ValueError):
    """Evaluation outside the domain of definition (e.g. t = 0 where a
    negative power of t^(1/3) is present)."""


class ExactDivisionError(SusyKdvError, ArithmeticError):
    """A polynomial division that is guaranteed exact left a remainder.
    This always signals an arithmetic bug, never bad user input."""


class ExponentOverflowError(SusyKdvError, OverflowError):
    """A Laurent exponent ran past the sanity bound; expressions this deep
    are never produced by a correct computation."""
