"""Exception types shared across the package."""


class HLRRError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(HLRRError, ValueError):
    """Bad arguments: mismatched variables, unsupported modes, bad parameters."""


class PreconditionError(HLRRError, ValueError):
    """Inputs violate a documented precondition (duplicate variables, collisions)."""


class SingularError(HLRRError, ZeroDivisionError):
    """A factor that must be inverted vanished at the chosen specialization."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class WindowError(HLRRError):
    """A coefficient was requested outside the window the computation supports."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class DivergenceError(HLRRError):
    """An infinite sum whose terms do not eventually leave the window."""
