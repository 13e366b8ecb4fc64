"""Shared exception types."""


class WickfockError(Exception):
    """Base class for errors raised by this package."""


class ArityError(WickfockError, ValueError):
    """A multilinear object was given the wrong number of arguments."""


class TruncationError(WickfockError, ValueError):
    """An operation would need data outside the active truncation caps."""


class ComplexInconsistencyError(WickfockError, RuntimeError):
    """The assembled cochain complex failed the delta-squared-is-zero gate.

    This signals an internal bug, never bad user input.
    """
