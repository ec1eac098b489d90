"""Exception hierarchy shared by all spin7ac modules."""


class Spin7acError(Exception):
    """Base class for all errors raised by this package."""


class InputError(Spin7acError, ValueError):
    """A caller violated a documented precondition (CLI exit code 3)."""


class InternalCheckError(Spin7acError, AssertionError):
    """An internal consistency certificate failed (CLI exit code 4).

    Raised when a rank check, projector identity or other self-verification
    fails.  This always indicates a bug, never bad user input.
    """
