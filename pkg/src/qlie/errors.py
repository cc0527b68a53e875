"""Exception hierarchy shared across the package."""


class QlieError(Exception):
    """Base class for all library errors."""


class InputError(QlieError):
    """Malformed or inconsistent user input (CLI exit code 2)."""


class PreconditionError(InputError):
    """An operation was called on data violating its stated precondition."""


class WindowOverflowError(QlieError):
    """A graded computation was requested outside the supported finite window."""
