"""Exception hierarchy shared by every layer of the package."""


class DicksonError(Exception):
    """Base class for all errors raised by :mod:`dickson`."""


class ParameterError(DicksonError, ValueError):
    """Arguments are individually well-typed but inconsistent or out of range."""


class DomainError(DicksonError, ValueError):
    """An operation was applied outside its mathematical domain."""


class InternalContradiction(DicksonError, AssertionError):
    """A proven structural fact failed to hold; indicates a bug, never user error."""


class DescriptorParseError(DicksonError, ValueError):
    """A descriptor document is not well-formed."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(DicksonError, ValueError):
    """A well-formed descriptor describes an invalid nearfield."""

    def __init__(self, invariant, message):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant
