"""Exception hierarchy shared by all modules."""


class BNError(Exception):
    """Base class for every error raised by :mod:`mpreprog`."""


class BooleanNetSyntaxError(BNError, ValueError):
    """Malformed BooleanNet line or expression."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DuplicateComponentError(BooleanNetSyntaxError):
    """A component is declared twice."""


class UndeclaredComponentError(BooleanNetSyntaxError):
    """A rule references a component that has no declaration."""


class UnknownComponentError(BNError, KeyError):
    """A component name is not part of the network."""

    def __str__(self):
        return Exception.__str__(self)


class NotUnateError(BNError):
    """A local function depends on some component with both signs."""


class TooLargeError(BNError):
    """A brute-force bound would be exceeded."""


class DomainTooLargeError(TooLargeError):
    """An implicit ensemble has too many members to be materialized."""
