"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(ToolkitError, ZeroDivisionError):
    pass


class ParseError(ToolkitError):
    """Malformed text input; carries the 0-based offset of the bad token."""

    def __init__(self, message, position=None, line=None):
        self.position = position
        self.line = line
        loc = ""
        if line is not None:
            loc += f" (line {line})"
        if position is not None:
            loc += f" (at position {position})"
        super().__init__(message + loc)


class FieldMismatch(ToolkitError):
    pass


class DegreeMismatch(ToolkitError):
    pass


class NotHomogeneous(ToolkitError):
    pass


class NotDivisible(ToolkitError):
    pass


class ZeroDerivativeDomain(ToolkitError):
    pass


class OutOfRange(ToolkitError, ValueError):
    pass


class UnknownName(ToolkitError, LookupError):
    pass


class DuplicateLine(ToolkitError):
    pass


class IndexOutOfRange(ToolkitError, IndexError):
    pass


class NotATriplePoint(ToolkitError):
    pass


class LineNotIncident(ToolkitError):
    pass


class DirectionThroughPoint(ToolkitError):
    pass


class NonGenericDeformation(ToolkitError):
    pass


class PairsIdentityViolated(ToolkitError):
    pass
