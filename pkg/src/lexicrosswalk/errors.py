"""Exception hierarchy shared by every dialect module."""


class CrosswalkError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(CrosswalkError):
    """Malformed XML input."""

    def __init__(self, line, column, message):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f'line {line}, column {column}: {message}')


class EncodingError(ParseError):
    """Input bytes are not valid UTF-8."""


class PrefixError(CrosswalkError):
    """A namespace URI has no prefix and auto-assignment is disabled."""


class DialectError(CrosswalkError):
    """The document root does not belong to the requested dialect."""


class StructureError(CrosswalkError):
    """The document violates a dialect's structural rules beyond recovery."""


class MappingError(CrosswalkError):
    """A TEI element cannot be mapped back to a data category."""


class UnrepresentableError(CrosswalkError):
    """The target dialect has no construct for part of the model."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f'{path}: {message}')
