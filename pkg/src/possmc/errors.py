"""Exception hierarchy shared by the library and the command line."""


class PossmcError(Exception):
    """Base class for every error raised by possmc."""


class ShapeError(PossmcError, ValueError):
    """Operands of a fuzzy-matrix operation do not line up."""


class ValidationError(PossmcError, ValueError):
    """A structure violates its well-formedness conditions.

    ``key`` identifies the offending declaration, e.g. ``("trans", "s0", "s1")``
    or ``("row", "s3")``; parsers use it to attach a source location.
    """

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class UnknownStateError(ValidationError, KeyError):
    """A state name does not belong to the structure."""

    def __str__(self):
        return self.args[0]


class NotAPathError(PossmcError, ValueError):
    """A state sequence uses a transition of possibility 0."""


class AutomatonError(PossmcError, ValueError):
    """An automaton is malformed or unsuitable for the requested operation."""


class ParseError(PossmcError, ValueError):
    """Syntax or semantic error in a model/automaton document."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
