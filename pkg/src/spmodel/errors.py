"""Exception types raised across the package."""


class SPError(Exception):
    """Base class for all package errors."""


class KBSyntaxError(SPError):
    """A knowledge-base file could not be parsed."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class KBValidationError(SPError):
    """A pattern or knowledge base violates a structural invariant."""


class ConfigurationError(SPError):
    """Inputs are inconsistent, e.g. a symbol has no cost."""


class AlignmentError(SPError):
    """A merge or alignment construction was structurally invalid."""
