"""Exception types shared across the package."""


class DP1Error(Exception):
    """Base class for all package errors."""


class FieldMismatchError(DP1Error):
    """Operands belong to different field contexts."""


class DegenerateInputError(DP1Error):
    """Input violates a structural precondition (wrong closure size,
    unexpected kernel dimension, malformed sextic, ...)."""


class FormatError(DP1Error):
    """A text file failed to parse.  Carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
