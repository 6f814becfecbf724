"""Exception types shared across the package."""


class GameDecompError(Exception):
    """Base class for all library errors."""


class ValidationError(GameDecompError):
    """Structural problems: shape mismatches, nonpositive weights, bad labels."""


class PreconditionError(GameDecompError):
    """A semantic precondition fails (not a duplicate, not harmonic, ...)."""


class SolveError(GameDecompError):
    """Linear solve received an inconsistent right-hand side."""


class ParseError(GameDecompError):
    """Game document could not be parsed; carries a line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
