"""Exception hierarchy shared by every module."""


class SemilatticeError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(SemilatticeError, ValueError):
    """An operation was called outside its domain."""


class TableMismatchError(PreconditionError):
    """Values bound to different constant tables were mixed."""


class AxiomViolation(SemilatticeError):
    """A set of atoms does not atomize a semilattice."""


class GuardError(SemilatticeError):
    """An exhaustive enumeration would exceed the configured size guard."""


class FormatError(SemilatticeError, ValueError):
    """Malformed input text, optionally with a location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        if self.column is None:
            return f"{self.message} at line {self.line}"
        return f"{self.message} at line {self.line}, column {self.column}"
