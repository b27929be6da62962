"""
Exceptions raised by the termination checker.
Every TerminationError is an input or usage error for the CLI (exit 2)
and a 400 response for the HTTP service.
"""


class TerminationError(Exception):
    """Base class for every error the checker reports to its caller."""


class DegenerateInput(TerminationError):
    pass


class DivisionByZero(TerminationError, ZeroDivisionError):
    pass


class FieldMismatch(TerminationError):
    pass


class DimensionMismatch(TerminationError):
    pass


class DegenerateGuard(TerminationError):
    pass


class NotAFailure(TerminationError):
    pass


class DslSyntaxError(TerminationError):
    """Parse failure in the loop DSL, with a 1-based position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UndeclaredVariable(DslSyntaxError):
    pass


class DuplicateAssignment(DslSyntaxError):
    pass


class DecimalLiteral(DslSyntaxError):
    pass


class DegenerateBody(DslSyntaxError):
    pass


class UnsupportedGuardCount(TerminationError):
    pass


class UnsupportedComparator(TerminationError):
    pass


class MatrixDocumentError(TerminationError):
    pass


class InvalidConfig(TerminationError):
    pass


class ProgramTerminates(TerminationError):
    """A witness was requested for a loop that terminates on every input."""
