"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: parameter and usage problems exit
with 2, data-level problems with 3, iterative-solver failures with 4.
"""


class SpreadrankError(Exception):
    """Base class for all toolkit errors."""


class ParseError(SpreadrankError):
    """An input file line could not be parsed."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class ValidationError(SpreadrankError):
    """Input data violates a documented precondition or invariant."""


class CapacityError(SpreadrankError):
    """Input exceeds a hard size limit of an exhaustive algorithm."""


class ParameterError(SpreadrankError):
    """A numeric parameter is outside its valid range."""


class ConvergenceError(SpreadrankError):
    """An iterative solver failed to converge."""

    def __init__(self, message: str, residual: float | None = None):
        if residual is not None:
            message = f"{message} (residual={residual:.3e})"
        super().__init__(message)
        self.residual = residual


class DependencyError(SpreadrankError):
    """A derived measure is missing one of its input score vectors."""


class UndefinedCorrelationError(SpreadrankError):
    """Rank correlation is undefined, e.g. one ranking is constant."""


class DataError(SpreadrankError):
    """Stored artifacts are inconsistent with each other or the config."""
