"""Exception hierarchy shared across the package."""


class PavemetricsError(Exception):
    """Base class for all errors raised by pavemetrics."""


class DomainError(PavemetricsError, ValueError):
    """An argument lies outside the domain of a formula."""


class StatError(PavemetricsError, ValueError):
    """Invalid input to a statistical routine."""


class InsufficientDataError(StatError):
    """Too few usable observations for the requested computation."""


class SingularDesignError(StatError):
    """The design matrix is rank deficient.

    ``column`` names the first column found to be a linear combination
    of the columns before it.
    """

    def __init__(self, column, message=None):
        self.column = column
        super().__init__(message or f"singular design: column {column!r} is collinear with earlier columns")


class ConvergenceError(PavemetricsError, ArithmeticError):
    """An iterative numerical method failed to converge."""


class DataFormatError(PavemetricsError):
    """A data file cannot be read at all (missing file, missing header)."""
