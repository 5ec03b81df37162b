"""
Exception hierarchy for the QULS-ARMA package.
"""

from typing import Any, Dict, List, Optional


class QulsArmaError(Exception):
    """Base class for every error raised by the package."""


class DomainError(QulsArmaError, ValueError):
    """An argument lies outside the domain of the function being evaluated."""


class InsufficientDataError(QulsArmaError, ValueError):
    """The series is too short for the requested model orders."""


class NumericError(QulsArmaError, ArithmeticError):
    """A quantity became non-finite during evaluation.

    Args:
        message: Description of the failure
        t: One-based time index at which the failure was detected, if known
    """

    def __init__(self, message: str, t: Optional[int] = None):
        self.t = t
        if t is not None:
            message = f"{message} (t={t})"
        super().__init__(message)


class SingularDesignError(QulsArmaError, ValueError):
    """The least-squares design matrix used for starting values is rank deficient."""


class EstimationError(QulsArmaError):
    """Maximum-likelihood estimation could not produce a result."""


class GridFitError(EstimationError):
    """Every fit of a grid search failed.

    Args:
        message: Description of the failure
        outcomes: Mapping of grid value to the reason its fit failed
    """

    def __init__(self, message: str, outcomes: Dict[Any, str]):
        self.outcomes = dict(outcomes)
        detail = "; ".join(f"{key}: {reason}" for key, reason in self.outcomes.items())
        super().__init__(f"{message} [{detail}]")


class SimulationError(QulsArmaError):
    """Data generation failed, e.g. because the dynamics exploded."""

    def __init__(self, message: str, t: Optional[int] = None):
        self.t = t
        if t is not None:
            message = f"{message} (t={t})"
        super().__init__(message)


class HarnessError(QulsArmaError):
    """Every Monte Carlo replication failed."""


class ForecastInputError(QulsArmaError, ValueError):
    """Future covariates are missing or malformed."""


class DataFormatError(QulsArmaError, ValueError):
    """An input file could not be parsed into a bounded series.

    Args:
        message: Description of the failure
        rows: One-based data row numbers that triggered the failure
    """

    def __init__(self, message: str, rows: Optional[List[int]] = None):
        self.rows = list(rows or [])
        if self.rows:
            shown = ", ".join(str(row) for row in self.rows[:10])
            more = "" if len(self.rows) <= 10 else f" (+{len(self.rows) - 10} more)"
            message = f"{message}: rows {shown}{more}"
        super().__init__(message)


class DegenerateSampleError(QulsArmaError, ValueError):
    """The effective sample is too small for the requested statistic."""


class ConsistencyError(QulsArmaError):
    """An internal consistency check failed."""
