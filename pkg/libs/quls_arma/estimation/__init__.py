"""
Estimation components for QULS-ARMA models.
"""

from .estimator import QulsArmaEstimator, fit, fit_student_t, select_order, tau_sweep
from .optimizer import OptimizeResult, bfgs_minimize
from .results import (
    DEFAULT_NU_GRID,
    FitConfig,
    FitResult,
    InformationCriteria,
    information_criteria,
)
from .starting_values import initial_values

__all__ = [
    "DEFAULT_NU_GRID",
    "FitConfig",
    "FitResult",
    "InformationCriteria",
    "OptimizeResult",
    "QulsArmaEstimator",
    "bfgs_minimize",
    "fit",
    "fit_student_t",
    "information_criteria",
    "initial_values",
    "select_order",
    "tau_sweep",
]
