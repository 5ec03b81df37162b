"""
quls-arma - Quantile unit-log-symmetric ARMA models for time series in (0, 1).
"""

from .distributions import LinkFunction, SymmetricKernel
from .estimation import FitConfig, FitResult, QulsArmaEstimator, fit, fit_student_t
from .forecasting import forecast
from .model import BoundedSeries, ModelSpec, ParamVector
from .simulation import MonteCarloHarness, ScenarioConfig, generate_series

__version__ = "0.1.0"

__all__ = [
    "BoundedSeries",
    "FitConfig",
    "FitResult",
    "LinkFunction",
    "ModelSpec",
    "MonteCarloHarness",
    "ParamVector",
    "QulsArmaEstimator",
    "ScenarioConfig",
    "SymmetricKernel",
    "fit",
    "fit_student_t",
    "forecast",
    "generate_series",
]
