"""
Forecasting for QULS-ARMA models.
"""

from .forecaster import ForecastResult, extend_harmonics, forecast

__all__ = ["ForecastResult", "extend_harmonics", "forecast"]
