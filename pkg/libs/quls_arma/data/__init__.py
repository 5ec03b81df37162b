"""
Bundled data and published reference values.
"""

from .loader import dataset_path, load_stored_energy
from .reference import (
    PUBLISHED_ESTIMATES,
    PUBLISHED_FORECAST_ERRORS,
    PUBLISHED_SELECTED_NU,
    PUBLISHED_TAU_AVERAGES,
    published_estimates,
    published_forecast_table,
)

__all__ = [
    "PUBLISHED_ESTIMATES",
    "PUBLISHED_FORECAST_ERRORS",
    "PUBLISHED_SELECTED_NU",
    "PUBLISHED_TAU_AVERAGES",
    "dataset_path",
    "load_stored_energy",
    "published_estimates",
    "published_forecast_table",
]
