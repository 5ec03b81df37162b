"""
Metrics components for simulation studies and forecast evaluation.
"""

from .forecast_metrics import ForecastErrors, ForecastMetrics, forecast_errors, horizon_errors
from .simulation_metrics import (
    MEASURES,
    McSummary,
    SimulationMetrics,
    summaries_to_frame,
    summarize_estimates,
)

__all__ = [
    "ForecastErrors",
    "ForecastMetrics",
    "MEASURES",
    "McSummary",
    "SimulationMetrics",
    "forecast_errors",
    "horizon_errors",
    "summaries_to_frame",
    "summarize_estimates",
]
