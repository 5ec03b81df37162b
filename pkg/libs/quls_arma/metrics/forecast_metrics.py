"""
Out-of-sample forecast accuracy measures.
"""

from typing import Any, Dict, NamedTuple, Optional, Sequence

import numpy as np
import pandas as pd
from langchain_core.runnables import Runnable, RunnableConfig

from ..errors import ForecastInputError


class ForecastErrors(NamedTuple):
    mse: float
    mape: float


def forecast_errors(actual: Sequence[float], predicted: Sequence[float]) -> ForecastErrors:
    """MSE and MAPE (in percent) of a set of forecasts.

    Raises:
        ForecastInputError: On unequal or empty inputs, or a zero actual value
    """
    actual = np.asarray(actual, dtype=float).ravel()
    predicted = np.asarray(predicted, dtype=float).ravel()
    if actual.size != predicted.size:
        raise ForecastInputError(f"{actual.size} actual values for {predicted.size} forecasts")
    if actual.size == 0:
        raise ForecastInputError("no forecasts to evaluate")
    if np.any(actual == 0.0):
        raise ForecastInputError("MAPE is undefined when an actual value is zero")
    diff = actual - predicted
    return ForecastErrors(
        mse=float(np.mean(diff**2)),
        mape=float(100.0 * np.mean(np.abs(diff) / np.abs(actual))),
    )


def horizon_errors(actual: Sequence[float], predicted: Sequence[float]) -> pd.DataFrame:
    """MSE and MAPE over the first h forecasts for every h = 1..H."""
    actual = np.asarray(actual, dtype=float).ravel()
    predicted = np.asarray(predicted, dtype=float).ravel()
    forecast_errors(actual, predicted)
    rows = []
    for h in range(1, actual.size + 1):
        errs = forecast_errors(actual[:h], predicted[:h])
        rows.append({"horizon": h, "mse": errs.mse, "mape": errs.mape})
    return pd.DataFrame(rows, columns=["horizon", "mse", "mape"])


class ForecastMetrics(Runnable):
    """Calculates forecast accuracy against a holdout."""

    def invoke(self, inputs: Dict[str, Any], config: Optional[RunnableConfig] = None) -> Dict[str, Any]:
        """Calculate forecast accuracy.

        Args:
            inputs: Dictionary with "actual" and "predicted" sequences
            config: Optional runnable configuration

        Returns:
            Dictionary with overall "mse" and "mape" and the per-horizon "table"
        """
        overall = forecast_errors(inputs["actual"], inputs["predicted"])
        return {
            "mse": overall.mse,
            "mape": overall.mape,
            "table": horizon_errors(inputs["actual"], inputs["predicted"]),
        }
