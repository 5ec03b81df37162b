"""
Iterated h-step-ahead quantile forecasts.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd

from ..errors import ForecastInputError
from ..model.recursion import run_recursion
from ..model.spec import BoundedSeries, ModelSpec, ParamVector

logger = logging.getLogger(__name__)


@dataclass
class ForecastResult:
    """Point forecasts of the conditional tau-quantile for horizons 1..h."""

    horizon: int
    y_hat: np.ndarray
    eta_hat: np.ndarray

    def to_frame(self, actual: Optional[np.ndarray] = None) -> pd.DataFrame:
        frame = pd.DataFrame(
            {"horizon": np.arange(1, self.horizon + 1), "y_hat": self.y_hat, "eta_hat": self.eta_hat}
        )
        if actual is not None:
            actual = np.asarray(actual, dtype=float)
            frame["actual"] = actual
            frame["error"] = actual - self.y_hat
        return frame


HARMONIC_COLUMNS = ("cos", "sin")


def extend_harmonics(
    data: BoundedSeries, h: int, period: int = 12, other_x: Optional[np.ndarray] = None
) -> np.ndarray:
    """Future covariate rows for the h steps past the end of ``data``.

    Columns named ``cos`` or ``sin`` are periodic and continue with the value
    one period earlier. Every other column (a crisis indicator, say) has no
    continuation and is taken from ``other_x``, in column order.

    Args:
        data: Observed series whose covariates are extended
        h: Number of future rows
        period: Period of the harmonic columns
        other_x: (h x m) future values of the m non-harmonic columns

    Raises:
        ForecastInputError: If non-harmonic values are missing or misshaped, or
            the series is shorter than one period
    """
    names = list(data.covariate_names)
    harmonic = [j for j, name in enumerate(names) if name in HARMONIC_COLUMNS]
    other = [j for j in range(data.k) if j not in harmonic]
    future = np.empty((h, data.k))
    if harmonic:
        if data.n < period:
            raise ForecastInputError(f"at least {period} observations are needed to extend harmonics")
        rows = [data.n - period + (j % period) for j in range(h)]
        future[:, harmonic] = data.x[np.ix_(rows, harmonic)]
    if other:
        missing = [names[j] for j in other]
        if other_x is None:
            raise ForecastInputError(f"future values of {missing} must be supplied")
        other_x = np.asarray(other_x, dtype=float)
        if other_x.size != h * len(other):
            raise ForecastInputError(f"future values of {missing} must have shape ({h}, {len(other)})")
        future[:, other] = other_x.reshape(h, len(other))
    return future


def forecast(
    spec: ModelSpec,
    params: ParamVector,
    data: BoundedSeries,
    h: int,
    future_x: Optional[np.ndarray] = None,
) -> ForecastResult:
    """Forecast the conditional tau-quantile h steps past the end of ``data``.

    g(y) terms beyond n are replaced by g(y_hat) and innovations beyond n are zero.

    Args:
        spec: Model specification
        params: Fitted parameters
        data: Observed series used as the forecast origin
        h: Number of steps ahead
        future_x: (h x k) covariates for the forecast window, required when k > 0

    Raises:
        ForecastInputError: If covariates are missing or have the wrong shape
    """
    if int(h) != h or h < 1:
        raise ValueError(f"h must be a positive integer, got {h}")
    k, n = spec.k, data.n
    if k:
        if future_x is None:
            raise ForecastInputError(f"future covariates for {h} steps are required when k = {k}")
        future_x = np.asarray(future_x, dtype=float)
        if future_x.ndim == 1:
            future_x = future_x.reshape(-1, k)
        if future_x.shape != (h, k):
            raise ForecastInputError(f"future covariates must have shape ({h}, {k}), got {future_x.shape}")
        if not np.all(np.isfinite(future_x)):
            raise ForecastInputError("future covariates must be finite")
    else:
        future_x = np.empty((h, 0))

    state = run_recursion(spec, params, data)
    x = np.vstack((data.x, future_x))
    gy = np.concatenate((np.asarray(spec.link.g(data.y), dtype=float), np.zeros(h)))
    r = np.concatenate((state.r, np.zeros(h)))
    xb = x @ params.beta if k else np.zeros(n + h)

    eta_hat = np.empty(h)
    y_hat = np.empty(h)
    for j in range(h):
        t = n + j
        value = params.alpha + xb[t]
        for i, phi in enumerate(params.phi, start=1):
            value += phi * (gy[t - i] - xb[t - i])
        for v, theta in enumerate(params.theta, start=1):
            value += theta * r[t - v]
        eta_hat[j] = value
        y_hat[j] = spec.link.g_inv(value)
        gy[t] = spec.link.g(y_hat[j])
    logger.debug("forecast %d steps from n=%d", h, n)
    return ForecastResult(horizon=int(h), y_hat=y_hat, eta_hat=eta_hat)
