"""
Least-squares starting values for conditional maximum likelihood.
"""

import logging

import numpy as np

from ..errors import InsufficientDataError, SingularDesignError
from ..model.spec import BoundedSeries, ModelSpec, ParamVector

logger = logging.getLogger(__name__)

MIN_SIGMA = 1e-3


def _lagged(values: np.ndarray, lags: int, start: int) -> np.ndarray:
    n = values.size
    return np.column_stack([values[start - i : n - i] for i in range(1, lags + 1)]) if lags else np.empty((n - start, 0))


def _least_squares(design: np.ndarray, target: np.ndarray) -> np.ndarray:
    coef, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    if rank < design.shape[1]:
        raise SingularDesignError(
            f"design matrix has rank {rank} but {design.shape[1]} columns"
        )
    return coef


def initial_values(spec: ModelSpec, data: BoundedSeries) -> ParamVector:
    """Hannan-Rissanen style starting values on the link scale.

    Regression coefficients come from OLS of g(y_t) on the covariates; the AR
    and MA coefficients from a least-squares regression of the OLS residuals on
    their own lags and on the lags of long-AR residuals. sigma starts at the
    standard deviation of the final residuals.

    Raises:
        InsufficientDataError: If n <= m + k + p + q
        SingularDesignError: If the covariate design is rank deficient
    """
    n, m, k, p, q = data.n, spec.m, spec.k, spec.p, spec.q
    if n <= m + k + p + q:
        raise InsufficientDataError(
            f"{n} observations are not enough for starting values of {spec.describe()}"
        )
    gy = np.asarray(spec.link.g(data.y), dtype=float)
    design = np.column_stack([np.ones(n), data.x])
    coef = _least_squares(design, gy)
    intercept, beta = coef[0], coef[1:]
    resid = gy - design @ coef

    innovations, start, use_ma = resid, m, False
    long_order = int(min(max(p + q, 8), max(1, (n - 1) // 4)))
    if q and n - (long_order + q) > 2 * (p + q + 1):
        # long autoregression to proxy the unobserved innovations
        lags = _lagged(resid, long_order, long_order)
        long_design = np.column_stack([np.ones(n - long_order), lags])
        ar_coef = _least_squares(long_design, resid[long_order:])
        innovations = np.zeros(n)
        innovations[long_order:] = resid[long_order:] - long_design @ ar_coef
        start = max(m, long_order + q)
        use_ma = True
    regressors = [np.ones(n - start), _lagged(resid, p, start)]
    if use_ma:
        regressors.append(_lagged(innovations, q, start))
    lag_design = np.column_stack(regressors)
    lag_coef = _least_squares(lag_design, resid[start:])
    final = resid[start:] - lag_design @ lag_coef
    phi = lag_coef[1 : 1 + p]
    theta = lag_coef[1 + p :] if use_ma else np.zeros(q)

    ddof = min(lag_design.shape[1], final.size - 1)
    spread = float(np.std(final, ddof=ddof))
    sigma = spread if spread > MIN_SIGMA else MIN_SIGMA
    shift = spec.kernel.quantile(spec.tau)
    alpha = intercept * (1.0 - phi.sum()) + lag_coef[0] + sigma * shift * (1.0 + theta.sum())
    start_params = ParamVector(alpha=alpha, beta=beta, phi=phi, theta=theta, sigma=sigma)
    logger.debug("starting values for %s: %s", spec.describe(), start_params.as_dict(spec))
    return start_params
