"""
Conditional-quantile recursion of the QULS-ARMA(p, q) model on the link scale.

For t = m+1..n the linked quantile is

    eta_t = alpha + x_t'beta + sum_i phi_i [g(y_{t-i}) - x_{t-i}'beta]
            + sum_j theta_j r_{t-j},        r_t = g(y_t) - eta_t,

and the first m = max(p, q) observations initialise it with r_t = 0 and
eta_t = g(y_t).
"""

import logging
from typing import Tuple

import numpy as np

from ..errors import NumericError
from .spec import BoundedSeries, ModelSpec, ParamVector, RecursionState

logger = logging.getLogger(__name__)


def _check_inputs(spec: ModelSpec, params: ParamVector, data: BoundedSeries) -> None:
    data.require_length(spec)
    params.check(spec)


def _first_bad(values: np.ndarray) -> int:
    return int(np.flatnonzero(~np.isfinite(values))[0]) + 1


def _regression_part(
    spec: ModelSpec, params: ParamVector, gy: np.ndarray, x: np.ndarray
) -> np.ndarray:
    """alpha + x_t'beta + AR terms for t = m+1..n (zeros before)."""
    n, m = gy.size, spec.m
    xb = x @ params.beta if spec.k else np.zeros(n)
    dev = gy - xb
    a = np.zeros(n)
    a[m:] = params.alpha + xb[m:]
    for i, phi in enumerate(params.phi, start=1):
        a[m:] += phi * dev[m - i : n - i]
    return a


def _regression_jacobian(
    spec: ModelSpec, params: ParamVector, gy: np.ndarray, x: np.ndarray
) -> np.ndarray:
    """Partial derivatives of the regression part, rows t = m+1..n."""
    n, m, k, p = gy.size, spec.m, spec.k, spec.p
    xb = x @ params.beta if k else np.zeros(n)
    dev = gy - xb
    da = np.zeros((n, spec.dim))
    da[m:, 0] = 1.0
    if k:
        xs = x[m:].copy()
        for i, phi in enumerate(params.phi, start=1):
            xs -= phi * x[m - i : n - i]
        da[m:, 1 : 1 + k] = xs
    for i in range(1, p + 1):
        da[m:, k + i] = dev[m - i : n - i]
    return da


def run_recursion(spec: ModelSpec, params: ParamVector, data: BoundedSeries) -> RecursionState:
    """Run the quantile recursion over the whole series.

    Args:
        spec: Model specification
        params: Parameter vector
        data: Observed bounded series

    Returns:
        RecursionState with eta_t, q_tau_t and r_t for t = 1..n
    """
    state, _ = _recursion(spec, params, data, with_jacobian=False)
    return state


def recursion_jacobian(
    spec: ModelSpec, params: ParamVector, data: BoundedSeries
) -> Tuple[RecursionState, np.ndarray]:
    """Run the recursion together with d eta_t / d parameters.

    The moving-average terms are differentiated through the exact chain rule
    d r_{t-j} = -d eta_{t-j}, so the Jacobian is exact for any (p, q).

    Returns:
        Tuple of the RecursionState and an (n x dim) array whose row t holds
        the gradient of eta_t (zero rows for t <= m)
    """
    return _recursion(spec, params, data, with_jacobian=True)


def _recursion(spec, params, data, with_jacobian):
    _check_inputs(spec, params, data)
    n, m, q = data.n, spec.m, spec.q
    gy = np.asarray(spec.link.g(data.y), dtype=float)
    a = _regression_part(spec, params, gy, data.x)
    da = _regression_jacobian(spec, params, gy, data.x) if with_jacobian else None

    eta = gy.copy()
    r = np.zeros(n)
    if q == 0:
        eta[m:] = a[m:]
        r[m:] = gy[m:] - eta[m:]
        d_eta = da
    else:
        theta = params.theta
        theta_cols = slice(1 + spec.k + spec.p, 1 + spec.k + spec.p + q)
        d_eta = np.zeros((n, spec.dim)) if with_jacobian else None
        for t in range(m, n):
            past = r[t - q : t][::-1]
            eta[t] = a[t] + theta @ past
            r[t] = gy[t] - eta[t]
            if with_jacobian:
                row = da[t].copy()
                row[theta_cols] += past
                row -= theta @ d_eta[t - q : t][::-1]
                d_eta[t] = row
            if not np.isfinite(eta[t]):
                break

    if not np.all(np.isfinite(eta)):
        raise NumericError("linked quantile overflowed", t=_first_bad(eta))
    q_tau = np.asarray(spec.link.g_inv(eta), dtype=float)
    return RecursionState(eta=eta, q_tau=q_tau, r=r, m=m), d_eta


def ar_roots(params: ParamVector) -> np.ndarray:
    """Roots of the AR polynomial 1 - phi_1 z - ... - phi_p z^p.

    All roots outside the unit circle indicate stationary AR dynamics.
    """
    if params.phi.size == 0:
        return np.empty(0, dtype=complex)
    coefs = np.concatenate((-params.phi[::-1], [1.0]))
    return np.roots(coefs)
