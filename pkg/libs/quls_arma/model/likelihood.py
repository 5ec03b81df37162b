"""
Conditional log-likelihood, score and Hessian of the QULS-ARMA(p, q) model.

With w_t = (1/sigma) log[y_t (1 - q_t) exp(sigma Q_Z(tau)) / (q_t (1 - y_t))],

    l = -sum_{t>m} log(sigma y_t (1 - y_t)) + sum_{t>m} log f_Z(w_t),

including the kernel's normalising constant so values compare across kernels.
"""

import logging
from typing import Tuple

import numpy as np
from scipy import special

from ..distributions.link import LinkKind
from ..errors import ConsistencyError, NumericError
from .recursion import recursion_jacobian, run_recursion
from .spec import BoundedSeries, ModelSpec, ParamVector, RecursionState

logger = logging.getLogger(__name__)

# relative asymmetry tolerated in a finite-difference Hessian before symmetrising
SYMMETRY_TOL = 1e-4


def _logit_quantile(spec: ModelSpec, state: RecursionState) -> np.ndarray:
    if spec.link.kind is LinkKind.LOGIT:
        return state.eta
    return special.logit(state.q_tau)


def _logit_quantile_slope(spec: ModelSpec, state: RecursionState) -> np.ndarray:
    """d logit(q_t) / d eta_t for t = m+1..n."""
    m = state.m
    if spec.link.kind is LinkKind.LOGIT:
        return np.ones(state.n - m)
    q = state.q_tau[m:]
    return 1.0 / (q * (1.0 - q) * np.asarray(spec.link.g_deriv(q)))


def _w_from_state(spec: ModelSpec, params: ParamVector, data: BoundedSeries, state) -> np.ndarray:
    m = state.m
    shift = spec.kernel.quantile(spec.tau)
    lq = _logit_quantile(spec, state)[m:]
    return (special.logit(data.y[m:]) - lq) / params.sigma + shift


def w_values(spec: ModelSpec, params: ParamVector, data: BoundedSeries) -> np.ndarray:
    """The standardized arguments w_t of the kernel density, t = m+1..n."""
    state = run_recursion(spec, params, data)
    return _w_from_state(spec, params, data, state)


def _loglik_terms(spec, params, data, w) -> np.ndarray:
    y = data.y[spec.m :]
    w = np.where(np.isfinite(w), w, np.inf)
    with np.errstate(over="ignore", invalid="ignore"):
        log_f = -np.inf * np.ones_like(w)
        ok = np.isfinite(w)
        log_f[ok] = spec.kernel.log_pdf(w[ok])
    return log_f - np.log(params.sigma) - np.log(y) - np.log1p(-y)


def log_likelihood(spec: ModelSpec, params: ParamVector, data: BoundedSeries) -> float:
    """Conditional log-likelihood of observations m+1..n given the first m.

    Raises:
        NumericError: If the log-likelihood is not finite; the offending t is reported
    """
    w = w_values(spec, params, data)
    terms = _loglik_terms(spec, params, data, w)
    if not np.all(np.isfinite(terms)):
        t = spec.m + int(np.flatnonzero(~np.isfinite(terms))[0]) + 1
        raise NumericError("log-likelihood is not finite", t=t)
    return float(np.sum(terms))


def _w_jacobian(spec, params, data, state, d_eta) -> Tuple[np.ndarray, np.ndarray]:
    m, sigma = state.m, params.sigma
    w = _w_from_state(spec, params, data, state)
    slope = _logit_quantile_slope(spec, state)
    dw = -(slope / sigma)[:, None] * d_eta[m:]
    dw[:, spec.sigma_index] = -(w - spec.kernel.quantile(spec.tau)) / sigma
    return w, dw


def _non_recursive_eta_derivatives(spec, params, data, state) -> np.ndarray:
    """Non-recursive quantile derivatives, scaled by g'(q_t).

    The intercept column carries (1 - sum phi), the MA columns carry
    theta_v r_{t-v}, and r_{t-j} is treated as parameter free. This is not the
    gradient of the likelihood for q > 0 and is kept only for comparison.
    """
    n, m, k, p, q = data.n, spec.m, spec.k, spec.p, spec.q
    gy = np.asarray(spec.link.g(data.y), dtype=float)
    xb = data.x @ params.beta if k else np.zeros(n)
    dev = gy - xb
    d = np.zeros((n, spec.dim))
    d[m:, 0] = 1.0 - params.phi.sum()
    if k:
        xs = data.x[m:].copy()
        for i, phi in enumerate(params.phi, start=1):
            xs -= phi * data.x[m - i : n - i]
        d[m:, 1 : 1 + k] = xs
    for i in range(1, p + 1):
        d[m:, k + i] = dev[m - i : n - i]
    for v in range(1, q + 1):
        d[m:, k + p + v] = params.theta[v - 1] * state.r[m - v : n - v]
    return d


def score(
    spec: ModelSpec,
    params: ParamVector,
    data: BoundedSeries,
    non_recursive: bool = False,
) -> np.ndarray:
    """Analytic gradient of the conditional log-likelihood.

    Args:
        spec: Model specification
        params: Parameter vector at which to evaluate
        data: Observed bounded series
        non_recursive: Use the non-recursive quantile derivatives instead of the
            exact chain rule through the moving-average terms

    Returns:
        Gradient ordered as ``spec.param_names``
    """
    state, d_eta = recursion_jacobian(spec, params, data)
    if non_recursive:
        exact, d_eta = d_eta, _non_recursive_eta_derivatives(spec, params, data, state)
        if spec.q > 0:
            logger.warning(
                "non-recursive quantile derivatives differ from the exact chain rule by up to %.3g",
                float(np.max(np.abs(d_eta - exact))),
            )
    w, dw = _w_jacobian(spec, params, data, state, d_eta)
    psi = np.asarray(spec.kernel.score_ratio(w))
    grad = psi @ dw
    grad[spec.sigma_index] -= (data.n - spec.m) / params.sigma
    if not np.all(np.isfinite(grad)):
        raise NumericError("score is not finite")
    return grad


def _finite_difference_hessian(spec, params, data) -> np.ndarray:
    theta0 = params.to_array()
    dim = theta0.size
    eps = np.finfo(float).eps
    hess = np.empty((dim, dim))
    for i in range(dim):
        h = np.cbrt(eps) * max(1.0, abs(theta0[i]))
        if i == spec.sigma_index:
            h = min(h, 0.5 * theta0[i])
        up, down = theta0.copy(), theta0.copy()
        up[i] += h
        down[i] -= h
        g_up = score(spec, ParamVector.from_array(spec, up), data)
        g_down = score(spec, ParamVector.from_array(spec, down), data)
        hess[:, i] = (g_up - g_down) / (2.0 * h)
    return hess


def _analytic_ar_hessian(spec, params, data) -> np.ndarray:
    """Closed-form Hessian for pure-AR dynamics with the logit link."""
    state, d_eta = recursion_jacobian(spec, params, data)
    m, k, sigma, s = spec.m, spec.k, params.sigma, spec.sigma_index
    w, dw = _w_jacobian(spec, params, data, state, d_eta)
    psi = np.asarray(spec.kernel.score_ratio(w))
    dpsi = np.asarray(spec.kernel.score_ratio_deriv(w))
    centred = w - spec.kernel.quantile(spec.tau)

    hess = (dw * dpsi[:, None]).T @ dw
    # second derivatives of w_t weighted by psi(w_t)
    d2w = np.zeros((spec.dim, spec.dim))
    de = d_eta[m:]
    d2w[s, :s] = d2w[:s, s] = (psi @ de[:, :s]) / sigma**2
    d2w[s, s] = 2.0 * (psi @ centred) / sigma**2
    n = data.n
    for i in range(1, spec.p + 1):
        # d^2 eta_t / d beta_l d phi_i = -x_{t-i, l}; d^2 w = -d^2 eta / sigma
        cross = psi @ data.x[m - i : n - i] / sigma if k else np.empty(0)
        d2w[1 : 1 + k, k + i] = cross
        d2w[k + i, 1 : 1 + k] = cross
    hess += d2w
    hess[s, s] += (n - m) / sigma**2
    return hess


def hessian(
    spec: ModelSpec,
    params: ParamVector,
    data: BoundedSeries,
    method: str = "numeric",
) -> np.ndarray:
    """Hessian of the conditional log-likelihood.

    Args:
        spec: Model specification
        params: Parameter vector at which to evaluate
        data: Observed bounded series
        method: "numeric" for central differences of the analytic score, or
            "analytic" for the closed form (pure AR with the logit link only)

    Raises:
        ConsistencyError: If the numeric Hessian is not symmetric within tolerance
    """
    if method == "analytic":
        if spec.q != 0 or spec.link.kind is not LinkKind.LOGIT:
            raise ValueError("the analytic Hessian needs q = 0 and the logit link")
        return _analytic_ar_hessian(spec, params, data)
    if method != "numeric":
        raise ValueError(f"Unknown Hessian method '{method}'")

    hess = _finite_difference_hessian(spec, params, data)
    scale = max(1.0, np.max(np.sum(np.abs(hess), axis=1)))
    asymmetry = np.max(np.abs(hess - hess.T))
    if asymmetry > SYMMETRY_TOL * scale:
        raise ConsistencyError(
            f"finite-difference Hessian asymmetry {asymmetry:.3g} exceeds "
            f"{SYMMETRY_TOL:g} x {scale:.3g}"
        )
    return 0.5 * (hess + hess.T)
