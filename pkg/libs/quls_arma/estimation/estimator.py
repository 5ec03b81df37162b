"""
Conditional maximum-likelihood estimation of QULS-ARMA models.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from langchain_core.runnables import Runnable, RunnableConfig, RunnableLambda
from scipy import stats

from ..distributions.kernel import KernelKind, SymmetricKernel
from ..errors import (
    ConsistencyError,
    DomainError,
    EstimationError,
    NumericError,
    QulsArmaError,
)
from ..model.likelihood import hessian, log_likelihood, score
from ..model.recursion import ar_roots, run_recursion
from ..model.spec import BoundedSeries, ModelSpec, ParamVector
from .optimizer import bfgs_minimize
from .results import FitConfig, FitResult, information_criteria
from .starting_values import initial_values

logger = logging.getLogger(__name__)

CRITERIA = ("aic", "bic", "caic", "hqic")


def _to_params(spec: ModelSpec, z: np.ndarray) -> ParamVector:
    """Map the optimization vector (..., log sigma) back to parameters."""
    values = np.array(z, dtype=float)
    values[-1] = np.exp(values[-1])
    return ParamVector.from_array(spec, values)


def _to_internal(params: ParamVector) -> np.ndarray:
    z = params.to_array()
    z[-1] = np.log(z[-1])
    return z


def _objective(spec: ModelSpec, data: BoundedSeries, use_analytic_score: bool):
    """Negative log-likelihood and its gradient on the (..., log sigma) scale."""

    def fun(z: np.ndarray) -> float:
        try:
            return -log_likelihood(spec, _to_params(spec, z), data)
        except (NumericError, DomainError, FloatingPointError):
            return np.inf

    def analytic_grad(z: np.ndarray) -> np.ndarray:
        params = _to_params(spec, z)
        g = score(spec, params, data)
        g[-1] *= params.sigma
        return -g

    def numeric_grad(z: np.ndarray) -> np.ndarray:
        g = np.empty_like(z)
        for i in range(z.size):
            h = np.cbrt(np.finfo(float).eps) * max(1.0, abs(z[i]))
            up, down = z.copy(), z.copy()
            up[i] += h
            down[i] -= h
            g[i] = (fun(up) - fun(down)) / (2.0 * h)
        if not np.all(np.isfinite(g)):
            raise NumericError("finite-difference gradient is not finite")
        return g

    return fun, analytic_grad if use_analytic_score else numeric_grad


def _standard_errors(
    spec: ModelSpec, params: ParamVector, data: BoundedSeries, method: str
) -> Tuple[np.ndarray, bool]:
    """Square roots of the diagonal of the inverse observed information."""
    nan = np.full(spec.dim, np.nan)
    try:
        info = -hessian(spec, params, data, method=method)
        cov = np.linalg.inv(info)
    except (np.linalg.LinAlgError, NumericError, ConsistencyError) as e:
        logger.warning("standard errors unavailable for %s: %s", spec.describe(), e)
        return nan, False
    variances = np.diag(cov)
    if not np.all(np.isfinite(variances)) or np.any(variances <= 0.0):
        logger.warning("observed information is not positive definite for %s", spec.describe())
        return nan, False
    return np.sqrt(variances), True


def fit(spec: ModelSpec, data: BoundedSeries, config: Optional[FitConfig] = None) -> FitResult:
    """Fit a model with a fixed kernel by conditional maximum likelihood.

    sigma is optimized as log sigma; every other parameter is unconstrained.
    A fit converges when the gradient sup-norm reaches ``grad_tol`` or the
    accepted step falls below ``param_tol``; ``stop_rule`` records which. Any
    other stop returns ``converged=False`` with the best point found.

    Args:
        spec: Model specification (kernel and, for Student-t, its dof fixed)
        data: Observed bounded series
        config: Optimizer settings

    Returns:
        FitResult with estimates, standard errors and information criteria

    Raises:
        EstimationError: If the likelihood is not finite at the starting point
    """
    config = config or FitConfig()
    data.require_length(spec)
    start = config.start_override if config.start_override is not None else initial_values(spec, data)
    start.check(spec)
    fun, grad = _objective(spec, data, config.use_analytic_score)

    try:
        result = bfgs_minimize(
            fun,
            grad,
            _to_internal(start),
            max_iter=config.max_iter,
            grad_tol=config.grad_tol,
            param_tol=config.param_tol,
        )
    except NumericError as e:
        raise EstimationError(f"{spec.describe()}: {e}") from e

    params = _to_params(spec, result.x)
    loglik = -result.fun
    if not result.converged:
        logger.warning(
            "%s did not converge after %d iterations (%s, |grad|=%.3g)",
            spec.describe(), result.iterations, result.message, result.grad_norm,
        )

    std_errors, available = _standard_errors(spec, params, data, config.hessian_method)
    estimates = params.to_array()
    with np.errstate(divide="ignore", invalid="ignore"):
        z_values = estimates / std_errors
    p_values = 2.0 * stats.norm.sf(np.abs(z_values))

    n_eff = data.n - spec.m
    ic = information_criteria(loglik, spec.dim, n_eff)
    fit_result = FitResult(
        spec=spec,
        params=params,
        std_errors=std_errors,
        z_values=z_values,
        p_values=p_values,
        loglik=loglik,
        aic=ic.aic,
        bic=ic.bic,
        caic=ic.caic,
        hqic=ic.hqic,
        converged=result.converged,
        iterations=result.iterations,
        residual_state=run_recursion(spec, params, data),
        n_obs=data.n,
        grad_norm=result.grad_norm,
        message=result.message,
        stop_rule=result.stop_rule,
        selected_nu=spec.kernel.dof if spec.kernel.kind is KernelKind.STUDENT_T else None,
        std_errors_available=available,
        ar_roots=ar_roots(params),
    )
    logger.info(
        "fitted %s: loglik=%.4f aic=%.4f iterations=%d",
        spec.describe(), loglik, ic.aic, result.iterations,
    )
    return fit_result


def fit_student_t(
    spec: ModelSpec, data: BoundedSeries, config: Optional[FitConfig] = None
) -> FitResult:
    """Two-step Student-t fit over a grid of degrees of freedom.

    Every other parameter is fitted for each fixed nu in ``config.nu_grid``;
    the fit with the largest log-likelihood is returned with ``selected_nu``.

    Raises:
        GridFitError: If every grid fit fails
    """
    from ..combiners.nu_grid_combiner import StudentTGridCombiner

    config = config or FitConfig()
    if spec.kernel.kind is not KernelKind.STUDENT_T:
        raise ValueError(f"fit_student_t needs a Student-t kernel, got {spec.kernel.label}")
    if not config.nu_grid:
        raise ValueError("nu_grid must not be empty")

    def _fit_one(nu: float) -> FitResult:
        return fit(spec.with_kernel(SymmetricKernel.student_t(nu)), data, config)

    grid = list(config.nu_grid)
    outcomes = RunnableLambda(_fit_one).batch(
        grid, config={"max_concurrency": config.max_workers}, return_exceptions=True
    )
    return StudentTGridCombiner().invoke({"fits": dict(zip(grid, outcomes))})


def select_order(
    data: BoundedSeries,
    base_spec: ModelSpec,
    orders: Sequence[Tuple[int, int]],
    criterion: str = "aic",
    config: Optional[FitConfig] = None,
) -> List[FitResult]:
    """Fit every (p, q) in ``orders`` and rank the fits by an information criterion.

    Orders whose fit fails are logged and left out of the ranking.

    Raises:
        EstimationError: If no order could be fitted
    """
    if criterion not in CRITERIA:
        raise ValueError(f"criterion must be one of {CRITERIA}, got '{criterion}'")
    estimator = QulsArmaEstimator(base_spec, config)
    fits = []
    for p, q in orders:
        try:
            fits.append(estimator.with_spec(base_spec.with_orders(p, q)).invoke(data))
        except (QulsArmaError, ValueError) as e:
            logger.warning("order (%d, %d) could not be fitted: %s", p, q, e)
    if not fits:
        raise EstimationError(f"none of the orders {list(orders)} could be fitted")
    return sorted(fits, key=lambda f: getattr(f, criterion))


def tau_sweep(
    spec: ModelSpec,
    data: BoundedSeries,
    taus: Sequence[float],
    config: Optional[FitConfig] = None,
) -> Dict[str, Any]:
    """Fit the model at every quantile level in ``taus``.

    Returns:
        Dictionary with the per-tau fits, a per-tau criteria table and the
        averages over all successful levels
    """
    from ..combiners.tau_sweep_combiner import TauSweepCombiner

    config = config or FitConfig()
    taus = [float(tau) for tau in taus]
    if not taus:
        raise ValueError("taus must not be empty")
    estimator = QulsArmaEstimator(spec, config)

    def _fit_at(tau: float) -> FitResult:
        return estimator.with_spec(spec.with_tau(tau)).invoke(data)

    outcomes = RunnableLambda(_fit_at).batch(
        taus, config={"max_concurrency": config.max_workers}, return_exceptions=True
    )
    return TauSweepCombiner().invoke({"fits": dict(zip(taus, outcomes))})


class QulsArmaEstimator(Runnable):
    """Fits a QULS-ARMA model to a bounded series."""

    def __init__(self, spec: ModelSpec, config: Optional[FitConfig] = None):
        """Initialize the estimator.

        Args:
            spec: Model specification; a Student-t kernel triggers the nu grid
            config: Optimizer and grid settings
        """
        self.spec = spec
        self.config = config or FitConfig()

    def with_spec(self, spec: ModelSpec) -> "QulsArmaEstimator":
        return QulsArmaEstimator(spec, self.config)

    @classmethod
    def from_config(cls, spec: ModelSpec, config: Dict[str, Any]) -> "QulsArmaEstimator":
        return cls(spec, FitConfig.from_config(config))

    def invoke(self, data: BoundedSeries, config: Optional[RunnableConfig] = None) -> FitResult:
        """Fit the model to ``data``.

        Args:
            data: Observed bounded series
            config: Optional runnable configuration

        Returns:
            FitResult of the fixed-kernel fit, or of the selected nu for Student-t
        """
        if self.spec.kernel.kind is KernelKind.STUDENT_T and self.config.nu_grid:
            return fit_student_t(self.spec, data, self.config)
        return fit(self.spec, data, self.config)
