"""
BFGS quasi-Newton minimizer with a backtracking Armijo line search.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import ConsistencyError, EstimationError

logger = logging.getLogger(__name__)


@dataclass
class OptimizeResult:
    x: np.ndarray
    fun: float
    grad: np.ndarray
    iterations: int
    converged: bool
    message: str
    evaluations: int
    stop_rule: str = "max_iter"

    @property
    def grad_norm(self) -> float:
        return float(np.max(np.abs(self.grad))) if self.grad.size else 0.0


def bfgs_minimize(
    fun: Callable[[np.ndarray], float],
    grad: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    max_iter: int = 500,
    grad_tol: float = 1e-6,
    param_tol: float = 1e-10,
    c1: float = 1e-4,
    shrink: float = 0.5,
    max_backtracks: int = 60,
    max_step: float = 5.0,
    callback: Optional[Callable[[int, np.ndarray, float], None]] = None,
) -> OptimizeResult:
    """Minimize ``fun`` starting from ``x0``.

    ``fun`` may return ``inf`` for infeasible points; the line search then
    backtracks. A step is accepted only if it satisfies the Armijo condition,
    so the objective never increases between iterations.

    Args:
        fun: Objective
        grad: Gradient of the objective
        x0: Starting point
        max_iter: Maximum number of BFGS iterations
        grad_tol: Convergence threshold on the sup-norm of the gradient
        param_tol: Stop when the sup-norm of the accepted step falls below this
        c1: Armijo sufficient-decrease constant
        shrink: Backtracking factor
        max_backtracks: Maximum step halvings per line search
        max_step: Cap on the sup-norm of the first trial step
        callback: Called as callback(iteration, x, f) after each accepted step

    Returns:
        OptimizeResult with the best point found. ``converged`` is set when the
        gradient or the step criterion stopped the iteration; ``stop_rule`` names
        the rule that fired (``gradient``, ``step``, ``max_iter`` or ``line_search``)
    """
    x = np.asarray(x0, dtype=float).copy()
    dim = x.size
    f = fun(x)
    evaluations = 1
    if not np.isfinite(f):
        raise EstimationError("objective is not finite at the starting point")
    g = grad(x)
    inv_hess = np.eye(dim)
    fresh = True
    message = "maximum number of iterations reached"
    stop_rule = "max_iter"
    iteration = 0

    while iteration < max_iter:
        if np.max(np.abs(g)) <= grad_tol:
            message, stop_rule = "gradient below tolerance", "gradient"
            break
        direction = -inv_hess @ g
        slope = float(g @ direction)
        if not slope < 0.0:
            inv_hess, fresh = np.eye(dim), True
            direction = -g
            slope = float(g @ direction)
        longest = np.max(np.abs(direction))
        if longest > max_step:
            direction *= max_step / longest
            slope *= max_step / longest

        step, accepted = 1.0, False
        for _ in range(max_backtracks):
            x_new = x + step * direction
            f_new = fun(x_new)
            evaluations += 1
            if np.isfinite(f_new) and f_new <= f + c1 * step * slope:
                accepted = True
                break
            step *= shrink
        if not accepted:
            if not fresh:
                logger.debug("line search failed at iteration %d; resetting curvature", iteration)
                inv_hess, fresh = np.eye(dim), True
                continue
            message, stop_rule = "line search could not decrease the objective", "line_search"
            break
        if f_new > f:
            raise ConsistencyError(f"accepted step increased the objective at iteration {iteration}")

        iteration += 1
        g_new = grad(x_new)
        s, y = x_new - x, g_new - g
        x, f, g = x_new, f_new, g_new
        if callback is not None:
            callback(iteration, x, f)
        logger.debug("iteration %d: f=%.10g |g|=%.3g step=%.3g", iteration, f, np.max(np.abs(g)), step)

        if np.max(np.abs(s)) <= param_tol:
            message, stop_rule = "step below tolerance", "step"
            break
        sy = float(s @ y)
        if sy > 1e-12 * np.linalg.norm(s) * np.linalg.norm(y):
            if fresh:
                inv_hess = (sy / float(y @ y)) * np.eye(dim)
                fresh = False
            rho = 1.0 / sy
            left = np.eye(dim) - rho * np.outer(s, y)
            inv_hess = left @ inv_hess @ left.T + rho * np.outer(s, s)

    if stop_rule != "gradient" and (not dim or np.max(np.abs(g)) <= grad_tol):
        message, stop_rule = "gradient below tolerance", "gradient"
    converged = stop_rule in ("gradient", "step")
    return OptimizeResult(
        x=x,
        fun=float(f),
        grad=g,
        iterations=iteration,
        converged=converged,
        message=message,
        evaluations=evaluations,
        stop_rule=stop_rule,
    )
