"""
Fit configuration, fit results and information criteria.
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..errors import DegenerateSampleError
from ..model.spec import ModelSpec, ParamVector, RecursionState

DEFAULT_NU_GRID: Tuple[float, ...] = (3, 4, 5, 6, 7, 8, 10, 12, 15, 20, 30)


@dataclass
class FitConfig:
    """Optimizer and grid settings for conditional maximum likelihood.

    Args:
        max_iter: Maximum number of BFGS iterations
        grad_tol: Sup-norm gradient tolerance on the optimization scale (log sigma)
        param_tol: Step-size tolerance on the optimization scale
        nu_grid: Candidate Student-t degrees of freedom for the two-step fit
        start_override: Starting point used instead of least-squares start values
        use_analytic_score: Use the analytic score (otherwise central differences)
        hessian_method: "numeric" or "analytic" (pure AR, logit link)
        max_workers: Concurrency of grid fits
    """

    max_iter: int = 500
    grad_tol: float = 1e-6
    param_tol: float = 1e-10
    nu_grid: Sequence[float] = DEFAULT_NU_GRID
    start_override: Optional[ParamVector] = None
    use_analytic_score: bool = True
    hessian_method: str = "numeric"
    max_workers: int = 1

    def __post_init__(self):
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError(f"max_iter must be a positive integer, got {self.max_iter}")
        if not (self.grad_tol > 0 and self.param_tol > 0):
            raise ValueError("tolerances must be positive")
        self.nu_grid = tuple(float(nu) for nu in self.nu_grid)
        if any(not nu > 0 for nu in self.nu_grid):
            raise ValueError("nu_grid entries must be positive")
        if self.max_workers < 1:
            raise ValueError(f"max_workers must be at least 1, got {self.max_workers}")

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> "FitConfig":
        """Create a FitConfig from a flat configuration dictionary."""
        kwargs = {}
        if config.get("max_iter") is not None:
            kwargs["max_iter"] = int(config["max_iter"])
        if config.get("grad_tol") is not None:
            kwargs["grad_tol"] = float(config["grad_tol"])
        if config.get("param_tol") is not None:
            kwargs["param_tol"] = float(config["param_tol"])
        if config.get("nu_grid"):
            grid = config["nu_grid"]
            if isinstance(grid, str):
                grid = [value for value in grid.split(",") if value.strip()]
            kwargs["nu_grid"] = [float(value) for value in grid]
        if config.get("max_workers") is not None:
            kwargs["max_workers"] = int(config["max_workers"])
        if config.get("hessian_method"):
            kwargs["hessian_method"] = str(config["hessian_method"])
        return cls(**kwargs)


class InformationCriteria(NamedTuple):
    aic: float
    bic: float
    caic: float
    hqic: float


def information_criteria(loglik: float, dim: int, n_eff: float) -> InformationCriteria:
    """AIC, BIC, CAIC and HQIC for a fit with ``dim`` parameters.

    Args:
        loglik: Maximized conditional log-likelihood
        dim: Number of estimated parameters
        n_eff: Effective sample size n - m

    Raises:
        DegenerateSampleError: If n_eff <= dim
    """
    if dim < 1:
        raise ValueError(f"dim must be positive, got {dim}")
    if n_eff <= dim:
        raise DegenerateSampleError(f"effective sample {n_eff} is not larger than dimension {dim}")
    log_n = math.log(n_eff)
    deviance = -2.0 * loglik
    return InformationCriteria(
        aic=deviance + 2.0 * dim,
        bic=deviance + dim * log_n,
        caic=deviance + dim * (log_n + 1.0),
        hqic=deviance + 2.0 * dim * math.log(log_n),
    )


@dataclass
class FitResult:
    """Outcome of a conditional maximum-likelihood fit."""

    spec: ModelSpec
    params: ParamVector
    std_errors: np.ndarray
    z_values: np.ndarray
    p_values: np.ndarray
    loglik: float
    aic: float
    bic: float
    caic: float
    hqic: float
    converged: bool
    iterations: int
    residual_state: RecursionState
    n_obs: int
    grad_norm: float
    message: str = ""
    stop_rule: str = ""
    selected_nu: Optional[float] = None
    std_errors_available: bool = True
    ar_roots: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=complex))
    nu_profile: Dict[float, float] = field(default_factory=dict)

    @property
    def n_eff(self) -> int:
        return self.n_obs - self.spec.m

    @property
    def criteria(self) -> InformationCriteria:
        return InformationCriteria(self.aic, self.bic, self.caic, self.hqic)

    def summary_table(self) -> pd.DataFrame:
        """Estimate / Std. Error / z value / Pr(>|z|) table, one row per parameter."""
        return pd.DataFrame(
            {
                "Parameter": self.spec.param_names,
                "Estimate": self.params.to_array(),
                "Std. Error": self.std_errors,
                "z value": self.z_values,
                "Pr(>|z|)": self.p_values,
            }
        )

    def to_dict(self) -> Dict[str, Any]:
        def _clean(values):
            return [None if not np.isfinite(v) else float(v) for v in np.asarray(values, dtype=float)]

        return {
            "model": {
                "p": self.spec.p,
                "q": self.spec.q,
                "k": self.spec.k,
                "link": self.spec.link.name,
                "kernel": self.spec.kernel.kind.value,
                "dof": self.spec.kernel.dof,
                "tau": self.spec.tau,
            },
            "parameters": self.spec.param_names,
            "estimates": _clean(self.params.to_array()),
            "std_errors": _clean(self.std_errors),
            "z_values": _clean(self.z_values),
            "p_values": _clean(self.p_values),
            "std_errors_available": self.std_errors_available,
            "loglik": self.loglik,
            "aic": self.aic,
            "bic": self.bic,
            "caic": self.caic,
            "hqic": self.hqic,
            "n_obs": self.n_obs,
            "n_eff": self.n_eff,
            "converged": self.converged,
            "iterations": self.iterations,
            "grad_norm": self.grad_norm,
            "message": self.message,
            "stop_rule": self.stop_rule,
            "selected_nu": self.selected_nu,
            "nu_profile": {f"{nu:g}": ll for nu, ll in self.nu_profile.items()},
            "ar_root_moduli": _clean(np.abs(self.ar_roots)),
            "fitted_quantile": _clean(self.residual_state.q_tau),
            "link_residuals": _clean(self.residual_state.r),
        }

    def to_json(self, path: Union[str, Path]) -> None:
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)
