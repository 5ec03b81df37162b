"""
Run configuration: flat KEY=value files, environment defaults and CLI overrides.
"""

import logging
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
from dotenv import dotenv_values

from ..distributions.kernel import SymmetricKernel
from ..distributions.link import LinkFunction
from ..estimation.results import DEFAULT_NU_GRID, FitConfig
from ..model.spec import ModelSpec

logger = logging.getLogger(__name__)

COMMANDS = ("fit", "simulate", "forecast", "mc", "diagnose", "tau-sweep")
DEFAULT_TAU_GRID: Tuple[float, ...] = tuple(np.round(np.arange(1, 100) / 100.0, 2))


def parse_model(text: str) -> Tuple[int, int]:
    """Parse "arma:P,Q" (or "ar:P", "ma:Q") into orders (p, q)."""
    kind, _, orders = text.strip().lower().partition(":")
    try:
        values = [int(v) for v in orders.split(",") if v.strip()]
    except ValueError:
        raise ValueError(f"model must look like arma:P,Q, got '{text}'") from None
    if kind == "arma" and len(values) == 2:
        return values[0], values[1]
    if kind == "ar" and len(values) == 1:
        return values[0], 0
    if kind == "ma" and len(values) == 1:
        return 0, values[0]
    raise ValueError(f"model must look like arma:P,Q, got '{text}'")


def parse_float_list(text: str) -> Tuple[float, ...]:
    """Parse "a,b,c" or a range "start:stop:step" (stop included)."""
    text = text.strip()
    if ":" in text:
        start, stop, step = (float(v) for v in text.split(":"))
        if step <= 0:
            raise ValueError(f"range step must be positive, got {step}")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return tuple(np.round(start + step * np.arange(count), 10))
    return tuple(float(v) for v in text.split(",") if v.strip())


def _parse_bool(value: Union[str, bool]) -> bool:
    if isinstance(value, bool):
        return value
    lowered = str(value).strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off", ""):
        return False
    raise ValueError(f"expected a boolean, got '{value}'")


@dataclass
class RunConfig:
    """Validated configuration of one CLI run."""

    command: str = "fit"
    input: Optional[str] = None
    out: str = "quls_output"
    model: Tuple[int, int] = (1, 0)
    kernel: str = "normal"
    nu_grid: Tuple[float, ...] = DEFAULT_NU_GRID
    nu: Optional[float] = None
    tau: float = 0.5
    tau_grid: Tuple[float, ...] = DEFAULT_TAU_GRID
    link: str = "logit"
    harmonics: Optional[int] = None
    crisis: bool = False
    crisis_file: Optional[str] = None
    holdout: Optional[int] = None
    horizon: Optional[int] = None
    seed: int = 0
    reps: int = 200
    burn_in: int = 50
    n: int = 400
    scenario: str = "S1"
    max_iter: int = 500
    grad_tol: float = 1e-6
    param_tol: float = 1e-10
    max_workers: int = 1
    qq_svg: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command '{self.command}'. Supported: {COMMANDS}")
        if isinstance(self.model, str):
            self.model = parse_model(self.model)
        for name in ("nu_grid", "tau_grid"):
            value = getattr(self, name)
            if isinstance(value, str):
                setattr(self, name, parse_float_list(value))
        for name in ("seed", "reps", "burn_in", "n", "max_iter", "max_workers"):
            setattr(self, name, int(getattr(self, name)))
        for name in ("harmonics", "horizon", "holdout"):
            value = getattr(self, name)
            if value not in (None, ""):
                setattr(self, name, int(value))
            else:
                setattr(self, name, None)
        for name in ("tau", "grad_tol", "param_tol"):
            setattr(self, name, float(getattr(self, name)))
        if self.nu not in (None, ""):
            self.nu = float(self.nu)
        else:
            self.nu = None
        if self.crisis_file in ("", None):
            self.crisis_file = None
        else:
            self.crisis_file = str(self.crisis_file)
            self.crisis = True
        self.crisis = _parse_bool(self.crisis)
        self.qq_svg = _parse_bool(self.qq_svg)
        self.kernel = self.kernel.lower()
        if not all(0.0 < tau < 1.0 for tau in (self.tau, *self.tau_grid)):
            raise ValueError("tau values must lie strictly inside (0, 1)")
        if self.holdout is not None and self.holdout < 0:
            raise ValueError(f"holdout must be non-negative, got {self.holdout}")

    @classmethod
    def keys(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def symmetric_kernel(self) -> SymmetricKernel:
        if self.kernel in ("t", "student-t", "student_t"):
            return SymmetricKernel.student_t(self.nu or (self.nu_grid[0] if self.nu_grid else 3.0))
        return SymmetricKernel.from_name(self.kernel)

    def model_spec(self, k: int) -> ModelSpec:
        p, q = self.model
        return ModelSpec(
            p=p, q=q, k=k, link=LinkFunction.from_name(self.link), kernel=self.symmetric_kernel(), tau=self.tau
        )

    def fit_config(self) -> FitConfig:
        # a fixed nu turns the grid search off
        grid = () if self.nu is not None else self.nu_grid
        return FitConfig(
            max_iter=self.max_iter,
            grad_tol=self.grad_tol,
            param_tol=self.param_tol,
            nu_grid=grid,
            max_workers=self.max_workers,
        )


def read_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """Read a flat KEY=value file; keys are case-insensitive, '-' equals '_'.

    Raises:
        ValueError: On keys that are not configuration settings
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    raw = dotenv_values(path)
    values = {}
    known = RunConfig.keys()
    for key, value in raw.items():
        name = key.strip().lower().replace("-", "_")
        if name not in known:
            raise ValueError(f"Unknown config key '{key}' in {path}")
        values[name] = value
    return values


def environment_defaults() -> Dict[str, Any]:
    return {
        "out": os.getenv("QULS_OUTPUT_DIR", "quls_output"),
        "max_workers": int(os.getenv("QULS_MAX_WORKERS", "1")),
    }


def build_run_config(
    command: str,
    overrides: Optional[Dict[str, Any]] = None,
    config_file: Optional[Union[str, Path]] = None,
) -> RunConfig:
    """Merge environment defaults, a config file and CLI overrides, in that order."""
    merged: Dict[str, Any] = environment_defaults()
    if config_file is not None:
        merged.update(read_config_file(config_file))
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    merged["command"] = command
    logger.debug("run configuration: %s", merged)
    return RunConfig(**merged)
