"""
Simulation of QULS-ARMA series with harmonic covariates and a burn-in period.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy import special

from ..distributions.link import LinkKind
from ..errors import SimulationError
from ..model.spec import BoundedSeries, ModelSpec, ParamVector

logger = logging.getLogger(__name__)

DEFAULT_BURN_IN = 50
DEFAULT_PERIOD = 12
MIN_LENGTH = 30
INIT_LOW, INIT_HIGH = 0.3, 0.7


def harmonic_covariates(n_total: int, period: int = DEFAULT_PERIOD) -> np.ndarray:
    """Rows (cos(2 pi t / period), sin(2 pi t / period)) for t = 1..n_total."""
    if int(n_total) != n_total or n_total < 1:
        raise ValueError(f"n_total must be a positive integer, got {n_total}")
    if int(period) != period or period < 1:
        raise ValueError(f"period must be a positive integer, got {period}")
    angle = 2.0 * np.pi * np.arange(1, n_total + 1) / period
    x = np.column_stack((np.cos(angle), np.sin(angle)))
    # snap rounding noise so full and quarter cycles are exact
    x[np.abs(x) < 1e-12] = 0.0
    return x


@dataclass
class ScenarioConfig:
    """A data-generating configuration.

    Args:
        name: Scenario label ("S1".."S4" or "Custom")
        spec: Model specification (k must be 0 or 2 unless covariates are given)
        true_params: Parameters of the data-generating process
        n: Number of retained observations
        burn_in: Number of leading observations discarded
        seed: Seed of the Philox stream
        period: Period of the harmonic covariates
        covariates: Optional (n + burn_in) x k covariate matrix replacing the harmonics
    """

    name: str
    spec: ModelSpec
    true_params: ParamVector
    n: int = 400
    burn_in: int = DEFAULT_BURN_IN
    seed: int = 0
    period: int = DEFAULT_PERIOD
    covariates: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        self.true_params.check(self.spec)
        if self.n < MIN_LENGTH:
            raise ValueError(f"n must be at least {MIN_LENGTH}, got {self.n}")
        if self.burn_in < self.spec.m:
            raise ValueError(f"burn_in must be at least m = {self.spec.m}, got {self.burn_in}")
        if self.covariates is not None:
            self.covariates = np.asarray(self.covariates, dtype=float).reshape(self.n + self.burn_in, -1)
            if self.covariates.shape[1] != self.spec.k:
                raise ValueError(
                    f"covariates have {self.covariates.shape[1]} columns, model expects {self.spec.k}"
                )
        elif self.spec.k not in (0, 2):
            raise ValueError(f"harmonic covariates give k = 2, model expects k = {self.spec.k}")

    @property
    def n_total(self) -> int:
        return self.n + self.burn_in

    def with_seed(self, seed: int) -> "ScenarioConfig":
        return replace(self, seed=seed)

    def with_size(self, n: int) -> "ScenarioConfig":
        return replace(self, n=n, covariates=None)

    def design(self) -> np.ndarray:
        if self.covariates is not None:
            return self.covariates
        if self.spec.k == 0:
            return np.empty((self.n_total, 0))
        return harmonic_covariates(self.n_total, self.period)


@dataclass
class SimulatedPath:
    """A generated series with the latent quantities of its retained window."""

    series: BoundedSeries
    eta: np.ndarray
    q_tau: np.ndarray
    r: np.ndarray


def simulate_path(cfg: ScenarioConfig) -> SimulatedPath:
    """Generate a series and keep its linked quantiles and innovations.

    y_1..y_m are drawn uniformly on (0.3, 0.7) with r = 0; for later t,
    eta_t follows the quantile recursion and

        y_t = logit^{-1}(logit(q_t) + sigma (Z_t - Q_Z(tau))),  q_t = g^{-1}(eta_t),

    so the conditional tau-quantile of y_t is q_t. The first ``burn_in``
    observations are discarded.

    Raises:
        SimulationError: If eta_t overflows or y_t leaves (0, 1)
    """
    spec, params = cfg.spec, cfg.true_params
    rng = np.random.Generator(np.random.Philox(cfg.seed))
    m, n_total = spec.m, cfg.n_total
    x = cfg.design()
    xb = x @ params.beta if spec.k else np.zeros(n_total)
    shift = spec.kernel.quantile(spec.tau)
    logit_link = spec.link.kind is LinkKind.LOGIT

    y = np.empty(n_total)
    y[:m] = rng.uniform(INIT_LOW, INIT_HIGH, m)
    z = spec.kernel.sample(n_total - m, rng)
    gy = np.zeros(n_total)
    gy[:m] = spec.link.g(y[:m])
    eta = gy.copy()
    r = np.zeros(n_total)

    with np.errstate(over="ignore", invalid="ignore"):
        for t in range(m, n_total):
            value = params.alpha + xb[t]
            for i, phi in enumerate(params.phi, start=1):
                value += phi * (gy[t - i] - xb[t - i])
            for j, theta in enumerate(params.theta, start=1):
                value += theta * r[t - j]
            if not np.isfinite(value):
                raise SimulationError("linked quantile overflowed", t=t + 1)
            eta[t] = value
            location = value if logit_link else special.logit(spec.link.g_inv(value))
            y_t = special.expit(location + params.sigma * (z[t - m] - shift))
            if not (0.0 < y_t < 1.0):
                raise SimulationError("simulated value left the open unit interval", t=t + 1)
            y[t] = y_t
            gy[t] = spec.link.g(y_t)
            r[t] = gy[t] - value

    keep = slice(cfg.burn_in, n_total)
    series = BoundedSeries(y[keep], x[keep])
    q_tau = np.asarray(spec.link.g_inv(eta[keep]), dtype=float)
    logger.debug("simulated %s n=%d seed=%d", cfg.name, cfg.n, cfg.seed)
    return SimulatedPath(series=series, eta=eta[keep], q_tau=q_tau, r=r[keep])


def generate_series(cfg: ScenarioConfig) -> BoundedSeries:
    """Generate the retained window of a scenario; deterministic given ``cfg.seed``."""
    return simulate_path(cfg).series
