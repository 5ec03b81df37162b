"""
The static unit-log-symmetric (ULS) distribution on (0, 1).

Two parameterizations are supported: the original (eta, sigma) form, where eta
shifts the logit of the observation, and the quantile form (q_tau, sigma) for a
fixed level tau, in which q_tau is the tau-th quantile of Y.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import special

from ..errors import DomainError
from ._arrays import ArrayLike, as_output
from .kernel import SymmetricKernel


def _check_open_unit(value: float, name: str) -> None:
    if not (0.0 < value < 1.0):
        raise DomainError(f"{name} must lie strictly inside (0, 1), got {value}")


def _check_positive(value: float, name: str) -> None:
    if not (np.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be positive and finite, got {value}")


def _as_observations(y: ArrayLike) -> np.ndarray:
    arr = np.asarray(y, dtype=float)
    if np.any(~(arr > 0.0) | ~(arr < 1.0)):
        raise DomainError("y must lie strictly inside (0, 1)")
    return arr


@dataclass(frozen=True)
class UlsParams:
    eta: float
    sigma: float
    kernel: SymmetricKernel = field(default_factory=SymmetricKernel.normal)

    def __post_init__(self):
        _check_positive(self.eta, "eta")
        _check_positive(self.sigma, "sigma")


@dataclass(frozen=True)
class QulsParams:
    q_tau: float
    sigma: float
    tau: float
    kernel: SymmetricKernel = field(default_factory=SymmetricKernel.normal)

    def __post_init__(self):
        _check_open_unit(self.q_tau, "q_tau")
        _check_positive(self.sigma, "sigma")
        _check_open_unit(self.tau, "tau")

    def to_uls(self) -> UlsParams:
        return UlsParams(
            eta_from_quantile(self.q_tau, self.sigma, self.tau, self.kernel),
            self.sigma,
            self.kernel,
        )


def _uls_z(params: UlsParams, y: np.ndarray) -> np.ndarray:
    return (special.logit(y) - np.log(params.eta)) / params.sigma


def _quls_z(params: QulsParams, y: np.ndarray) -> np.ndarray:
    # same argument as _uls_z after substituting eta(q_tau), without the exp/log round trip
    shift = params.kernel.quantile(params.tau)
    return (special.logit(y) - special.logit(params.q_tau)) / params.sigma + shift


def _log_jacobian(y: np.ndarray, sigma: float) -> np.ndarray:
    return np.log(sigma) + np.log(y) + np.log1p(-y)


def uls_pdf(params: UlsParams, y: ArrayLike) -> ArrayLike:
    y = _as_observations(y)
    log_f = params.kernel.log_pdf(_uls_z(params, y)) - _log_jacobian(y, params.sigma)
    return as_output(np.exp(log_f))


def uls_cdf(params: UlsParams, y: ArrayLike) -> ArrayLike:
    y = _as_observations(y)
    return as_output(params.kernel.cdf(_uls_z(params, y)))


def uls_quantile(params: UlsParams, tau: ArrayLike) -> ArrayLike:
    shift = np.asarray(params.kernel.quantile(tau))
    return as_output(special.expit(np.log(params.eta) + params.sigma * shift))


def eta_from_quantile(
    q_tau: float, sigma: float, tau: float, kernel: Optional[SymmetricKernel] = None
) -> float:
    """Map the tau-th quantile back to the location parameter eta."""
    kernel = kernel or SymmetricKernel.normal()
    _check_open_unit(q_tau, "q_tau")
    _check_positive(sigma, "sigma")
    _check_open_unit(tau, "tau")
    return float(np.exp(special.logit(q_tau) - sigma * kernel.quantile(tau)))


def quls_log_pdf(params: QulsParams, y: ArrayLike) -> ArrayLike:
    y = _as_observations(y)
    log_f = params.kernel.log_pdf(_quls_z(params, y)) - _log_jacobian(y, params.sigma)
    return as_output(log_f)


def quls_pdf(params: QulsParams, y: ArrayLike) -> ArrayLike:
    return as_output(np.exp(quls_log_pdf(params, y)))


def quls_cdf(params: QulsParams, y: ArrayLike) -> ArrayLike:
    y = _as_observations(y)
    return as_output(params.kernel.cdf(_quls_z(params, y)))


def quls_quantile(params: QulsParams, level: ArrayLike) -> ArrayLike:
    """Quantile function of the QULS distribution at an arbitrary level."""
    shift = np.asarray(params.kernel.quantile(level)) - params.kernel.quantile(params.tau)
    return as_output(special.expit(special.logit(params.q_tau) + params.sigma * shift))


def quls_sample(params: QulsParams, count: int, seed: int) -> np.ndarray:
    """Draw from QULS(q_tau, sigma) through the logit representation.

    Each draw is g_inv(g(q_tau) + sigma (Z - Q_Z(tau))) with g the logit link,
    so that P(Y <= q_tau) = P(Z <= Q_Z(tau)) = tau exactly. Draws come from a
    counter-based Philox stream seeded with ``seed``.
    """
    if count < 1:
        raise ValueError(f"count must be a positive integer, got {count}")
    rng = np.random.Generator(np.random.Philox(seed))
    z = params.kernel.sample(count, rng)
    eta = special.logit(params.q_tau)
    shift = params.kernel.quantile(params.tau)
    return special.expit(eta + params.sigma * (z - shift))


def uls_sample(params: UlsParams, count: int, seed: int) -> np.ndarray:
    if count < 1:
        raise ValueError(f"count must be a positive integer, got {count}")
    rng = np.random.Generator(np.random.Philox(seed))
    z = params.kernel.sample(count, rng)
    return special.expit(np.log(params.eta) + params.sigma * z)
