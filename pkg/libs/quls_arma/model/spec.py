"""
Domain types of the QULS-ARMA(p, q) model.
"""

from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence

import numpy as np

from ..distributions.kernel import SymmetricKernel
from ..distributions.link import LinkFunction
from ..errors import DomainError, InsufficientDataError


@dataclass(frozen=True)
class ModelSpec:
    """Orders, covariate count, link, kernel and quantile level of a model.

    Args:
        p: Autoregressive order
        q: Moving-average order
        k: Number of exogenous covariates
        link: Link applied to the conditional quantile
        kernel: Symmetric kernel of the ULS distribution
        tau: Quantile level tracked by the recursion
    """

    p: int = 1
    q: int = 0
    k: int = 0
    link: LinkFunction = field(default_factory=LinkFunction)
    kernel: SymmetricKernel = field(default_factory=SymmetricKernel.normal)
    tau: float = 0.5

    def __post_init__(self):
        for name in ("p", "q", "k"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value}")
        if self.p + self.q < 1 and self.k < 1:
            raise ValueError("the model needs p + q >= 1 or at least one covariate")
        if not (0.0 < self.tau < 1.0):
            raise DomainError(f"tau must lie strictly inside (0, 1), got {self.tau}")

    @property
    def m(self) -> int:
        return max(self.p, self.q)

    @property
    def dim(self) -> int:
        return 1 + self.k + self.p + self.q + 1

    @property
    def param_names(self) -> List[str]:
        return (
            ["alpha"]
            + [f"beta{i}" for i in range(1, self.k + 1)]
            + [f"phi{i}" for i in range(1, self.p + 1)]
            + [f"theta{j}" for j in range(1, self.q + 1)]
            + ["sigma"]
        )

    @property
    def sigma_index(self) -> int:
        return self.dim - 1

    def with_kernel(self, kernel: SymmetricKernel) -> "ModelSpec":
        return replace(self, kernel=kernel)

    def with_tau(self, tau: float) -> "ModelSpec":
        return replace(self, tau=tau)

    def with_orders(self, p: int, q: int) -> "ModelSpec":
        return replace(self, p=p, q=q)

    def describe(self) -> str:
        return (
            f"QULS-ARMA({self.p},{self.q}) k={self.k} link={self.link.name} "
            f"kernel={self.kernel.label} tau={self.tau:g}"
        )


@dataclass
class ParamVector:
    """The full parameter vector (alpha, beta, phi, theta, sigma)."""

    alpha: float
    beta: np.ndarray
    phi: np.ndarray
    theta: np.ndarray
    sigma: float

    def __post_init__(self):
        self.alpha = float(self.alpha)
        self.sigma = float(self.sigma)
        self.beta = np.atleast_1d(np.asarray(self.beta, dtype=float)).copy()
        self.phi = np.atleast_1d(np.asarray(self.phi, dtype=float)).copy()
        self.theta = np.atleast_1d(np.asarray(self.theta, dtype=float)).copy()
        if not np.all(np.isfinite(self.to_array())):
            raise DomainError("all parameters must be finite")
        if self.sigma <= 0.0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")

    @classmethod
    def from_array(cls, spec: ModelSpec, values: Sequence[float]) -> "ParamVector":
        values = np.asarray(values, dtype=float)
        if values.shape != (spec.dim,):
            raise ValueError(f"expected {spec.dim} parameters, got shape {values.shape}")
        k, p, q = spec.k, spec.p, spec.q
        return cls(
            alpha=values[0],
            beta=values[1 : 1 + k],
            phi=values[1 + k : 1 + k + p],
            theta=values[1 + k + p : 1 + k + p + q],
            sigma=values[-1],
        )

    def to_array(self) -> np.ndarray:
        return np.concatenate(([self.alpha], self.beta, self.phi, self.theta, [self.sigma]))

    def check(self, spec: ModelSpec) -> None:
        if (len(self.beta), len(self.phi), len(self.theta)) != (spec.k, spec.p, spec.q):
            raise ValueError(
                f"parameter sizes (k={len(self.beta)}, p={len(self.phi)}, "
                f"q={len(self.theta)}) do not match {spec.describe()}"
            )

    def as_dict(self, spec: ModelSpec) -> dict:
        return dict(zip(spec.param_names, self.to_array().tolist()))


@dataclass
class BoundedSeries:
    """Observations in (0, 1) with an aligned covariate matrix.

    Args:
        y: Observations, each strictly inside (0, 1)
        x: Covariate matrix with one row per observation (n x k)
        labels: Optional timestamps or row labels
        covariate_names: Optional names of the covariate columns
    """

    y: np.ndarray
    x: Optional[np.ndarray] = None
    labels: Optional[Sequence] = None
    covariate_names: Optional[List[str]] = None

    def __post_init__(self):
        self.y = np.asarray(self.y, dtype=float).ravel()
        n = self.y.size
        if self.x is None:
            self.x = np.empty((n, 0))
        self.x = np.asarray(self.x, dtype=float)
        if self.x.ndim == 1:
            self.x = self.x.reshape(-1, 1)
        if self.x.shape[0] != n:
            raise ValueError(f"covariates have {self.x.shape[0]} rows for {n} observations")
        bad = np.flatnonzero(~(self.y > 0.0) | ~(self.y < 1.0))
        if bad.size:
            raise DomainError(
                f"observations must lie strictly inside (0, 1); offending t: "
                f"{(bad[:10] + 1).tolist()}"
            )
        if not np.all(np.isfinite(self.x)):
            raise DomainError("covariates must be finite")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError(f"{len(self.labels)} labels for {n} observations")
        if self.covariate_names is None:
            self.covariate_names = [f"x{i}" for i in range(1, self.k + 1)]

    @property
    def n(self) -> int:
        return self.y.size

    @property
    def k(self) -> int:
        return self.x.shape[1]

    def __len__(self) -> int:
        return self.n

    def head(self, n: int) -> "BoundedSeries":
        return self._slice(slice(0, n))

    def tail(self, n: int) -> "BoundedSeries":
        return self._slice(slice(self.n - n, self.n))

    def split(self, holdout: int):
        """Split into (training, holdout) with the last ``holdout`` rows held out."""
        if holdout < 0 or holdout >= self.n:
            raise ValueError(f"holdout must be in [0, {self.n}), got {holdout}")
        return self.head(self.n - holdout), self.tail(holdout)

    def _slice(self, sl: slice) -> "BoundedSeries":
        labels = None if self.labels is None else list(self.labels)[sl]
        return BoundedSeries(self.y[sl], self.x[sl], labels, list(self.covariate_names))

    def require_length(self, spec: ModelSpec) -> None:
        if self.n <= spec.m:
            raise InsufficientDataError(
                f"series of length {self.n} is too short for m = max(p, q) = {spec.m}"
            )
        if self.k != spec.k:
            raise ValueError(f"series has {self.k} covariates, model expects {spec.k}")


@dataclass
class RecursionState:
    """Linked quantiles, quantiles and link-scale innovations of a recursion run."""

    eta: np.ndarray
    q_tau: np.ndarray
    r: np.ndarray
    m: int

    @property
    def n(self) -> int:
        return self.eta.size
