"""
Link functions g: (0, 1) -> R used by the quantile recursion.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import special

from ..errors import DomainError
from ._arrays import ArrayLike, as_output

# g_inv output is kept inside [EPS, 1 - EPS] so log(y (1 - y)) stays finite
EPS = np.finfo(float).eps


class LinkKind(str, Enum):
    LOGIT = "logit"
    PROBIT = "probit"
    CLOGLOG = "cloglog"


def _as_unit(u: ArrayLike) -> np.ndarray:
    arr = np.asarray(u, dtype=float)
    if np.any(~(arr > 0.0) | ~(arr < 1.0)):
        raise DomainError("argument must lie strictly inside (0, 1)")
    return arr


@dataclass(frozen=True)
class LinkFunction:
    """Strictly increasing link with inverse and first derivative."""

    kind: LinkKind = LinkKind.LOGIT

    def __post_init__(self):
        object.__setattr__(self, "kind", LinkKind(self.kind))

    @classmethod
    def from_name(cls, name: str) -> "LinkFunction":
        try:
            return cls(LinkKind(name.strip().lower()))
        except ValueError:
            raise ValueError(
                f"Unknown link '{name}'; expected one of logit, probit, cloglog"
            ) from None

    @property
    def name(self) -> str:
        return self.kind.value

    def g(self, u: ArrayLike) -> ArrayLike:
        u = _as_unit(u)
        if self.kind is LinkKind.LOGIT:
            return as_output(special.logit(u))
        if self.kind is LinkKind.PROBIT:
            return as_output(special.ndtri(u))
        return as_output(np.log(-np.log1p(-u)))

    def g_inv(self, eta: ArrayLike) -> ArrayLike:
        eta = np.asarray(eta, dtype=float)
        if not np.all(np.isfinite(eta)):
            raise DomainError("eta must be finite")
        if self.kind is LinkKind.LOGIT:
            out = special.expit(eta)
        elif self.kind is LinkKind.PROBIT:
            out = special.ndtr(eta)
        else:
            out = -np.expm1(-np.exp(eta))
        return as_output(np.clip(out, EPS, 1.0 - EPS))

    def g_deriv(self, u: ArrayLike) -> ArrayLike:
        u = _as_unit(u)
        if self.kind is LinkKind.LOGIT:
            return as_output(1.0 / (u * (1.0 - u)))
        if self.kind is LinkKind.PROBIT:
            z = special.ndtri(u)
            return as_output(np.sqrt(2.0 * np.pi) * np.exp(0.5 * z * z))
        return as_output(-1.0 / ((1.0 - u) * np.log1p(-u)))
