"""
Symmetric base distributions (the kernel Z) of the unit-log-symmetric family.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy import special

from ..errors import DomainError
from ._arrays import ArrayLike, as_output

_LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)


class KernelKind(str, Enum):
    NORMAL = "normal"
    STUDENT_T = "t"


def _as_finite(z: ArrayLike, name: str = "z") -> np.ndarray:
    arr = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


@dataclass(frozen=True)
class SymmetricKernel:
    """A standard symmetric density on the real line: normal or Student-t.

    The degrees of freedom of the Student-t kernel are a fixed model constant;
    they are never optimized together with the remaining parameters.

    Args:
        kind: Kernel family
        dof: Degrees of freedom, required for (and only for) the Student-t kernel
    """

    kind: KernelKind = KernelKind.NORMAL
    dof: Optional[float] = None

    def __post_init__(self):
        kind = KernelKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is KernelKind.STUDENT_T:
            if self.dof is None or not np.isfinite(self.dof) or self.dof <= 0:
                raise DomainError("Student-t kernel requires dof > 0")
            object.__setattr__(self, "dof", float(self.dof))
        elif self.dof is not None:
            raise DomainError("dof is only meaningful for the Student-t kernel")

    @classmethod
    def normal(cls) -> "SymmetricKernel":
        return cls(KernelKind.NORMAL)

    @classmethod
    def student_t(cls, dof: float) -> "SymmetricKernel":
        return cls(KernelKind.STUDENT_T, dof)

    @classmethod
    def from_name(cls, name: str, dof: Optional[float] = None) -> "SymmetricKernel":
        """Build a kernel from a CLI/config name ("normal", "t", "student-t")."""
        key = name.strip().lower()
        if key in ("normal", "gaussian", "n"):
            return cls.normal()
        if key in ("t", "student", "student-t", "student_t", "studentt"):
            return cls.student_t(3.0 if dof is None else dof)
        raise ValueError(f"Unknown kernel '{name}'; expected 'normal' or 't'")

    @property
    def is_normal(self) -> bool:
        return self.kind is KernelKind.NORMAL

    @property
    def label(self) -> str:
        return "normal" if self.is_normal else f"t({self.dof:g})"

    def _t_log_const(self) -> float:
        nu = self.dof
        return (
            special.gammaln(0.5 * (nu + 1.0))
            - special.gammaln(0.5 * nu)
            - 0.5 * np.log(nu * np.pi)
        )

    def log_pdf(self, z: ArrayLike) -> ArrayLike:
        """Log density, evaluated directly so that it stays finite for large |z|."""
        z = _as_finite(z)
        if self.is_normal:
            return as_output(-0.5 * z * z - _LOG_SQRT_2PI)
        nu = self.dof
        return as_output(self._t_log_const() - 0.5 * (nu + 1.0) * np.log1p(z * z / nu))

    def pdf(self, z: ArrayLike) -> ArrayLike:
        return as_output(np.exp(self.log_pdf(z)))

    def score_ratio(self, z: ArrayLike) -> ArrayLike:
        """f'(z) / f(z) in closed form."""
        z = _as_finite(z)
        if self.is_normal:
            return as_output(-z)
        nu = self.dof
        return as_output(-(nu + 1.0) * z / (nu + z * z))

    def score_ratio_deriv(self, z: ArrayLike) -> ArrayLike:
        """Derivative of f'/f, i.e. (f'' f - f'^2) / f^2."""
        z = _as_finite(z)
        if self.is_normal:
            return as_output(-np.ones_like(z))
        nu = self.dof
        zz = z * z
        return as_output(-(nu + 1.0) * (nu - zz) / (nu + zz) ** 2)

    def pdf_deriv1(self, z: ArrayLike) -> ArrayLike:
        return as_output(np.asarray(self.pdf(z)) * self.score_ratio(z))

    def pdf_deriv2(self, z: ArrayLike) -> ArrayLike:
        psi = self.score_ratio(z)
        return as_output(np.asarray(self.pdf(z)) * (self.score_ratio_deriv(z) + psi * psi))

    def cdf(self, z: ArrayLike) -> ArrayLike:
        arr = np.asarray(z, dtype=float)
        if np.any(np.isnan(arr)):
            raise DomainError("z must not be NaN")
        if self.is_normal:
            return as_output(special.ndtr(arr))
        return as_output(special.stdtr(self.dof, arr))

    def quantile(self, tau: ArrayLike) -> ArrayLike:
        tau = np.asarray(tau, dtype=float)
        if np.any(~(tau > 0.0) | ~(tau < 1.0)):
            raise DomainError("tau must lie strictly inside (0, 1)")
        if self.is_normal:
            out = special.ndtri(tau)
        else:
            out = special.stdtrit(self.dof, tau)
        # exact zero at the median keeps quls_cdf(q_tau) == tau bit-for-bit
        return as_output(np.where(tau == 0.5, 0.0, out))

    def sample(self, size: int, rng: np.random.Generator) -> np.ndarray:
        if self.is_normal:
            return rng.standard_normal(size)
        return rng.standard_t(self.dof, size)
