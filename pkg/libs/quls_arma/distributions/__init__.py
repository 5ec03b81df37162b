"""
Distribution components: symmetric kernels, link functions and the ULS family.
"""

from .kernel import KernelKind, SymmetricKernel
from .link import LinkFunction, LinkKind
from .uls import (
    QulsParams,
    UlsParams,
    eta_from_quantile,
    quls_cdf,
    quls_log_pdf,
    quls_pdf,
    quls_quantile,
    quls_sample,
    uls_cdf,
    uls_pdf,
    uls_quantile,
    uls_sample,
)

__all__ = [
    "KernelKind",
    "SymmetricKernel",
    "LinkFunction",
    "LinkKind",
    "QulsParams",
    "UlsParams",
    "eta_from_quantile",
    "quls_cdf",
    "quls_log_pdf",
    "quls_pdf",
    "quls_quantile",
    "quls_sample",
    "uls_cdf",
    "uls_pdf",
    "uls_quantile",
    "uls_sample",
]
