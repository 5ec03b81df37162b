"""
Generalized Cox-Snell and quantile residuals with QQ-plot data.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Union

import numpy as np
import pandas as pd
from scipy import special

from ..model.likelihood import w_values
from ..model.spec import BoundedSeries, ModelSpec, ParamVector

logger = logging.getLogger(__name__)

CDF_CLAMP = 1e-12
REFERENCES = ("exp1", "normal")


@dataclass
class ResidualSet:
    """Residuals for t = m+1..n.

    The quantile residual uses the fitted CDF directly: the ULS family is
    continuous, so no randomization is involved.
    """

    gcs: np.ndarray
    rq: np.ndarray
    fitted_cdf: np.ndarray

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"fitted_cdf": self.fitted_cdf, "gcs": self.gcs, "rq": self.rq})


def residuals(spec: ModelSpec, params: ParamVector, data: BoundedSeries) -> ResidualSet:
    """Residuals of a fitted model evaluated at the fitted conditional quantiles."""
    # F_t(y_t) of QULS(q_t, sigma) is the kernel CDF at the standardized w_t
    cdf = np.asarray(spec.kernel.cdf(w_values(spec, params, data)), dtype=float)
    fitted = np.clip(cdf, CDF_CLAMP, 1.0 - CDF_CLAMP)
    return ResidualSet(gcs=-np.log1p(-fitted), rq=special.ndtri(fitted), fitted_cdf=fitted)


def qq_data(values, reference: str = "normal") -> pd.DataFrame:
    """Sorted values paired with reference quantiles at positions (i - 0.5)/n.

    Args:
        values: Residuals
        reference: "exp1" for the unit exponential or "normal" for the standard normal
    """
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise ValueError("qq_data needs at least one value")
    key = reference.lower().replace("_", "")
    if key in ("exp", "exp1", "exponential"):
        key = "exp1"
    elif key in ("normal", "stdnormal", "norm"):
        key = "normal"
    else:
        raise ValueError(f"Unknown reference '{reference}'. Supported: {REFERENCES}")
    positions = (np.arange(1, values.size + 1) - 0.5) / values.size
    theoretical = -np.log1p(-positions) if key == "exp1" else special.ndtri(positions)
    return pd.DataFrame({"theoretical": theoretical, "empirical": np.sort(values)})


def write_qq_svg(panels: Dict[str, pd.DataFrame], path: Union[str, Path]) -> Path:
    """Render QQ panels side by side into a single SVG file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, len(panels), figsize=(4 * len(panels), 4), squeeze=False)
    for ax, (title, frame) in zip(axes[0], panels.items()):
        ax.scatter(frame["theoretical"], frame["empirical"], s=8)
        lo = min(frame["theoretical"].min(), frame["empirical"].min())
        hi = max(frame["theoretical"].max(), frame["empirical"].max())
        ax.plot([lo, hi], [lo, hi], color="grey", linewidth=1)
        ax.set_title(title)
        ax.set_xlabel("Theoretical quantiles")
        ax.set_ylabel("Sample quantiles")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, format="svg")
    plt.close(fig)
    logger.info("wrote QQ panels to %s", path)
    return path
