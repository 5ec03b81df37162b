"""
Monte Carlo performance measures: relative bias, absolute relative bias and RMSE.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from langchain_core.runnables import Runnable, RunnableConfig

from ..errors import ConsistencyError

logger = logging.getLogger(__name__)

MEASURES = ("rb", "arb", "rmse")


@dataclass(frozen=True)
class McSummary:
    """RB, ARB and RMSE of one parameter over the usable replications."""

    parameter: str
    true_value: float
    mean_estimate: float
    rb: float
    arb: float
    rmse: float
    replications_used: int
    failures: int

    @property
    def replications(self) -> int:
        return self.replications_used + self.failures

    def as_dict(self) -> Dict[str, Any]:
        return {
            "parameter": self.parameter,
            "true_value": self.true_value,
            "mean_estimate": self.mean_estimate,
            "rb": self.rb,
            "arb": self.arb,
            "rmse": self.rmse,
            "replications_used": self.replications_used,
            "failures": self.failures,
        }


def summarize_estimates(
    estimates: np.ndarray,
    truth: Sequence[float],
    names: Sequence[str],
    failures: int = 0,
) -> Dict[str, McSummary]:
    """RB, ARB and RMSE for every column of an (R x dim) estimate matrix.

    RB and ARB are undefined for a zero true value and reported as NaN.

    Raises:
        ConsistencyError: If ARB < |RB| or RMSE^2 < bias^2 for some parameter
    """
    estimates = np.atleast_2d(np.asarray(estimates, dtype=float))
    truth = np.asarray(truth, dtype=float)
    if estimates.shape[1] != truth.size or truth.size != len(names):
        raise ValueError(
            f"estimates have {estimates.shape[1]} columns for {truth.size} true values "
            f"and {len(names)} names"
        )
    errors = estimates - truth
    bias = errors.mean(axis=0)
    abs_err = np.abs(errors).mean(axis=0)
    rmse = np.sqrt(np.mean(errors**2, axis=0))
    summaries = {}
    for j, name in enumerate(names):
        if truth[j] == 0.0:
            logger.warning("relative bias of %s is undefined for a zero true value", name)
            rb = arb = float("nan")
        else:
            rb = float(bias[j] / truth[j])
            arb = float(abs_err[j] / abs(truth[j]))
            if arb < abs(rb) * (1.0 - 1e-12):
                raise ConsistencyError(f"ARB {arb} below |RB| {abs(rb)} for {name}")
        if rmse[j] ** 2 < bias[j] ** 2 * (1.0 - 1e-12):
            raise ConsistencyError(f"RMSE^2 below squared bias for {name}")
        summaries[name] = McSummary(
            parameter=name,
            true_value=float(truth[j]),
            mean_estimate=float(estimates[:, j].mean()),
            rb=rb,
            arb=arb,
            rmse=float(rmse[j]),
            replications_used=estimates.shape[0],
            failures=failures,
        )
    return summaries


def summaries_to_frame(summaries: Dict[str, McSummary]) -> pd.DataFrame:
    return pd.DataFrame([s.as_dict() for s in summaries.values()])


class SimulationMetrics(Runnable):
    """Calculates Monte Carlo performance measures from replication estimates."""

    def invoke(self, inputs: Dict[str, Any], config: Optional[RunnableConfig] = None) -> Dict[str, McSummary]:
        """Summarize replication estimates.

        Args:
            inputs: Dictionary with "estimates" (list of arrays, one per usable
                replication), "truth", "names" and optionally "failures"
            config: Optional runnable configuration

        Returns:
            McSummary per parameter name
        """
        estimates: List[np.ndarray] = inputs["estimates"]
        return summarize_estimates(
            np.vstack(estimates),
            inputs["truth"],
            inputs["names"],
            failures=int(inputs.get("failures", 0)),
        )
