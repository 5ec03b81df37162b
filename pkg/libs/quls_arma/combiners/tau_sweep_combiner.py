"""
Combines fits across quantile levels into a criteria table.
"""

import logging
from typing import Any, Dict, Optional

import pandas as pd
from langchain_core.runnables import Runnable, RunnableConfig

from ..errors import EstimationError
from .nu_grid_combiner import FIT_FAILURES

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ["tau", "loglik", "aic", "bic", "caic", "hqic", "converged", "selected_nu"]


class TauSweepCombiner(Runnable):
    """Tabulates per-tau log-likelihoods and information criteria and averages them."""

    def invoke(self, inputs: Dict[str, Any], config: Optional[RunnableConfig] = None) -> Dict[str, Any]:
        """Build the per-tau table.

        Args:
            inputs: Dictionary with "fits" mapping tau to a FitResult or an exception
            config: Optional runnable configuration

        Returns:
            Dictionary with "fits" (successful fits by tau), "failures" (messages
            by tau), "table" (one row per successful tau) and "averages"
        """
        fits, failures, rows = {}, {}, []
        for tau, outcome in sorted(inputs["fits"].items()):
            if isinstance(outcome, BaseException):
                if not isinstance(outcome, FIT_FAILURES):
                    raise outcome
                logger.warning("fit at tau=%g failed: %s", tau, outcome)
                failures[tau] = f"{type(outcome).__name__}: {outcome}"
                continue
            fits[tau] = outcome
            rows.append(
                {
                    "tau": tau,
                    "loglik": outcome.loglik,
                    "aic": outcome.aic,
                    "bic": outcome.bic,
                    "caic": outcome.caic,
                    "hqic": outcome.hqic,
                    "converged": outcome.converged,
                    "selected_nu": outcome.selected_nu,
                }
            )
        if not rows:
            raise EstimationError("no quantile level could be fitted")

        table = pd.DataFrame(rows, columns=TABLE_COLUMNS)
        averages = table[["loglik", "aic", "bic", "caic", "hqic"]].mean()
        return {"fits": fits, "failures": failures, "table": table, "averages": averages}
