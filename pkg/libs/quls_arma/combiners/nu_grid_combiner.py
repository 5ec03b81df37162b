"""
Combines the fixed-nu fits of the Student-t grid search.
"""

import logging
from dataclasses import replace
from typing import Any, Dict, Optional

import numpy as np
from langchain_core.runnables import Runnable, RunnableConfig

from ..errors import GridFitError, QulsArmaError
from ..estimation.results import FitResult

logger = logging.getLogger(__name__)

# outcomes of these types count as failed grid points; anything else propagates
FIT_FAILURES = (QulsArmaError, ValueError, ArithmeticError, np.linalg.LinAlgError)


class StudentTGridCombiner(Runnable):
    """Picks the grid point with the largest log-likelihood."""

    def __init__(self, prefer_converged: bool = True):
        """Initialize the combiner.

        Args:
            prefer_converged: Only consider converged fits when at least one exists
        """
        self.prefer_converged = prefer_converged

    def invoke(self, inputs: Dict[str, Any], config: Optional[RunnableConfig] = None) -> FitResult:
        """Select the best fit over the nu grid.

        Args:
            inputs: Dictionary with "fits" mapping nu to a FitResult or the
                exception its fit raised
            config: Optional runnable configuration

        Returns:
            The selected FitResult with ``selected_nu`` and ``nu_profile`` set

        Raises:
            GridFitError: If no grid point produced a fit
        """
        fits = inputs["fits"]
        succeeded, outcomes = {}, {}
        for nu, outcome in fits.items():
            if isinstance(outcome, BaseException):
                if not isinstance(outcome, FIT_FAILURES):
                    raise outcome
                logger.warning("fit with nu=%g failed: %s", nu, outcome)
                outcomes[nu] = f"{type(outcome).__name__}: {outcome}"
            else:
                succeeded[nu] = outcome
                outcomes[nu] = "converged" if outcome.converged else "not converged"

        if not succeeded:
            raise GridFitError("every fit on the nu grid failed", outcomes)

        candidates = succeeded
        if self.prefer_converged:
            converged = {nu: f for nu, f in succeeded.items() if f.converged}
            if converged:
                candidates = converged
            else:
                logger.warning("no fit on the nu grid converged; selecting among unconverged fits")

        best_nu = max(candidates, key=lambda nu: candidates[nu].loglik)
        profile = {float(nu): f.loglik for nu, f in sorted(succeeded.items())}
        logger.info("selected nu=%g (loglik=%.4f)", best_nu, candidates[best_nu].loglik)
        return replace(candidates[best_nu], selected_nu=float(best_nu), nu_profile=profile)
