"""
Model components: domain types, quantile recursion and likelihood.
"""

from .likelihood import hessian, log_likelihood, score, w_values
from .recursion import ar_roots, recursion_jacobian, run_recursion
from .spec import BoundedSeries, ModelSpec, ParamVector, RecursionState

__all__ = [
    "BoundedSeries",
    "ModelSpec",
    "ParamVector",
    "RecursionState",
    "ar_roots",
    "hessian",
    "log_likelihood",
    "recursion_jacobian",
    "run_recursion",
    "score",
    "w_values",
]
