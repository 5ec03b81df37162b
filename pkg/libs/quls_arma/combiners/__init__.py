"""
Combiner components for grid fits.
"""

from .nu_grid_combiner import StudentTGridCombiner
from .tau_sweep_combiner import TauSweepCombiner

__all__ = ["StudentTGridCombiner", "TauSweepCombiner"]
