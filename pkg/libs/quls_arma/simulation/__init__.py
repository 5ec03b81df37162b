"""
Simulation of QULS-ARMA series and Monte Carlo studies.
"""

from .generator import (
    DEFAULT_BURN_IN,
    ScenarioConfig,
    SimulatedPath,
    generate_series,
    harmonic_covariates,
    simulate_path,
)
from .harness import (
    MonteCarloHarness,
    measure_table,
    replication_seed,
    run_monte_carlo,
    run_monte_carlo_grid,
)
from .scenarios import SAMPLE_SIZES, SCENARIOS, TAU_LEVELS, scenario

__all__ = [
    "DEFAULT_BURN_IN",
    "MonteCarloHarness",
    "SAMPLE_SIZES",
    "SCENARIOS",
    "ScenarioConfig",
    "SimulatedPath",
    "TAU_LEVELS",
    "generate_series",
    "harmonic_covariates",
    "measure_table",
    "replication_seed",
    "run_monte_carlo",
    "run_monte_carlo_grid",
    "scenario",
    "simulate_path",
]
