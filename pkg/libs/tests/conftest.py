import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from quls_arma.data import load_stored_energy  # noqa: E402
from quls_arma.distributions import SymmetricKernel  # noqa: E402
from quls_arma.model import ModelSpec, ParamVector  # noqa: E402
from quls_arma.simulation import ScenarioConfig, generate_series, scenario  # noqa: E402


@pytest.fixture(scope="session")
def energy():
    """The bundled stored-energy series with 12-month harmonics."""
    return load_stored_energy(harmonics=12)


@pytest.fixture
def ar1_spec():
    return ModelSpec(p=1, q=0, k=0)


@pytest.fixture
def ar1_params():
    return ParamVector(alpha=-0.2, beta=[], phi=[0.5], theta=[], sigma=0.3)


@pytest.fixture
def ar1_series(ar1_spec, ar1_params):
    cfg = ScenarioConfig(name="Custom", spec=ar1_spec, true_params=ar1_params, n=300, seed=5)
    return generate_series(cfg)


@pytest.fixture
def arma11_spec():
    return ModelSpec(p=1, q=1, k=0)


@pytest.fixture
def arma11_params():
    return ParamVector(alpha=0.1, beta=[], phi=[0.6], theta=[0.3], sigma=0.25)


@pytest.fixture
def arma11_series(arma11_spec, arma11_params):
    cfg = ScenarioConfig(name="Custom", spec=arma11_spec, true_params=arma11_params, n=300, seed=9)
    return generate_series(cfg)


@pytest.fixture
def s1_config():
    return scenario("S1", n=200, seed=11)


@pytest.fixture
def t_kernel():
    return SymmetricKernel.student_t(3.0)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(2024))
