"""
Published simulation scenarios S1-S4.
"""

from typing import Dict, Optional, Tuple

from ..distributions.kernel import SymmetricKernel
from ..distributions.link import LinkFunction
from ..model.spec import ModelSpec, ParamVector
from .generator import DEFAULT_BURN_IN, ScenarioConfig

SAMPLE_SIZES: Tuple[int, ...] = (75, 125, 200, 400)
TAU_LEVELS: Tuple[float, ...] = (0.25, 0.50, 0.75)

# (p, q, alpha, beta, phi, theta, sigma)
SCENARIOS: Dict[str, Tuple[int, int, float, Tuple[float, ...], Tuple[float, ...], Tuple[float, ...], float]] = {
    "S1": (2, 0, 0.50, (0.50, 0.20), (1.20, -0.30), (), 0.10),
    "S2": (2, 0, 0.10, (0.50, 0.20), (1.20, -0.30), (), 0.20),
    "S3": (1, 1, 0.40, (0.50, 0.20), (0.85,), (0.20,), 0.10),
    "S4": (1, 1, 0.90, (0.50, 0.20), (0.85,), (0.20,), 0.20),
}


def scenario(
    name: str,
    n: int = 400,
    tau: float = 0.5,
    seed: int = 0,
    burn_in: int = DEFAULT_BURN_IN,
    kernel: Optional[SymmetricKernel] = None,
    link: Optional[LinkFunction] = None,
) -> ScenarioConfig:
    """ScenarioConfig for one of the published scenarios.

    Args:
        name: "S1", "S2", "S3" or "S4" (case-insensitive)
        n: Retained sample size
        tau: Quantile level tracked by the recursion
        seed: Seed of the generator stream
        burn_in: Discarded leading observations
        kernel: Kernel of the generating distribution (normal by default)
        link: Link function (logit by default)
    """
    key = name.upper()
    if key not in SCENARIOS:
        raise ValueError(f"Unknown scenario '{name}'. Supported: {sorted(SCENARIOS)}")
    p, q, alpha, beta, phi, theta, sigma = SCENARIOS[key]
    spec = ModelSpec(
        p=p,
        q=q,
        k=len(beta),
        link=link or LinkFunction(),
        kernel=kernel or SymmetricKernel.normal(),
        tau=tau,
    )
    params = ParamVector(alpha=alpha, beta=beta, phi=phi, theta=theta, sigma=sigma)
    return ScenarioConfig(name=key, spec=spec, true_params=params, n=n, burn_in=burn_in, seed=seed)
