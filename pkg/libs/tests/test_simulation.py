import numpy as np
import pytest
from langchain_core.runnables import RunnableLambda

from quls_arma.distributions import LinkFunction, SymmetricKernel
from quls_arma.errors import HarnessError, SimulationError
from quls_arma.estimation import FitConfig
from quls_arma.model import ModelSpec, ParamVector
from quls_arma.simulation import (
    MonteCarloHarness,
    SCENARIOS,
    ScenarioConfig,
    generate_series,
    harmonic_covariates,
    measure_table,
    replication_seed,
    run_monte_carlo,
    run_monte_carlo_grid,
    scenario,
    simulate_path,
)


def truth_estimator(params):
    return RunnableLambda(lambda series: params)


class TestHarmonics:
    def test_quarter_cycles_are_exact(self):
        x = harmonic_covariates(12)
        np.testing.assert_array_equal(x[2], [0.0, 1.0])
        np.testing.assert_array_equal(x[5], [-1.0, 0.0])
        np.testing.assert_array_equal(x[11], [1.0, 0.0])
        np.testing.assert_allclose(x[0], [np.cos(np.pi / 6), 0.5])

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            harmonic_covariates(0)
        with pytest.raises(ValueError):
            harmonic_covariates(10, period=0)


class TestScenarios:
    def test_presets(self):
        cfg = scenario("s3", n=125, tau=0.75)
        assert cfg.name == "S3"
        assert (cfg.spec.p, cfg.spec.q, cfg.spec.k) == (1, 1, 2)
        assert cfg.spec.tau == 0.75
        assert cfg.true_params.as_dict(cfg.spec)["theta1"] == 0.2
        assert set(SCENARIOS) == {"S1", "S2", "S3", "S4"}

    def test_unknown_scenario(self):
        with pytest.raises(ValueError):
            scenario("S9")

    def test_config_validation(self):
        spec = ModelSpec(p=1)
        params = ParamVector(0.1, [], [0.5], [], 0.2)
        with pytest.raises(ValueError):
            ScenarioConfig("Custom", spec, params, n=20)
        with pytest.raises(ValueError):
            ScenarioConfig("Custom", ModelSpec(p=3), ParamVector(0.1, [], [0.2, 0.1, 0.1], [], 0.2), burn_in=2)
        with pytest.raises(ValueError):
            ScenarioConfig("Custom", ModelSpec(p=1, k=1), ParamVector(0.1, [0.3], [0.5], [], 0.2))


class TestGenerator:
    def test_length_and_covariates(self, s1_config):
        series = generate_series(s1_config)
        assert series.n == 200
        assert series.k == 2
        np.testing.assert_allclose(series.x, harmonic_covariates(250)[50:])
        assert np.all((series.y > 0) & (series.y < 1))

    def test_deterministic_given_seed(self, s1_config):
        np.testing.assert_array_equal(generate_series(s1_config).y, generate_series(s1_config).y)
        assert not np.array_equal(generate_series(s1_config).y, generate_series(s1_config.with_seed(12)).y)

    @pytest.mark.parametrize("tau", [0.25, 0.5, 0.75])
    def test_quantile_calibration(self, tau):
        path = simulate_path(scenario("S1", n=5000, tau=tau, seed=21))
        assert np.mean(path.series.y <= path.q_tau) == pytest.approx(tau, abs=0.02)

    @pytest.mark.parametrize("link", ["probit", "cloglog"])
    def test_quantile_calibration_other_links(self, link):
        spec = ModelSpec(p=1, link=LinkFunction.from_name(link), kernel=SymmetricKernel.student_t(4.0), tau=0.25)
        cfg = ScenarioConfig("Custom", spec, ParamVector(-0.2, [], [0.5], [], 0.3), n=3000, seed=8)
        path = simulate_path(cfg)
        assert np.mean(path.series.y <= path.q_tau) == pytest.approx(0.25, abs=0.03)

    def test_innovations_on_link_scale(self, s1_config):
        path = simulate_path(s1_config)
        np.testing.assert_allclose(path.r, s1_config.spec.link.g(path.series.y) - path.eta, atol=1e-12)

    def test_explosive_dynamics_fail(self):
        cfg = ScenarioConfig("Custom", ModelSpec(p=1), ParamVector(0.5, [], [1.5], [], 0.1), n=400)
        with pytest.raises(SimulationError) as info:
            generate_series(cfg)
        assert info.value.t is not None

    def test_custom_covariates(self):
        x = np.linspace(-1, 1, 130).reshape(-1, 1)
        cfg = ScenarioConfig("Custom", ModelSpec(p=1, k=1), ParamVector(0.1, [0.4], [0.5], [], 0.2), n=100, burn_in=30, covariates=x)
        series = generate_series(cfg)
        np.testing.assert_array_equal(series.x[:, 0], x[30:, 0])


class TestHarness:
    def test_replication_seed(self):
        assert replication_seed(7, 3) == 4
        assert len({replication_seed(0, r) for r in range(1, 101)}) == 100

    def test_perfect_estimator_has_zero_error(self, s1_config):
        summaries = run_monte_carlo(s1_config, reps=5, estimator=truth_estimator(s1_config.true_params))
        assert list(summaries) == s1_config.spec.param_names
        for summary in summaries.values():
            assert summary.rb == 0.0 and summary.arb == 0.0 and summary.rmse == 0.0
            assert summary.replications_used == 5 and summary.failures == 0

    def test_replications_are_reproducible(self, s1_config):
        harness = MonteCarloHarness(reps=2, estimator=RunnableLambda(lambda series: ParamVector(series.y.mean(), [0, 0], [0, 0], [], 0.1)))
        np.testing.assert_array_equal(harness.replicate(s1_config, 2), harness.replicate(s1_config, 2))
        assert harness.replicate(s1_config, 1)[0] != harness.replicate(s1_config, 2)[0]

    def test_failures_are_counted(self, s1_config):
        def flaky(series):
            if series.y[0] > np.median(series.y):
                raise ValueError("rejected")
            return s1_config.true_params

        summaries = run_monte_carlo(s1_config, reps=20, estimator=RunnableLambda(flaky), max_workers=4)
        summary = summaries["alpha"]
        assert summary.failures > 0
        assert summary.replications == 20

    def test_fits_stopped_by_step_size_are_kept(self, ar1_spec, ar1_params):
        cfg = ScenarioConfig("Custom", ar1_spec, ar1_params, n=300, seed=5)
        summaries = run_monte_carlo(cfg, reps=3, fit_config=FitConfig(grad_tol=1e-14))
        assert all(s.failures == 0 and s.replications_used == 3 for s in summaries.values())

    def test_all_failed(self, s1_config):
        def broken(series):
            raise SimulationError("no")

        with pytest.raises(HarnessError):
            run_monte_carlo(s1_config, reps=3, estimator=RunnableLambda(broken))

    def test_programming_errors_propagate(self, s1_config):
        def buggy(series):
            raise KeyError("oops")

        with pytest.raises(KeyError):
            run_monte_carlo(s1_config, reps=2, estimator=RunnableLambda(buggy))

    def test_needs_two_replications(self):
        with pytest.raises(ValueError):
            MonteCarloHarness(reps=1)

    def test_grid_and_tables(self):
        params = scenario("S2").true_params
        long_table = run_monte_carlo_grid(
            scenarios=["S2"], sizes=[75, 125], reps=2, estimator=truth_estimator(params)
        )
        assert len(long_table) == 2 * 6
        assert set(long_table["n"]) == {75, 125}
        rmse = measure_table(long_table, "rmse")
        assert rmse.shape == (6, 2)
        assert list(rmse.index.get_level_values("parameter")) == ["alpha", "beta1", "beta2", "phi1", "phi2", "sigma"]
        with pytest.raises(ValueError):
            measure_table(long_table, "mae")


@pytest.mark.slow
def test_s1_measures_at_400_observations():
    summaries = run_monte_carlo(scenario("S1", n=400, tau=0.5), reps=200, max_workers=4)
    assert summaries["phi1"].rb == pytest.approx(-0.01, abs=0.02)
    assert 0.002 <= summaries["sigma"].rmse <= 0.006
    assert 0.06 <= summaries["beta2"].arb <= 0.10


@pytest.mark.slow
def test_rmse_shrinks_with_sample_size():
    long_table = run_monte_carlo_grid(scenarios=["S1", "S4"], sizes=[75, 400], reps=200, seed=3, max_workers=4)
    rmse = measure_table(long_table, "rmse")
    for name in ("S1", "S4"):
        assert (rmse[(name, 400)] < rmse[(name, 75)]).all(), name
