import numpy as np
import pytest
from scipy import special, stats

from quls_arma.diagnostics import qq_data, residuals, write_qq_svg
from quls_arma.diagnostics.residuals import CDF_CLAMP
from quls_arma.estimation import fit
from quls_arma.model import BoundedSeries, ModelSpec, ParamVector
from quls_arma.simulation import ScenarioConfig, generate_series


def test_observation_at_the_median():
    g = [special.logit(0.4)]
    for _ in range(29):
        g.append(0.1 + 0.5 * g[-1])
    spec = ModelSpec(p=1)
    params = ParamVector(alpha=0.1, beta=[], phi=[0.5], theta=[], sigma=0.2)
    res = residuals(spec, params, BoundedSeries(special.expit(np.array(g))))
    assert res.gcs.shape == (29,)
    np.testing.assert_allclose(res.gcs, np.log(2.0), atol=1e-12)
    np.testing.assert_allclose(res.rq, 0.0, atol=1e-12)


def test_residuals_at_true_parameters_look_standard(arma11_spec, arma11_params, arma11_series):
    res = residuals(arma11_spec, arma11_params, arma11_series)
    assert res.rq.mean() == pytest.approx(0.0, abs=0.2)
    assert res.rq.var(ddof=1) == pytest.approx(1.0, abs=0.25)
    assert res.gcs.mean() == pytest.approx(1.0, abs=0.2)
    assert np.all((res.fitted_cdf >= CDF_CLAMP) & (res.fitted_cdf <= 1 - CDF_CLAMP))
    assert res.to_frame().columns.tolist() == ["fitted_cdf", "gcs", "rq"]


def test_extreme_observation_is_clamped():
    spec = ModelSpec(p=1)
    params = ParamVector(alpha=0.0, beta=[], phi=[0.0], theta=[], sigma=0.01)
    res = residuals(spec, params, BoundedSeries([0.5, 0.9]))
    assert res.fitted_cdf[0] == 1 - CDF_CLAMP
    assert np.isfinite(res.rq[0]) and np.isfinite(res.gcs[0])


def test_qq_exponential_positions():
    frame = qq_data([2.0, 0.5, 1.0], reference="exp1")
    np.testing.assert_allclose(frame["theoretical"], -np.log1p(-np.array([1, 3, 5]) / 6.0))
    assert frame["empirical"].tolist() == [0.5, 1.0, 2.0]


def test_qq_normal_is_symmetric():
    frame = qq_data(np.arange(5.0), reference="normal")
    np.testing.assert_allclose(frame["theoretical"], -frame["theoretical"][::-1].to_numpy(), atol=1e-12)
    assert frame["theoretical"][2] == 0.0


def test_qq_rejects_bad_input():
    with pytest.raises(ValueError):
        qq_data([])
    with pytest.raises(ValueError):
        qq_data([1.0], reference="gamma")


def test_svg_panels(tmp_path):
    pytest.importorskip("matplotlib")
    panels = {"GCS": qq_data([0.2, 1.0, 2.5], "exp1"), "RQ": qq_data([-1.0, 0.1, 0.8], "normal")}
    path = write_qq_svg(panels, tmp_path / "qq.svg")
    assert "<svg" in path.read_text()


@pytest.mark.slow
def test_residuals_of_series_simulated_from_a_fitted_model(energy):
    fitted = fit(ModelSpec(p=2, k=2), energy)
    gcs_means, rq_vars, ks_pass = [], [], 0
    for seed in range(200):
        cfg = ScenarioConfig("Custom", fitted.spec, fitted.params, n=1000, seed=seed)
        res = residuals(fitted.spec, fitted.params, generate_series(cfg))
        gcs_means.append(res.gcs.mean())
        rq_vars.append(res.rq.var(ddof=1))
        ks_pass += stats.kstest(res.rq, "norm").pvalue > 0.01
    assert 0.9 <= np.mean(gcs_means) <= 1.1
    assert 0.85 <= np.mean(rq_vars) <= 1.15
    assert ks_pass >= 190
