import numpy as np
import pytest
from scipy import special

from quls_arma.errors import ForecastInputError
from quls_arma.forecasting import extend_harmonics, forecast
from quls_arma.model import BoundedSeries, ModelSpec, ParamVector, run_recursion
from quls_arma.simulation import harmonic_covariates


def noise_free_logits(alpha, phi, start, length):
    g = [special.logit(start)]
    for _ in range(length - 1):
        g.append(alpha + phi * g[-1])
    return np.array(g)


def test_continues_a_noise_free_path():
    g = noise_free_logits(0.1, 0.7, 0.3, 50)
    spec = ModelSpec(p=1, q=1)
    params = ParamVector(alpha=0.1, beta=[], phi=[0.7], theta=[0.4], sigma=0.2)
    result = forecast(spec, params, BoundedSeries(special.expit(g[:40])), h=10)
    np.testing.assert_allclose(result.y_hat, special.expit(g[40:]), atol=1e-8)
    np.testing.assert_allclose(result.eta_hat, g[40:], atol=1e-8)


def test_random_walk_stays_flat(arma11_series):
    spec = ModelSpec(p=1)
    params = ParamVector(alpha=0.0, beta=[], phi=[1.0], theta=[], sigma=0.2)
    result = forecast(spec, params, arma11_series, h=6)
    np.testing.assert_allclose(result.y_hat, arma11_series.y[-1], atol=1e-12)


def test_first_step_uses_last_innovation(arma11_spec, arma11_params, arma11_series):
    state = run_recursion(arma11_spec, arma11_params, arma11_series)
    result = forecast(arma11_spec, arma11_params, arma11_series, h=3)
    expected = 0.1 + 0.6 * special.logit(arma11_series.y[-1]) + 0.3 * state.r[-1]
    assert result.eta_hat[0] == pytest.approx(expected, abs=1e-12)
    # later steps carry no new innovation
    assert result.eta_hat[1] == pytest.approx(0.1 + 0.6 * special.logit(result.y_hat[0]), abs=1e-10)


def test_covariates_enter_the_forecast():
    x = harmonic_covariates(60)
    y = special.expit(0.2 + 0.3 * x[:, 0] + 0.01 * np.sin(np.arange(60)))
    spec = ModelSpec(p=1, k=2)
    params = ParamVector(alpha=0.2, beta=[0.3, 0.0], phi=[0.2], theta=[], sigma=0.1)
    data = BoundedSeries(y[:48], x[:48], covariate_names=["cos", "sin"])
    future = extend_harmonics(data, 12)
    np.testing.assert_allclose(future, x[48:], atol=1e-12)
    result = forecast(spec, params, data, 12, future)
    assert result.to_frame(y[48:]).columns.tolist() == ["horizon", "y_hat", "eta_hat", "actual", "error"]
    assert np.ptp(result.y_hat) > 0.05


def test_only_harmonic_columns_are_continued():
    x = np.column_stack((harmonic_covariates(40), np.r_[np.zeros(30), np.ones(10)]))
    data = BoundedSeries(np.full(30, 0.4), x[:30], covariate_names=["cos", "sin", "crisis"])
    with pytest.raises(ForecastInputError, match="crisis"):
        extend_harmonics(data, 10)
    with pytest.raises(ForecastInputError):
        extend_harmonics(data, 10, other_x=np.ones(4))
    future = extend_harmonics(data, 10, other_x=np.ones(10))
    np.testing.assert_allclose(future, x[30:], atol=1e-12)


def test_covariates_are_required_and_checked():
    data = BoundedSeries(np.full(20, 0.4), harmonic_covariates(20), covariate_names=["cos", "sin"])
    spec = ModelSpec(p=1, k=2)
    params = ParamVector(alpha=0.0, beta=[0.1, 0.1], phi=[0.5], theta=[], sigma=0.1)
    with pytest.raises(ForecastInputError):
        forecast(spec, params, data, 3)
    with pytest.raises(ForecastInputError):
        forecast(spec, params, data, 3, np.zeros((2, 2)))
    with pytest.raises(ForecastInputError):
        forecast(spec, params, data, 1, np.array([[np.nan, 0.0]]))
    with pytest.raises(ForecastInputError):
        extend_harmonics(data.head(5), 3)


def test_horizon_must_be_positive(arma11_spec, arma11_params, arma11_series):
    with pytest.raises(ValueError):
        forecast(arma11_spec, arma11_params, arma11_series, 0)
