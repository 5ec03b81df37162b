import json

import pandas as pd
import pytest
from langchain_core.runnables import RunnableLambda

from quls_arma import cli
from quls_arma.data import dataset_path
from quls_arma.errors import HarnessError
from quls_arma.parsers import build_run_config
from quls_arma.simulation import scenario


@pytest.fixture
def series_csv(tmp_path, ar1_series):
    path = tmp_path / "series.csv"
    pd.DataFrame({"value": ar1_series.y}).to_csv(path, index=False)
    return path


def test_fit_writes_estimates(series_csv, tmp_path):
    out = tmp_path / "fit"
    assert cli.main(["fit", "--input", str(series_csv), "--model", "ar:1", "--out", str(out)]) == 0
    table = pd.read_csv(out / "estimates.csv")
    assert table["Parameter"].tolist() == ["alpha", "phi1", "sigma"]
    payload = json.loads((out / "fit.json").read_text())
    assert payload["n_obs"] == 300


def test_fit_with_config_file(series_csv, tmp_path):
    config = tmp_path / "run.env"
    config.write_text(f"input={series_csv}\nmodel=arma:1,1\nout={tmp_path / 'cfg'}\n")
    assert cli.main(["fit", "--config", str(config)]) == 0
    table = pd.read_csv(tmp_path / "cfg" / "estimates.csv")
    assert table["Parameter"].tolist() == ["alpha", "phi1", "theta1", "sigma"]


def test_simulate(tmp_path):
    out = tmp_path / "sim"
    assert cli.main(["simulate", "--scenario", "S1", "--n", "60", "--seed", "3", "--out", str(out)]) == 0
    frame = pd.read_csv(out / "series.csv", dtype={"value": str})
    assert len(frame) == 60
    assert frame.columns.tolist() == ["t", "value", "cos", "sin", "q_tau"]
    assert all(len(v.split(".")[1]) == 6 for v in frame["value"])


def test_forecast_defaults_holdout_to_horizon(series_csv, tmp_path):
    out = tmp_path / "fc"
    argv = ["forecast", "--input", str(series_csv), "--model", "ar:1", "--horizon", "5", "--out", str(out)]
    assert cli.main(argv) == 0
    assert len(pd.read_csv(out / "forecast.csv")) == 5
    errors = pd.read_csv(out / "forecast_errors.csv")
    assert errors["horizon"].tolist() == [1, 2, 3, 4, 5]


def test_forecast_holdout_shorter_than_horizon(series_csv, tmp_path, capsys):
    argv = ["forecast", "--input", str(series_csv), "--horizon", "5", "--holdout", "3", "--out", str(tmp_path)]
    assert cli.main(argv) == 2
    assert capsys.readouterr().err.startswith("error: ValueError:")


def test_diagnose_and_tau_sweep(series_csv, tmp_path):
    out = tmp_path / "diag"
    assert cli.main(["diagnose", "--input", str(series_csv), "--model", "ar:1", "--out", str(out)]) == 0
    assert len(pd.read_csv(out / "residuals.csv")) == 299
    assert pd.read_csv(out / "qq_gcs.csv").columns.tolist() == ["theoretical", "empirical"]
    argv = ["tau-sweep", "--input", str(series_csv), "--model", "ar:1", "--tau-grid", "0.25,0.5", "--out", str(out)]
    assert cli.main(argv) == 0
    assert pd.read_csv(out / "tau_sweep.csv")["tau"].tolist() == [0.25, 0.5]


def test_bad_input_exits_with_one_line(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("value\n0.2\n1.0\n")
    assert cli.main(["fit", "--input", str(path), "--out", str(tmp_path / "out")]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error: DataFormatError:")
    assert err.count("\n") == 1


def test_missing_input_file(tmp_path, capsys):
    assert cli.main(["fit", "--input", str(tmp_path / "absent.csv"), "--out", str(tmp_path)]) == 2
    assert "error: FileNotFoundError" in capsys.readouterr().err


def test_model_failure_exits_with_one_and_removes_outputs(tmp_path, monkeypatch, capsys):
    def failing(cfg, writer):
        writer.write_json("partial.json", {"done": False})
        raise HarnessError("all replications failed")

    monkeypatch.setitem(cli.HANDLERS, "mc", failing)
    out = tmp_path / "mc"
    assert cli.main(["mc", "--out", str(out)]) == 1
    assert not (out / "partial.json").exists()
    assert capsys.readouterr().err.strip() == "error: HarnessError: all replications failed"


def test_mc_with_exact_estimator(tmp_path):
    params = scenario("S2").true_params
    cfg = build_run_config("mc", {"scenario": "S2", "n": 75, "reps": 2, "out": str(tmp_path)})
    writer = cli.OutputWriter(cfg.out)
    assert cli.cmd_mc(cfg, writer, estimator=RunnableLambda(lambda series: params)) == 0
    long_table = pd.read_csv(tmp_path / "mc_long.csv")
    assert (long_table["rmse"] == 0).all()
    assert (tmp_path / "mc_rb.csv").exists() and (tmp_path / "mc_arb.csv").exists()


def test_input_file_gets_harmonics_on_request(series_csv):
    cfg = build_run_config("fit", {"input": str(series_csv), "harmonics": 12})
    assert cli.load_data(cfg).covariate_names == ["cos", "sin"]
    assert cli.load_data(build_run_config("fit", {"input": str(series_csv)})).k == 0
    assert cli.load_data(build_run_config("fit", {})).k == 2


@pytest.fixture
def crisis_csv(tmp_path):
    frame = pd.read_csv(dataset_path())[["year", "month"]]
    frame["crisis"] = (frame["year"] == 2001).astype(int)
    path = tmp_path / "crisis.csv"
    frame.to_csv(path, index=False)
    return path


def test_fit_with_crisis_file(crisis_csv, tmp_path):
    out = tmp_path / "crisis_fit"
    assert cli.main(["fit", "--model", "ar:2", "--crisis-file", str(crisis_csv), "--out", str(out)]) == 0
    table = pd.read_csv(out / "estimates.csv")
    assert table["Parameter"].tolist() == ["alpha", "beta1", "beta2", "beta3", "phi1", "phi2", "sigma"]


def test_crisis_file_needs_the_bundled_series(series_csv, crisis_csv, tmp_path, capsys):
    argv = ["fit", "--input", str(series_csv), "--crisis-file", str(crisis_csv), "--out", str(tmp_path)]
    assert cli.main(argv) == 2
    assert capsys.readouterr().err.startswith("error: ValueError:")


def test_forecast_past_the_end_extends_harmonics(series_csv, tmp_path):
    out = tmp_path / "ahead"
    argv = ["forecast", "--input", str(series_csv), "--model", "ar:1", "--harmonics", "12",
            "--holdout", "0", "--horizon", "6", "--out", str(out)]
    assert cli.main(argv) == 0
    frame = pd.read_csv(out / "forecast.csv")
    assert frame["horizon"].tolist() == [1, 2, 3, 4, 5, 6]
    assert "actual" not in frame.columns
    assert not (out / "forecast_errors.csv").exists()


def test_forecast_past_the_end_needs_future_crisis_values(crisis_csv, tmp_path, capsys):
    argv = ["forecast", "--model", "ar:2", "--crisis-file", str(crisis_csv), "--holdout", "0", "--out", str(tmp_path)]
    assert cli.main(argv) == 2
    assert capsys.readouterr().err.startswith("error: ForecastInputError:")
