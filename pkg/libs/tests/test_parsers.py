import numpy as np
import pytest

from quls_arma.errors import DataFormatError
from quls_arma.parsers import (
    DEFAULT_TAU_GRID,
    RunConfig,
    SeriesParser,
    build_run_config,
    load_series,
    parse_float_list,
    parse_model,
    read_config_file,
)


@pytest.fixture
def write_csv(tmp_path):
    def _write(text, name="series.csv"):
        path = tmp_path / name
        path.write_text(text)
        return path

    return _write


class TestSeriesParser:
    def test_values_covariates_and_labels(self, write_csv):
        path = write_csv("date,value,x1\n2000-01,0.3,1.5\n2000-02,0.4,2.5\n")
        series = load_series(path)
        np.testing.assert_array_equal(series.y, [0.3, 0.4])
        np.testing.assert_array_equal(series.x[:, 0], [1.5, 2.5])
        assert series.labels == ["2000-01", "2000-02"]
        assert series.covariate_names == ["x1"]

    def test_year_month_labels(self, write_csv):
        series = load_series(write_csv("Year, Month, Value\n2001,3,0.5\n2001,4,0.6\n"))
        assert series.labels == ["2001-03", "2001-04"]
        assert series.k == 0

    def test_value_on_the_boundary(self, write_csv):
        with pytest.raises(DataFormatError, match="rows 2") as info:
            load_series(write_csv("value\n0.2\n1.0\n0.3\n"))
        assert info.value.rows == [2]

    def test_non_numeric_and_missing_cells(self, write_csv):
        with pytest.raises(DataFormatError) as info:
            load_series(write_csv("value\n0.2\nabc\n0.3\n"))
        assert info.value.rows == [2]
        with pytest.raises(DataFormatError, match="missing"):
            load_series(write_csv("value,x\n0.2,1\n0.3,\n0.4,2\n"))

    def test_header_only_and_empty_files(self, write_csv):
        with pytest.raises(DataFormatError, match="no observations"):
            load_series(write_csv("value\n"))
        with pytest.raises(DataFormatError, match="empty"):
            load_series(write_csv("", name="empty.csv"))

    def test_missing_value_column(self, write_csv):
        with pytest.raises(DataFormatError, match="'value'"):
            load_series(write_csv("share\n0.2\n"))

    def test_selected_and_empty_covariates(self, write_csv):
        path = write_csv("value,a,b,c\n0.2,1,5,\n0.3,2,6,\n")
        assert SeriesParser().invoke(path).covariate_names == ["a", "b"]
        assert load_series(path, covariates=["b"]).covariate_names == ["b"]
        with pytest.raises(DataFormatError):
            load_series(path, covariates=["d"])


class TestConfigParsing:
    @pytest.mark.parametrize(
        "text, orders",
        [("arma:2,1", (2, 1)), ("AR:3", (3, 0)), ("ma:2", (0, 2)), (" arma:0,1 ", (0, 1))],
    )
    def test_model_orders(self, text, orders):
        assert parse_model(text) == orders

    @pytest.mark.parametrize("text", ["arma:1", "garch:1,1", "ar:x", "arma"])
    def test_bad_model(self, text):
        with pytest.raises(ValueError):
            parse_model(text)

    def test_float_lists(self):
        assert parse_float_list("3,4, 5") == (3.0, 4.0, 5.0)
        assert parse_float_list("0.1:0.3:0.1") == (0.1, 0.2, 0.3)
        with pytest.raises(ValueError):
            parse_float_list("0.1:0.3:0")

    def test_default_tau_grid(self):
        assert len(DEFAULT_TAU_GRID) == 99
        assert DEFAULT_TAU_GRID[0] == 0.01 and DEFAULT_TAU_GRID[-1] == 0.99

    def test_run_config_coercion(self):
        cfg = RunConfig(command="fit", model="arma:1,1", kernel="T", nu_grid="3,5", seed="7", crisis="yes")
        assert cfg.model == (1, 1)
        assert cfg.nu_grid == (3.0, 5.0)
        assert cfg.seed == 7
        assert cfg.crisis is True
        spec = cfg.model_spec(k=2)
        assert spec.kernel.dof == 3.0
        assert cfg.fit_config().nu_grid == (3.0, 5.0)

    def test_crisis_file_implies_crisis(self):
        cfg = RunConfig(crisis_file="flags.csv")
        assert cfg.crisis is True
        assert cfg.crisis_file == "flags.csv"
        assert RunConfig(crisis_file="").crisis_file is None
        assert RunConfig().holdout is None
        assert RunConfig(holdout="0").holdout == 0

    def test_fixed_nu_turns_grid_off(self):
        cfg = RunConfig(kernel="t", nu=6)
        assert cfg.symmetric_kernel().dof == 6.0
        assert cfg.fit_config().nu_grid == ()

    def test_run_config_validation(self):
        with pytest.raises(ValueError):
            RunConfig(command="plot")
        with pytest.raises(ValueError):
            RunConfig(tau=1.0)
        with pytest.raises(ValueError):
            RunConfig(holdout=-1)
        with pytest.raises(ValueError):
            RunConfig(qq_svg="maybe")


class TestConfigFile:
    def test_read(self, write_csv):
        path = write_csv("MODEL=arma:1,1\nkernel=t\nNU-GRID=3,4\n", name="run.env")
        assert read_config_file(path) == {"model": "arma:1,1", "kernel": "t", "nu_grid": "3,4"}

    def test_unknown_key(self, write_csv):
        with pytest.raises(ValueError, match="colour"):
            read_config_file(write_csv("colour=blue\n", name="run.env"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_config_file(tmp_path / "absent.env")

    def test_precedence(self, write_csv, monkeypatch):
        monkeypatch.setenv("QULS_MAX_WORKERS", "3")
        monkeypatch.setenv("QULS_OUTPUT_DIR", "from_env")
        path = write_csv("seed=5\nout=from_file\n", name="run.env")
        cfg = build_run_config("simulate", {"seed": 9, "n": None}, path)
        assert cfg.command == "simulate"
        assert cfg.seed == 9
        assert cfg.out == "from_file"
        assert cfg.max_workers == 3
        assert cfg.n == 400
