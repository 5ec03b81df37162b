"""
Command-line interface: fit, simulate, forecast, mc, diagnose and tau-sweep.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from dotenv import load_dotenv
from langchain_core.runnables import Runnable

from .data.loader import load_stored_energy
from .data.reference import PUBLISHED_ESTIMATES, PUBLISHED_TAU_AVERAGES, published_estimates
from .diagnostics.residuals import qq_data, residuals, write_qq_svg
from .errors import QulsArmaError
from .estimation.estimator import QulsArmaEstimator, tau_sweep
from .forecasting.forecaster import extend_harmonics, forecast
from .metrics.forecast_metrics import ForecastMetrics
from .model.spec import BoundedSeries
from .parsers.config_parser import COMMANDS, RunConfig, build_run_config
from .parsers.series_parser import load_series
from .simulation.generator import harmonic_covariates, simulate_path
from .simulation.harness import measure_table, run_monte_carlo_grid
from .simulation.scenarios import scenario

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)

PROPORTION_DECIMALS = 6
ESTIMATE_DECIMALS = 4
INPUT_ERRORS = (ValueError, OSError)


class OutputWriter:
    """Single writer for every artifact of a run; removes them again on failure."""

    def __init__(self, out_dir: str):
        self.out_dir = Path(out_dir)
        self.written: List[Path] = []

    def _path(self, name: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / name
        self.written.append(path)
        return path

    def write_frame(self, name: str, frame: pd.DataFrame, decimals: int = PROPORTION_DECIMALS, index: bool = False) -> Path:
        path = self._path(name)
        frame.to_csv(path, index=index, float_format=f"%.{decimals}f")
        return path

    def write_json(self, name: str, payload: Dict[str, Any]) -> Path:
        path = self._path(name)
        with open(path, "w") as f:
            json.dump(payload, f, indent=2)
        return path

    def reserve(self, name: str) -> Path:
        return self._path(name)

    def cleanup(self) -> None:
        for path in self.written:
            if path.exists():
                path.unlink()
        self.written.clear()


def load_data(cfg: RunConfig) -> BoundedSeries:
    """The input series with covariates, or the bundled stored-energy series."""
    if cfg.input is None:
        period = 12 if cfg.harmonics is None else cfg.harmonics
        return load_stored_energy(harmonics=period or None, crisis=cfg.crisis, crisis_path=cfg.crisis_file)
    if cfg.crisis_file is not None:
        raise ValueError("crisis_file applies to the bundled stored-energy series only")
    data = load_series(cfg.input)
    if cfg.harmonics:
        x = np.column_stack((data.x, harmonic_covariates(data.n, cfg.harmonics)))
        names = list(data.covariate_names) + ["cos", "sin"]
        data = BoundedSeries(data.y, x, data.labels, names)
    return data


def _estimator(cfg: RunConfig, data: BoundedSeries) -> QulsArmaEstimator:
    return QulsArmaEstimator(cfg.model_spec(data.k), cfg.fit_config())


def _print_table(title: str, frame: pd.DataFrame, decimals: int) -> None:
    print(f"\n{title}")
    print(frame.to_string(index=False, float_format=lambda v: f"{v:.{decimals}f}"))


def cmd_fit(cfg: RunConfig, writer: OutputWriter) -> int:
    data = load_data(cfg)
    print(f"Loaded {data.n} observations with covariates {data.covariate_names}")
    result = _estimator(cfg, data).invoke(data)
    table = result.summary_table()
    writer.write_frame("estimates.csv", table, decimals=ESTIMATE_DECIMALS)
    writer.write_json("fit.json", result.to_dict())

    print(f"Model: {result.spec.describe()}")
    if result.selected_nu is not None:
        print(f"Selected nu: {result.selected_nu:g}")
    _print_table("Parameter estimates:", table, ESTIMATE_DECIMALS)
    print(f"\nlog-likelihood={result.loglik:.4f} AIC={result.aic:.4f} BIC={result.bic:.4f} "
          f"CAIC={result.caic:.4f} HQIC={result.hqic:.4f}")
    print(f"Converged: {result.converged} after {result.iterations} iterations ({result.message})")
    if not result.std_errors_available:
        print("Standard errors unavailable: observed information is not invertible")

    if cfg.input is None:
        published = "QULS-ARMA (normal)" if result.spec.kernel.is_normal else "QULS-ARMA (t)"
        if published in PUBLISHED_ESTIMATES:
            _print_table(f"Published estimates, {published}:", published_estimates(published), ESTIMATE_DECIMALS)
    print(f"\nResults saved to {writer.out_dir}")
    return 0


def cmd_simulate(cfg: RunConfig, writer: OutputWriter) -> int:
    sc = scenario(cfg.scenario, n=cfg.n, tau=cfg.tau, seed=cfg.seed, burn_in=cfg.burn_in, kernel=cfg.symmetric_kernel())
    path = simulate_path(sc)
    frame = pd.DataFrame({"t": np.arange(1, sc.n + 1), "value": path.series.y})
    for j, name in enumerate(("cos", "sin")[: sc.spec.k]):
        frame[name] = path.series.x[:, j]
    frame["q_tau"] = path.q_tau
    writer.write_frame("series.csv", frame)
    print(f"Simulated {sc.name} with n={sc.n}, burn-in={sc.burn_in}, seed={sc.seed}")
    print(f"Series saved to {writer.out_dir / 'series.csv'}")
    return 0


def cmd_forecast(cfg: RunConfig, writer: OutputWriter) -> int:
    data = load_data(cfg)
    horizon = cfg.horizon or cfg.holdout or 10
    holdout = horizon if cfg.holdout is None else cfg.holdout
    if holdout == 0:
        # past the end of the sample: only harmonic columns can be continued
        train, actual = data, None
        future_x = extend_harmonics(data, horizon, cfg.harmonics or 12) if data.k else None
    else:
        if holdout < horizon:
            raise ValueError(f"holdout ({holdout}) must cover the horizon ({horizon})")
        train, test = data.split(holdout)
        actual = test.y[:horizon]
        future_x = test.x[:horizon] if data.k else None
    result = _estimator(cfg, train).invoke(train)
    fc = forecast(result.spec, result.params, train, horizon, future_x)

    writer.write_frame("forecast.csv", fc.to_frame(actual))
    print(f"Fitted {result.spec.describe()} on {train.n} observations; holdout {holdout}")
    _print_table("Forecasts:", fc.to_frame(actual), PROPORTION_DECIMALS)
    if actual is not None:
        accuracy = ForecastMetrics().invoke({"actual": actual, "predicted": fc.y_hat})
        writer.write_frame("forecast_errors.csv", accuracy["table"])
        _print_table("Errors over the first h forecasts:", accuracy["table"], PROPORTION_DECIMALS)
    return 0


def cmd_mc(cfg: RunConfig, writer: OutputWriter, estimator: Optional[Runnable] = None) -> int:
    long_table = run_monte_carlo_grid(
        scenarios=[cfg.scenario],
        sizes=[cfg.n],
        taus=[cfg.tau],
        reps=cfg.reps,
        seed=cfg.seed,
        burn_in=cfg.burn_in,
        kernel=cfg.symmetric_kernel(),
        fit_config=cfg.fit_config(),
        estimator=estimator,
        max_workers=cfg.max_workers,
    )
    writer.write_frame("mc_long.csv", long_table)
    for measure in ("rb", "arb", "rmse"):
        table = measure_table(long_table, measure)
        writer.write_frame(f"mc_{measure}.csv", table, index=True)
        print(f"\n{measure.upper()}:")
        print(table.to_string(float_format=lambda v: f"{v:.{PROPORTION_DECIMALS}f}"))
    used, failed = long_table["replications_used"].iloc[0], long_table["failures"].iloc[0]
    print(f"\nReplications used: {used}, failures: {failed}")
    return 0


def cmd_diagnose(cfg: RunConfig, writer: OutputWriter) -> int:
    data = load_data(cfg)
    result = _estimator(cfg, data).invoke(data)
    res = residuals(result.spec, result.params, data)
    gcs_qq = qq_data(res.gcs, "exp1")
    rq_qq = qq_data(res.rq, "normal")
    writer.write_frame("residuals.csv", res.to_frame())
    writer.write_frame("qq_gcs.csv", gcs_qq)
    writer.write_frame("qq_rq.csv", rq_qq)
    if cfg.qq_svg:
        write_qq_svg({"GCS residuals": gcs_qq, "RQ residuals": rq_qq}, writer.reserve("qq.svg"))
    print(f"Model: {result.spec.describe()}")
    print(f"GCS residual mean: {res.gcs.mean():.6f}")
    print(f"RQ residual mean: {res.rq.mean():.6f}, variance: {res.rq.var(ddof=1):.6f}")
    print(f"Diagnostics saved to {writer.out_dir}")
    return 0


def cmd_tau_sweep(cfg: RunConfig, writer: OutputWriter) -> int:
    data = load_data(cfg)
    sweep = tau_sweep(cfg.model_spec(data.k), data, cfg.tau_grid, cfg.fit_config())
    table, averages = sweep["table"], sweep["averages"]
    writer.write_frame("tau_sweep.csv", table)
    writer.write_frame("tau_averages.csv", averages.rename("average").to_frame().T)
    print(f"Fitted {len(table)} of {len(cfg.tau_grid)} quantile levels")
    for tau, reason in sweep["failures"].items():
        print(f"tau={tau:g} failed: {reason}")
    print("\nAverages across tau:")
    for name, value in averages.items():
        print(f"{name:>7}: {value:.3f}")
    if cfg.input is None and cfg.kernel.startswith("t"):
        print("\nPublished averages (QULS-ARMA, Student-t):")
        for name, value in PUBLISHED_TAU_AVERAGES["QULS-ARMA (t)"].items():
            print(f"{name:>7}: {value:.3f}")
    return 0


HANDLERS = {
    "fit": cmd_fit,
    "simulate": cmd_simulate,
    "forecast": cmd_forecast,
    "mc": cmd_mc,
    "diagnose": cmd_diagnose,
    "tau-sweep": cmd_tau_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Fit, simulate and forecast QULS-ARMA models for series in (0, 1)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        sub = subparsers.add_parser(command, help=f"run the {command} command")
        sub.add_argument("--config", default=None, help="Flat KEY=value run configuration file")
        sub.add_argument("--input", default=None, help="CSV with a value column (bundled data if omitted)")
        sub.add_argument("--out", default=None, help="Output directory")
        sub.add_argument("--model", default=None, help="Model orders as arma:P,Q")
        sub.add_argument("--kernel", default=None, choices=["normal", "t"], help="Kernel of the ULS distribution")
        sub.add_argument("--nu-grid", dest="nu_grid", default=None, help="Student-t grid, e.g. 3,4,5")
        sub.add_argument("--nu", type=float, default=None, help="Fixed Student-t degrees of freedom")
        sub.add_argument("--tau", type=float, default=None, help="Quantile level")
        sub.add_argument("--tau-grid", dest="tau_grid", default=None, help="Quantile grid, a,b,c or start:stop:step")
        sub.add_argument("--link", default=None, choices=["logit", "probit", "cloglog"], help="Link function")
        sub.add_argument("--harmonics", type=int, default=None, help="Period of harmonic covariates (0 disables)")
        sub.add_argument("--crisis", action="store_true", default=None, help="Use the crisis indicator column")
        sub.add_argument("--crisis-file", dest="crisis_file", default=None, help="CSV with year, month, crisis columns for the bundled series")
        sub.add_argument("--holdout", type=int, default=None, help="Observations held out for forecasting (0 forecasts past the end)")
        sub.add_argument("--horizon", type=int, default=None, help="Forecast horizon")
        sub.add_argument("--seed", type=int, default=None, help="Random seed")
        sub.add_argument("--reps", type=int, default=None, help="Monte Carlo replications")
        sub.add_argument("--burn-in", dest="burn_in", type=int, default=None, help="Burn-in length")
        sub.add_argument("--n", type=int, default=None, help="Simulated sample size")
        sub.add_argument("--scenario", default=None, help="Simulation scenario S1-S4")
        sub.add_argument("--max-iter", dest="max_iter", type=int, default=None, help="Maximum BFGS iterations")
        sub.add_argument("--max-workers", dest="max_workers", type=int, default=None, help="Concurrent fits")
        sub.add_argument("--qq-svg", dest="qq_svg", action="store_true", default=None, help="Also write QQ panels as SVG")
        sub.add_argument("--log-level", dest="log_level", default=None, help="Logging level")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = args.log_level or os.getenv("QULS_LOG_LEVEL", "WARNING")
    logging.basicConfig(level=level.upper(), format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    overrides = {k: v for k, v in vars(args).items() if k not in ("command", "config", "log_level")}
    writer = None
    try:
        cfg = build_run_config(args.command, overrides, args.config)
        writer = OutputWriter(cfg.out)
        return HANDLERS[cfg.command](cfg, writer)
    except (QulsArmaError,) + INPUT_ERRORS as e:
        if writer is not None:
            writer.cleanup()
        print(f"error: {type(e).__name__}: {' '.join(str(e).split())}", file=sys.stderr)
        return 2 if isinstance(e, INPUT_ERRORS) else 1


if __name__ == "__main__":
    sys.exit(main())
