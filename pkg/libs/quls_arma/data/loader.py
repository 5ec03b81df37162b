"""
Loader of the bundled monthly stored-energy proportions (May 2000 - Oct 2018).

The ``crisis`` column ships empty; fill it with 0/1 flags (or point
``crisis_path`` at a file with year, month, crisis columns) to use it.
"""

import logging
from importlib import resources
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from ..errors import DataFormatError
from ..model.spec import BoundedSeries
from ..parsers.series_parser import SeriesParser
from ..simulation.generator import harmonic_covariates

logger = logging.getLogger(__name__)

DATASET_FILE = "stored_energy.csv"


def dataset_path() -> Path:
    return Path(str(resources.files(__package__).joinpath(DATASET_FILE)))


def _check_contiguous(frame: pd.DataFrame) -> None:
    index = frame["year"].to_numpy() * 12 + frame["month"].to_numpy()
    gaps = np.flatnonzero(np.diff(index) != 1)
    if gaps.size:
        raise DataFormatError("months are not contiguous", [int(i) + 2 for i in gaps])


def load_stored_energy(
    harmonics: Optional[int] = 12,
    crisis: bool = False,
    crisis_path: Optional[Union[str, Path]] = None,
) -> BoundedSeries:
    """Load the bundled series with optional covariates.

    Args:
        harmonics: Period of the (cos, sin) covariates indexed by t = 1..n, or None
        crisis: Add the crisis indicator as the last covariate
        crisis_path: File with year, month and crisis columns overriding the bundled column

    Raises:
        DataFormatError: If the crisis indicator is requested but not available
    """
    frame = pd.read_csv(dataset_path())
    _check_contiguous(frame)
    if crisis_path is not None:
        flags = pd.read_csv(crisis_path, skipinitialspace=True)
        flags.columns = [str(c).strip().lower() for c in flags.columns]
        absent = [c for c in ("year", "month", "crisis") if c not in flags.columns]
        if absent:
            raise DataFormatError(f"crisis file {crisis_path} lacks columns {absent}")
        frame = frame.drop(columns="crisis").merge(flags[["year", "month", "crisis"]], on=["year", "month"], how="left")

    columns = {}
    if harmonics:
        x = harmonic_covariates(len(frame), harmonics)
        columns["cos"], columns["sin"] = x[:, 0], x[:, 1]
    if crisis:
        if frame["crisis"].isna().any():
            raise DataFormatError(
                "the crisis indicator is not filled in", [int(i) + 1 for i in np.flatnonzero(frame["crisis"].isna())]
            )
        columns["crisis"] = frame["crisis"].astype(float).to_numpy()

    table = pd.DataFrame({"year": frame["year"], "month": frame["month"], "value": frame["value"], **columns})
    series = SeriesParser(covariates=list(columns)).parse_frame(table, source=DATASET_FILE)
    logger.debug("loaded %d stored-energy observations with covariates %s", series.n, list(columns))
    return series
