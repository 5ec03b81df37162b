"""
Parser that reads a delimited text file into a bounded series.
"""

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from langchain_core.runnables import Runnable, RunnableConfig

from ..errors import DataFormatError
from ..model.spec import BoundedSeries

logger = logging.getLogger(__name__)

VALUE_COLUMN = "value"
DATE_COLUMNS = ("date", "year", "month")


def _bad_rows(mask: pd.Series) -> List[int]:
    return [int(i) + 1 for i in np.flatnonzero(mask.to_numpy())]


def _numeric(frame: pd.DataFrame, column: str) -> pd.Series:
    values = pd.to_numeric(frame[column], errors="coerce")
    bad = values.isna() & frame[column].notna()
    if bad.any():
        raise DataFormatError(f"non-numeric cells in column '{column}'", _bad_rows(bad))
    missing = values.isna()
    if missing.any():
        raise DataFormatError(f"missing cells in column '{column}'", _bad_rows(missing))
    return values.astype(float)


def _labels(frame: pd.DataFrame) -> Optional[List[str]]:
    if "date" in frame.columns:
        return frame["date"].astype(str).tolist()
    if {"year", "month"} <= set(frame.columns):
        year = _numeric(frame, "year").astype(int)
        month = _numeric(frame, "month").astype(int)
        return [f"{y:04d}-{m:02d}" for y, m in zip(year, month)]
    return None


class SeriesParser(Runnable):
    """Reads `date?, value, covariate...` files into a BoundedSeries."""

    def __init__(
        self,
        value_column: str = VALUE_COLUMN,
        covariates: Optional[Sequence[str]] = None,
        drop_empty: bool = True,
    ):
        """Initialize the parser.

        Args:
            value_column: Name of the column holding the proportions
            covariates: Covariate columns to keep; all non-date columns by default
            drop_empty: Drop covariate columns whose cells are all empty
        """
        self.value_column = value_column
        self.covariates = list(covariates) if covariates is not None else None
        self.drop_empty = drop_empty

    def invoke(self, path: Union[str, Path], config: Optional[RunnableConfig] = None) -> BoundedSeries:
        """Parse a file.

        Args:
            path: Path of a comma-separated file with a header row
            config: Optional runnable configuration

        Returns:
            BoundedSeries with covariates aligned to the observations

        Raises:
            DataFormatError: On a missing value column, non-numeric cells,
                values outside (0, 1) or an empty file
        """
        try:
            frame = pd.read_csv(path, skipinitialspace=True)
        except pd.errors.EmptyDataError as e:
            raise DataFormatError(f"{path} is empty") from e
        frame.columns = [str(c).strip().lower() for c in frame.columns]
        return self.parse_frame(frame, source=str(path))

    def parse_frame(self, frame: pd.DataFrame, source: str = "<frame>") -> BoundedSeries:
        if self.value_column not in frame.columns:
            raise DataFormatError(f"{source} has no '{self.value_column}' column")
        if frame.empty:
            raise DataFormatError(f"{source} contains no observations")

        y = _numeric(frame, self.value_column)
        outside = ~((y > 0.0) & (y < 1.0))
        if outside.any():
            raise DataFormatError(
                f"values in '{self.value_column}' must lie strictly inside (0, 1)", _bad_rows(outside)
            )

        if self.covariates is None:
            names = [c for c in frame.columns if c != self.value_column and c not in DATE_COLUMNS]
        else:
            missing = [c for c in self.covariates if c not in frame.columns]
            if missing:
                raise DataFormatError(f"{source} lacks covariate columns {missing}")
            names = list(self.covariates)
        if self.drop_empty:
            empty = [c for c in names if frame[c].isna().all()]
            for column in empty:
                logger.info("dropping empty covariate column '%s'", column)
            names = [c for c in names if c not in empty]

        x = np.column_stack([_numeric(frame, c) for c in names]) if names else None
        logger.debug("parsed %d observations and %d covariates from %s", len(y), len(names), source)
        return BoundedSeries(y.to_numpy(), x, labels=_labels(frame), covariate_names=names)


def load_series(
    path: Union[str, Path],
    value_column: str = VALUE_COLUMN,
    covariates: Optional[Sequence[str]] = None,
) -> BoundedSeries:
    """Read a comma-separated file with a header into a BoundedSeries."""
    return SeriesParser(value_column=value_column, covariates=covariates).invoke(path)
