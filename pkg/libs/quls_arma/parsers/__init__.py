"""
Parser components for input series and run configuration.
"""

from .config_parser import (
    COMMANDS,
    DEFAULT_TAU_GRID,
    RunConfig,
    build_run_config,
    parse_float_list,
    parse_model,
    read_config_file,
)
from .series_parser import SeriesParser, load_series

__all__ = [
    "COMMANDS",
    "DEFAULT_TAU_GRID",
    "RunConfig",
    "SeriesParser",
    "build_run_config",
    "load_series",
    "parse_float_list",
    "parse_model",
    "read_config_file",
]
