"""Timing-curve figures from permanent-engine benchmark CSV files."""

from .records import (
    BenchRecord,
    EmptySelectionError,
    SchemaError,
    aggregate,
    load_records,
    read_records,
)
from .render import Series, build_series, figure_from_series, render

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "EmptySelectionError",
    "SchemaError",
    "Series",
    "aggregate",
    "build_series",
    "figure_from_series",
    "load_records",
    "read_records",
    "render",
]
