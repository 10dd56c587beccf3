"""Figures from sweep CSV files: concurrence maps, witness contours, locus."""

__version__ = "0.1.0"

from .io import SchemaError, SweepGrid, load_sweep_csv
from .render import (
    AUTO_LEVELS,
    PlotSpec,
    RenderResult,
    decile_levels,
    extract_locus,
    render,
)
