"""Reader for schema=1 sweep CSV files.

The contract: first line `# schema=1`, then a header row, then one row per
grid point of a complete rectangular (delta, t) grid in any order.  Empty
cells are sentinels (degenerate or failed points) and come back masked.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

SCHEMA_LINE = "# schema=1"

FLOAT_COLUMNS_FIXED = (
    "ground_energy",
    "avg_concurrence",
    "visibility",
    "avg_excitation_variance",
)


class SchemaError(ValueError):
    """Input is not a schema=1 sweep CSV."""


@dataclass
class SweepGrid:
    """Column-major view of one sweep: 2D masked arrays indexed [t, delta]."""

    deltas: np.ndarray
    ts: np.ndarray
    fields: dict          # column name -> masked 2D array
    flags: dict           # degenerate/status style columns -> 2D object/int arrays

    @property
    def shape(self):
        return (len(self.ts), len(self.deltas))

    def field(self, name):
        try:
            return self.fields[name]
        except KeyError:
            raise SchemaError(f"column {name!r} not present in this CSV") from None


def load_sweep_csv(path) -> SweepGrid:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        first = fh.readline().rstrip("\r\n")
        if first != SCHEMA_LINE:
            raise SchemaError(f"expected {SCHEMA_LINE!r} on the first line, got {first!r}")
        reader = csv.DictReader(fh)
        rows = list(reader)
    if not rows:
        raise SchemaError("no data rows")
    header = reader.fieldnames
    for required in ("delta_over_g", "t_over_g", "status", "degenerate"):
        if required not in header:
            raise SchemaError(f"missing required column {required!r}")

    deltas = np.array(sorted({float(r["delta_over_g"]) for r in rows}))
    ts = np.array(sorted({float(r["t_over_g"]) for r in rows}))
    if len(deltas) * len(ts) != len(rows):
        raise SchemaError(
            f"grid is not rectangular: {len(rows)} rows vs "
            f"{len(deltas)} x {len(ts)} axis points"
        )
    dindex = {d: i for i, d in enumerate(deltas)}
    tindex = {t: i for i, t in enumerate(ts)}

    float_columns = [
        c for c in header
        if c in FLOAT_COLUMNS_FIXED or c.startswith("dN_") or c.startswith("locus_")
    ]
    fields = {
        c: np.ma.masked_all((len(ts), len(deltas)), dtype=float)
        for c in float_columns
    }
    degenerate = np.zeros((len(ts), len(deltas)), dtype=bool)
    failed = np.zeros((len(ts), len(deltas)), dtype=bool)
    seen = np.zeros((len(ts), len(deltas)), dtype=bool)

    for r in rows:
        ti = tindex[float(r["t_over_g"])]
        di = dindex[float(r["delta_over_g"])]
        if seen[ti, di]:
            raise SchemaError(
                f"duplicate grid point delta={r['delta_over_g']} t={r['t_over_g']}"
            )
        seen[ti, di] = True
        degenerate[ti, di] = r["degenerate"] == "1"
        failed[ti, di] = r["status"] != "ok"
        for c in float_columns:
            cell = r[c]
            if cell != "":
                fields[c][ti, di] = float(cell)

    # failed rows poison every quantity; degenerate rows already carry
    # their sentinels in the concurrence columns
    for c in float_columns:
        fields[c].mask |= failed

    return SweepGrid(
        deltas=deltas,
        ts=ts,
        fields=fields,
        flags={"degenerate": degenerate, "failed": failed},
    )
