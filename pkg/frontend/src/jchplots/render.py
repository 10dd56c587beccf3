"""Phase-diagram figures: concurrence color map, witness contour overlays,
and the extracted non-analytic locus polyline.

One panel per overlay quantity; each panel shows the average concurrence
as a filled map with the overlay's labeled contour lines and the locus on
top.  Masked cells (degenerate sentinels, failed rows) never enter the
color map or the contour interpolation: contouring runs on the masked
arrays directly.

Rendering is deterministic: the SVG id salt is pinned and timestamps are
stripped unless explicitly requested, so the same CSV yields identical
bytes.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .io import SweepGrid, load_sweep_csv

OVERLAY_COLUMNS = {
    "visibility": "visibility",
    "excitation_variance": "avg_excitation_variance",
}
CONCURRENCE_COLUMN = "avg_concurrence"
AUTO_LEVELS = "auto"


@dataclass(frozen=True)
class PlotSpec:
    input_csv: str
    output_path: str
    overlays: tuple = ("visibility", "excitation_variance")
    levels: object = AUTO_LEVELS      # "auto" (deciles of range) or tuple of floats
    locus_pair: str = "locus_1_2"
    timestamps: bool = False

    def __post_init__(self):
        for name in self.overlays:
            if name not in OVERLAY_COLUMNS:
                raise ValueError(
                    f"unknown overlay {name!r}; choose from {sorted(OVERLAY_COLUMNS)}"
                )


@dataclass
class PanelReport:
    overlay: str
    levels: tuple
    contour_path_count: int
    segments: tuple = ()      # per level: list of (n, 2) vertex arrays


@dataclass
class RenderResult:
    output_path: str
    panels: list
    locus_points: list
    masked_cells: int


def decile_levels(values: np.ma.MaskedArray):
    """Nine levels splitting the observed range into tenths; empty when the
    field is (numerically) constant."""
    if values.count() == 0:
        return ()
    lo = float(values.min())
    hi = float(values.max())
    if hi - lo < 1e-12:
        return ()
    return tuple(lo + (hi - lo) * k / 10.0 for k in range(1, 10))


def extract_locus(grid: SweepGrid, column: str):
    """Sign-change polyline of a locus column, (delta, t) pairs sorted by
    (t, delta).  Masked cells are skipped, never interpolated across."""
    values = grid.field(column)
    points = set()

    def scan(line, coords, fixed, horizontal):
        for a in range(len(line) - 1):
            v0, v1 = line[a], line[a + 1]
            if v0 is np.ma.masked or v1 is np.ma.masked:
                continue
            if v0 == 0.0:
                points.add((coords[a], fixed) if horizontal else (fixed, coords[a]))
            if v0 * v1 < 0.0:
                x = coords[a] + (coords[a + 1] - coords[a]) * (-v0) / (v1 - v0)
                points.add((float(x), fixed) if horizontal else (fixed, float(x)))
        if len(line) and line[-1] is not np.ma.masked and line[-1] == 0.0:
            c = coords[-1]
            points.add((c, fixed) if horizontal else (fixed, c))

    for ti, t in enumerate(grid.ts):
        scan(values[ti, :], grid.deltas, float(t), horizontal=True)
    for di, d in enumerate(grid.deltas):
        scan(values[:, di], grid.ts, float(d), horizontal=False)
    return sorted(points, key=lambda p: (p[1], p[0]))


def _count_paths(contour_set):
    return sum(len(segs) for segs in contour_set.allsegs)


def render(spec: PlotSpec) -> RenderResult:
    """File -> file: read the sweep CSV, write the figure, report what was
    drawn (levels and path counts per overlay, locus length, mask size)."""
    grid = load_sweep_csv(spec.input_csv)
    conc = grid.field(CONCURRENCE_COLUMN)
    locus_pts = extract_locus(grid, spec.locus_pair)

    if not spec.timestamps:
        plt.rcParams["svg.hashsalt"] = "jchplots"

    n_panels = len(spec.overlays)
    fig, axes = plt.subplots(
        1, n_panels, figsize=(5.2 * n_panels, 4.2), squeeze=False,
        constrained_layout=True,
    )
    panels = []
    mesh = None
    for k, overlay in enumerate(spec.overlays):
        ax = axes[0, k]
        field_vals = grid.field(OVERLAY_COLUMNS[overlay]).copy()
        field_vals.mask = field_vals.mask | grid.flags["degenerate"]

        mesh = ax.pcolormesh(
            grid.deltas, grid.ts, conc, shading="nearest", cmap="viridis",
        )
        mesh.set_gid(f"panel{k}-concurrence-map")

        levels = decile_levels(field_vals) if spec.levels == AUTO_LEVELS else tuple(
            lv for lv in spec.levels
            if field_vals.count() and float(field_vals.min()) < lv < float(field_vals.max())
        )
        path_count = 0
        segments = ()
        if levels:
            cs = ax.contour(
                grid.deltas, grid.ts, field_vals, levels=list(levels),
                colors="black", linewidths=0.9,
            )
            cs.set_gid(f"panel{k}-contours-{overlay}")
            # capture the geometry before clabel cuts gaps under the labels
            path_count = _count_paths(cs)
            segments = tuple(list(segs) for segs in cs.allsegs)
            ax.clabel(cs, fontsize=7, fmt="%.2f")
        panels.append(PanelReport(overlay, tuple(levels), path_count, segments))

        if locus_pts:
            xs = [p[0] for p in locus_pts]
            ys = [p[1] for p in locus_pts]
            (line,) = ax.plot(xs, ys, color="red", linewidth=1.6)
            line.set_gid(f"panel{k}-locus-polyline")

        ax.set_xlabel(r"$\delta/g$")
        ax.set_ylabel(r"$t/g$")
        ax.set_title(overlay.replace("_", " "))

    if mesh is not None:
        fig.colorbar(mesh, ax=axes[0, -1], label="avg concurrence")

    metadata = None
    if spec.output_path.endswith(".svg") and not spec.timestamps:
        metadata = {"Date": None}
    fig.savefig(spec.output_path, metadata=metadata)
    plt.close(fig)

    return RenderResult(
        output_path=spec.output_path,
        panels=panels,
        locus_points=locus_pts,
        masked_cells=int(np.count_nonzero(conc.mask)),
    )
