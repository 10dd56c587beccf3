"""Grid sweep over the detuning-hopping plane with deterministic CSV output.

The coupling g is the energy unit: by default g = 1 and the grid axes are
delta/g and t/g directly.  Requesting g = 0 switches to the boundary-
analysis mode where the same axes carry delta and t in absolute units
(conventionally t = 1); the column names do not change.

Every grid point is an independent pure task (build H, solve, compute the
witness set), so a worker pool of any size produces identical numbers;
records are collected and sorted into canonical row-major order (t outer,
delta inner, delta fastest) before writing, making the CSV byte-identical
across runs and worker counts.

CSV layout (schema 1): a `# schema=1` comment line, a header row, then one
row per grid point with columns

    delta_over_g, t_over_g, ground_energy, degenerate, status,
    avg_concurrence, visibility, visibility_defined,
    avg_excitation_variance, dN_1..dN_N, locus_1_2, locus_1_3, ...

Degenerate points keep energy/visibility/variance but carry empty cells in
the concurrence-related columns (avg_concurrence and every locus_i_j):
at a level crossing the pair concurrence is not a function of the
Hamiltonian.  Rows whose solver failed have status=failed and empty
numeric cells; a sweep never aborts on one bad point.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import hilbert
from .eigen import ConvergenceError, ground_state
from .model import ModelParams, build_hamiltonian
from .observables import witness_set

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class SweepConfig:
    n_cavities: int
    total_excitations: int | None = None      # default: unit filling M = N
    delta_over_g: tuple[float, float, int] = (-4.0, 4.0, 81)
    t_over_g: tuple[float, float, int] = (0.0, 2.0, 41)
    boundary: str = "open"
    coupling_pattern: str = "uniform"          # "uniform" or "pair"
    pair: tuple[int, int] = (0, 1)             # used when coupling_pattern == "pair"
    g: float = 1.0                             # 0 requests absolute-units mode
    solver_tol: float = 1e-10
    solver_max_iter: int | None = None
    gap_tol: float | None = None
    worker_count: int = 1
    output_path: str | None = None
    seed: int = 7

    def __post_init__(self):
        for name in ("delta_over_g", "t_over_g"):
            lo, hi, steps = getattr(self, name)
            if steps < 1:
                raise ValueError(f"{name}: need at least one step")
            if lo > hi:
                raise ValueError(f"{name}: min {lo} above max {hi}")
        if self.coupling_pattern not in ("uniform", "pair"):
            raise ValueError("coupling_pattern must be 'uniform' or 'pair'")
        if self.coupling_pattern == "pair":
            i, j = self.pair
            if i == j or not (0 <= i < self.n_cavities and 0 <= j < self.n_cavities):
                raise ValueError(f"pair {self.pair} invalid for N={self.n_cavities}")
        if self.g < 0:
            raise ValueError("coupling strength g must be >= 0")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")

    @property
    def excitations(self) -> int:
        return self.n_cavities if self.total_excitations is None else self.total_excitations


@dataclass
class SweepRecord:
    delta_over_g: float
    t_over_g: float
    status: str = "ok"
    ground_energy: float | None = None
    degenerate: bool = False
    avg_concurrence: float | None = None
    visibility: float | None = None
    visibility_defined: bool = False
    avg_excitation_variance: float | None = None
    site_variances: tuple = ()
    locus: tuple = ()       # upper-triangle pair order (1,2), (1,3), ..., None entries when masked


def _axis(spec):
    lo, hi, steps = spec
    if steps == 1:
        return np.array([lo])
    return np.linspace(lo, hi, steps)


def grid_axes(config: SweepConfig):
    return _axis(config.delta_over_g), _axis(config.t_over_g)


def pair_columns(n_cavities):
    return [(i, j) for i in range(n_cavities) for j in range(i + 1, n_cavities)]


def _couplings(config: SweepConfig):
    n = config.n_cavities
    if config.coupling_pattern == "uniform":
        return (config.g,) * n
    couplings = [0.0] * n
    i, j = config.pair
    couplings[i] = config.g
    couplings[j] = config.g
    return tuple(couplings)


def evaluate_point(basis, config: SweepConfig, delta: float, t: float) -> SweepRecord:
    """Solve one grid point; solver failure becomes a failed-status row."""
    params = ModelParams(
        omega_a=delta,
        omega_b=0.0,
        couplings=_couplings(config),
        hopping=t,
        boundary=config.boundary,
    )
    record = SweepRecord(delta_over_g=float(delta), t_over_g=float(t))
    try:
        h = build_hamiltonian(params, basis)
        result = ground_state(
            h,
            tol=config.solver_tol,
            max_iter=config.solver_max_iter,
            seed=config.seed,
            gap_tol=config.gap_tol,
        )
    except ConvergenceError:
        record.status = "failed"
        return record

    w = witness_set(result.vector, config.boundary)
    pairs = pair_columns(config.n_cavities)
    record.ground_energy = result.energy
    record.degenerate = result.degenerate
    record.visibility = w.visibility
    record.visibility_defined = w.visibility_defined
    record.avg_excitation_variance = w.avg_excitation_variance
    record.site_variances = tuple(float(x) for x in w.excitation_variance_per_site)
    if result.degenerate:
        record.avg_concurrence = None
        record.locus = tuple(None for _ in pairs)
    else:
        record.avg_concurrence = w.avg_concurrence
        record.locus = tuple(float(w.locus_values[i, j]) for (i, j) in pairs)
    return record


# worker-side shared state, sent once per process by the pool initializer
_WORKER = {}


def _init_worker(basis, config, deltas, ts):
    _WORKER["basis"] = basis
    _WORKER["config"] = config
    _WORKER["deltas"] = deltas
    _WORKER["ts"] = ts


def _eval_flat_index(flat):
    deltas, ts = _WORKER["deltas"], _WORKER["ts"]
    ti, di = divmod(flat, len(deltas))
    rec = evaluate_point(_WORKER["basis"], _WORKER["config"], deltas[di], ts[ti])
    return flat, rec


def run_sweep(config: SweepConfig):
    """All grid records in canonical order; also writes CSV when configured.

    The basis is enumerated exactly once and shared (workers receive it
    through the pool initializer).
    """
    deltas, ts = grid_axes(config)
    basis = hilbert.enumerate_basis(config.n_cavities, config.excitations)

    n_points = len(deltas) * len(ts)
    results = [None] * n_points
    if config.worker_count == 1:
        for flat in range(n_points):
            ti, di = divmod(flat, len(deltas))
            results[flat] = evaluate_point(basis, config, deltas[di], ts[ti])
    else:
        with ProcessPoolExecutor(
            max_workers=config.worker_count,
            initializer=_init_worker,
            initargs=(basis, config, deltas, ts),
        ) as pool:
            for flat, rec in pool.map(
                _eval_flat_index, range(n_points), chunksize=max(1, n_points // (4 * config.worker_count))
            ):
                results[flat] = rec

    if config.output_path:
        write_csv(results, config, config.output_path)
    return results


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def csv_columns(n_cavities):
    cols = [
        "delta_over_g", "t_over_g", "ground_energy", "degenerate", "status",
        "avg_concurrence", "visibility", "visibility_defined",
        "avg_excitation_variance",
    ]
    cols += [f"dN_{i + 1}" for i in range(n_cavities)]
    cols += [f"locus_{i + 1}_{j + 1}" for (i, j) in pair_columns(n_cavities)]
    return cols


def record_row(record: SweepRecord, n_cavities):
    n_pairs = len(pair_columns(n_cavities))
    sites = record.site_variances or tuple(None for _ in range(n_cavities))
    locus = record.locus or tuple(None for _ in range(n_pairs))
    cells = [
        record.delta_over_g, record.t_over_g, record.ground_energy,
        record.degenerate, record.status, record.avg_concurrence,
        record.visibility, record.visibility_defined,
        record.avg_excitation_variance,
    ]
    cells.extend(sites)
    cells.extend(locus)
    return [_fmt(c) for c in cells]


def write_csv(records, config: SweepConfig, path):
    lines = [f"# schema={SCHEMA_VERSION}"]
    lines.append(",".join(csv_columns(config.n_cavities)))
    for rec in records:
        lines.append(",".join(record_row(rec, config.n_cavities)))
    payload = "\n".join(lines) + "\n"
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(payload)
    os.replace(tmp, path)


def locate_locus(records, pair=(0, 1), n_cavities=None):
    """Zero crossings of |z| - sqrt(u+ u-) for one pair, as an ordered polyline.

    Scans adjacent cells along both grid directions for sign changes and
    linearly interpolates each crossing; cells whose locus value is masked
    (degenerate or failed rows) are skipped.  Points come back sorted by
    (t, delta).  An empty list means the sign never flips in the window.
    """
    if not records:
        return []
    if n_cavities is None:
        # infer N from the longest site tuple present
        n_cavities = max((len(r.site_variances) for r in records), default=0) or 2
    pairs = pair_columns(n_cavities)
    norm_pair = (min(pair), max(pair))
    try:
        pair_idx = pairs.index(norm_pair)
    except ValueError:
        raise ValueError(f"pair {pair} not valid for N={n_cavities}") from None

    deltas = sorted({r.delta_over_g for r in records})
    ts = sorted({r.t_over_g for r in records})
    dindex = {d: i for i, d in enumerate(deltas)}
    tindex = {t: i for i, t in enumerate(ts)}
    grid = np.full((len(ts), len(deltas)), np.nan)
    for r in records:
        if r.status != "ok" or not r.locus:
            continue
        value = r.locus[pair_idx]
        if value is not None:
            grid[tindex[r.t_over_g], dindex[r.delta_over_g]] = value

    points = set()

    def scan(values, coords, fixed, horizontal):
        for a in range(len(values) - 1):
            v0, v1 = values[a], values[a + 1]
            if np.isnan(v0) or np.isnan(v1):
                continue
            if v0 == 0.0:
                points.add((coords[a], fixed) if horizontal else (fixed, coords[a]))
            if v0 * v1 < 0.0:
                x = float(coords[a] + (coords[a + 1] - coords[a]) * (-v0) / (v1 - v0))
                points.add((x, fixed) if horizontal else (fixed, x))
        if len(values) and values[-1] == 0.0:
            c = coords[-1]
            points.add((c, fixed) if horizontal else (fixed, c))

    for ti, t in enumerate(ts):
        scan(grid[ti, :], deltas, t, horizontal=True)
    for di, d in enumerate(deltas):
        scan(grid[:, di], ts, d, horizontal=False)

    return sorted(points, key=lambda p: (p[1], p[0]))
