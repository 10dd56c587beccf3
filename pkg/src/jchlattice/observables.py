"""Witnesses computed from a sector ground state.

Three quantities probe the Mott-insulator / superfluid competition:

  * per-site excitation-number fluctuation  dN_i = sqrt(<X^2> - <X>^2)
    with X = n_i + s_i (diagonal in the occupation basis);
  * two-atom concurrence from the X-form reduced density matrix,
    C_ij = 2 * max(0, |z_ij| - sqrt(u+ u-));
  * interference visibility (Vmax - Vmin)/(Vmax + Vmin) of the photon
    momentum distribution.

Correlator conventions for an atom pair (i, j), all probabilities taken
on the atomic subspace after tracing photons and the other atoms:

    z  = <S_i^+ S_j^->      (real, amplitudes are real)
    u+ = P(s_i = 1, s_j = 1)        u- = P(s_i = 0, s_j = 0)
    w1 = P(s_i = 0, s_j = 1)        w2 = P(s_i = 1, s_j = 0)

Excitation conservation forbids matrix elements between atomic sectors
whose s_i + s_j differ, so the pair density matrix is exactly X-shaped:
corners vanish identically, and the concurrence reduces to the closed
form above.  The Wootters eigenvalue route is kept as an independent
cross-check (concurrence_wootters).

The average concurrence uses the 1/N normalization over pairs i < j (not
the pair count), and likewise the average fluctuation is (1/N) sum_i dN_i.
That N denominator is unusual but deliberate; downstream contour maps
assume it.

All functions are pure and safe for data-parallel use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .hilbert import Configuration
from .model import StateVector

# sigma_y (x) sigma_y is real in the (ee, eg, ge, gg) product basis
_SYSY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


@dataclass(frozen=True)
class PairCorrelators:
    """Spin correlators of one atom pair; see module docstring for conventions."""

    z: float
    u_plus: float
    u_minus: float
    w1: float
    w2: float

    def __post_init__(self):
        total = self.u_plus + self.u_minus + self.w1 + self.w2
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"pair probabilities sum to {total}, not 1")
        for name in ("u_plus", "u_minus", "w1", "w2"):
            p = getattr(self, name)
            if not -1e-12 <= p <= 1.0 + 1e-12:
                raise ValueError(f"{name} = {p} outside [0, 1]")
        if abs(self.z) > math.sqrt(max(self.w1, 0.0) * max(self.w2, 0.0)) + 1e-9:
            raise ValueError("|z| exceeds sqrt(w1 w2); broken state vector")

    def locus_value(self) -> float:
        """|z| - sqrt(u+ u-); its sign change marks the concurrence kink."""
        return abs(self.z) - math.sqrt(max(self.u_plus, 0.0) * max(self.u_minus, 0.0))


class MomentumDistribution(NamedTuple):
    k_values: np.ndarray
    weights: np.ndarray


class Visibility(NamedTuple):
    """Value in [0, 1]; defined is False when the photon vacuum forced the
    0/0 convention (value 0 by choice, not by measurement)."""

    value: float
    defined: bool


@dataclass
class WitnessSet:
    """Everything the sweep records for one ground state."""

    excitation_variance_per_site: np.ndarray
    photon_variance_per_site: np.ndarray
    concurrence_matrix: np.ndarray      # N x N symmetric, diagonal unused
    locus_values: np.ndarray            # N x N, |z| - sqrt(u+ u-), diagonal unused
    visibility: float
    visibility_defined: bool
    avg_concurrence: float              # (1/N) * sum_{i<j} C_ij  (note the N)
    avg_excitation_variance: float      # (1/N) * sum_i dN_i


def _require_site(state: StateVector, site: int):
    if not 0 <= site < state.basis.n_cavities:
        raise ValueError(f"site {site} out of range for N={state.basis.n_cavities}")


def _diagonal_variance(state: StateVector, values: np.ndarray) -> float:
    p = state.amplitudes ** 2
    m1 = float(p @ values)
    m2 = float(p @ (values * values))
    var = m2 - m1 * m1
    if var < -1e-12:
        raise ValueError(f"variance radicand {var} below roundoff floor")
    return math.sqrt(max(var, 0.0))


def excitation_variance(state: StateVector, site: int) -> float:
    """Fluctuation of n_site + s_site in the given state."""
    _require_site(state, site)
    values = (state.basis.photon_table[:, site] + state.basis.atom_table[:, site]).astype(float)
    return _diagonal_variance(state, values)


def photon_variance(state: StateVector, site: int) -> float:
    """Fluctuation of the bare photon number n_site.

    Stays finite deep in the Mott regime whenever g > 0 (virtual photons),
    which is why it cannot witness the transition like the excitation
    fluctuation does.
    """
    _require_site(state, site)
    return _diagonal_variance(state, state.basis.photon_table[:, site].astype(float))


def pair_correlators(state: StateVector, i: int, j: int) -> PairCorrelators:
    """z, u+, u-, w1, w2 for atoms (i, j)."""
    _require_site(state, i)
    _require_site(state, j)
    if i == j:
        raise ValueError("pair correlators need two distinct sites")
    amp = state.amplitudes
    si = state.basis.atom_table[:, i]
    sj = state.basis.atom_table[:, j]
    p = amp ** 2
    u_plus = float(p[(si == 1) & (sj == 1)].sum())
    u_minus = float(p[(si == 0) & (sj == 0)].sum())
    w1 = float(p[(si == 0) & (sj == 1)].sum())
    w2 = float(p[(si == 1) & (sj == 0)].sum())

    # z couples each (s_i=0, s_j=1) configuration to its flipped partner
    z = 0.0
    index_of = state.basis.index_of
    for c in np.flatnonzero((si == 0) & (sj == 1)):
        cfg = state.basis.configurations[c]
        s2 = list(cfg.atom_levels)
        s2[i] = 1
        s2[j] = 0
        partner = index_of[Configuration(cfg.photon_occupations, tuple(s2))]
        z += amp[partner] * amp[c]
    return PairCorrelators(z=float(z), u_plus=u_plus, u_minus=u_minus, w1=w1, w2=w2)


def reduced_density_matrix(state: StateVector, i: int, j: int) -> np.ndarray:
    """4x4 pair density matrix in the (ee, eg, ge, gg) product basis.

    The corner (ee <-> gg) elements connect atomic sectors differing by
    two excitations with identical photon content, which no sector state
    can populate; they are structurally zero here and that zero pattern is
    what makes the closed-form concurrence exact.
    """
    c = pair_correlators(state, i, j)
    rho = np.zeros((4, 4))
    rho[0, 0] = c.u_plus
    rho[1, 1] = c.w2
    rho[2, 2] = c.w1
    rho[3, 3] = c.u_minus
    rho[1, 2] = rho[2, 1] = c.z
    return rho


def concurrence(state: StateVector, i: int, j: int) -> float:
    """Closed-form pair concurrence 2 * max(0, |z| - sqrt(u+ u-))."""
    c = pair_correlators(state, i, j)
    return 2.0 * max(0.0, c.locus_value())


def concurrence_wootters(rho: np.ndarray) -> float:
    """Eigenvalue-route concurrence of a two-qubit density matrix.

    Independent oracle for `concurrence`: the lambda_i are the square
    roots of the eigenvalues of rho (sy x sy) rho* (sy x sy), descending,
    and C = max(0, l1 - l2 - l3 - l4).  With rho = L L^T those square
    roots equal |eig(L^T (sy x sy) L)|, a symmetric problem that keeps
    near-zero lambdas at absolute machine precision instead of sqrt(eps).
    """
    rho = np.asarray(rho, dtype=float)
    if rho.shape != (4, 4):
        raise ValueError("expected a 4x4 density matrix")
    if abs(float(np.trace(rho)) - 1.0) > 1e-8:
        raise ValueError(f"trace {np.trace(rho)} != 1")
    w, v = np.linalg.eigh(rho)
    if float(w.min()) < -1e-8:
        raise ValueError("density matrix has a negative eigenvalue")
    sqrt_rho_factor = v * np.sqrt(np.clip(w, 0.0, None))   # L with rho = L L^T
    lams = np.abs(np.linalg.eigvalsh(sqrt_rho_factor.T @ _SYSY @ sqrt_rho_factor))
    lams[::-1].sort()
    return max(0.0, float(lams[0] - lams[1] - lams[2] - lams[3]))


def photon_correlation_matrix(state: StateVector) -> np.ndarray:
    """<a_j^dag a_l> for all site pairs; diagonal holds mean photon numbers."""
    basis = state.basis
    n_sites = basis.n_cavities
    amp = state.amplitudes
    p = amp ** 2
    corr = np.zeros((n_sites, n_sites))
    for jsite in range(n_sites):
        corr[jsite, jsite] = float(p @ basis.photon_table[:, jsite])
    index_of = basis.index_of
    for jsite in range(n_sites):
        for lsite in range(jsite + 1, n_sites):
            acc = 0.0
            occ_l = basis.photon_table[:, lsite]
            for c in np.flatnonzero(occ_l >= 1):
                cfg = basis.configurations[c]
                n2 = list(cfg.photon_occupations)
                n2[lsite] -= 1
                n2[jsite] += 1
                partner = index_of[Configuration(tuple(n2), cfg.atom_levels)]
                nl = cfg.photon_occupations[lsite]
                nj = cfg.photon_occupations[jsite]
                acc += amp[partner] * math.sqrt(nl * (nj + 1)) * amp[c]
            corr[jsite, lsite] = corr[lsite, jsite] = acc
    return corr


def momentum_distribution(corr: np.ndarray, boundary: str) -> MomentumDistribution:
    """Photon weight per momentum mode.

    periodic: V(k) = (1/N) sum_jl e^{ik(j-l)} <a_j^dag a_l>, k = 2 pi n / N;
    open:     S(k) = 2/(N+1) sum_ij sin(ki) sin(kj) <a_i^dag a_j>,
              k = n pi / (N+1), n = 1..N  (sites 1-indexed).

    Both transforms are complete: the weights add up to the total mean
    photon number (checked here to 1e-10).
    """
    corr = np.asarray(corr, dtype=float)
    n_sites = corr.shape[0]
    if corr.shape != (n_sites, n_sites) or np.abs(corr - corr.T).max() > 1e-10:
        raise ValueError("correlation matrix must be square symmetric")

    if boundary == "periodic":
        ks = 2.0 * math.pi * np.arange(n_sites) / n_sites
        weights = []
        for k in ks:
            phase = np.exp(1j * k * np.arange(1, n_sites + 1))
            weights.append(float(np.real(np.conj(phase) @ corr @ phase)) / n_sites)
    elif boundary == "open":
        ks = math.pi * np.arange(1, n_sites + 1) / (n_sites + 1)
        weights = []
        for k in ks:
            sines = np.sin(k * np.arange(1, n_sites + 1))
            weights.append(2.0 / (n_sites + 1) * float(sines @ corr @ sines))
    else:
        raise ValueError(f"unknown boundary {boundary!r}")

    weights = np.array(weights)
    if weights.min() < -1e-12:
        raise ValueError(f"momentum weight {weights.min()} below roundoff floor")
    weights = np.clip(weights, 0.0, None)
    total = float(np.trace(corr))
    if abs(weights.sum() - total) > 1e-10:
        raise ValueError(
            f"transform incomplete: weights sum {weights.sum()} vs trace {total}"
        )
    return MomentumDistribution(k_values=np.asarray(ks), weights=weights)


def visibility(dist: MomentumDistribution) -> Visibility:
    """(Vmax - Vmin)/(Vmax + Vmin); photon vacuum returns the 0 convention."""
    vmax = float(dist.weights.max())
    vmin = float(dist.weights.min())
    if vmax + vmin < 1e-12:
        return Visibility(0.0, False)
    return Visibility((vmax - vmin) / (vmax + vmin), True)


def witness_set(state: StateVector, boundary: str) -> WitnessSet:
    """All per-site and per-pair witnesses plus the 1/N-normalized averages."""
    norm = state.norm()
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"state norm {norm} too far from 1")
    n_sites = state.basis.n_cavities

    exc = np.array([excitation_variance(state, i) for i in range(n_sites)])
    pho = np.array([photon_variance(state, i) for i in range(n_sites)])

    conc = np.zeros((n_sites, n_sites))
    locus = np.zeros((n_sites, n_sites))
    for i in range(n_sites):
        for j in range(i + 1, n_sites):
            c = pair_correlators(state, i, j)
            lv = c.locus_value()
            locus[i, j] = locus[j, i] = lv
            conc[i, j] = conc[j, i] = 2.0 * max(0.0, lv)

    vis = visibility(momentum_distribution(photon_correlation_matrix(state), boundary))

    upper = conc[np.triu_indices(n_sites, k=1)]
    return WitnessSet(
        excitation_variance_per_site=exc,
        photon_variance_per_site=pho,
        concurrence_matrix=conc,
        locus_values=locus,
        visibility=vis.value,
        visibility_defined=vis.defined,
        avg_concurrence=float(upper.sum()) / n_sites,
        avg_excitation_variance=float(exc.sum()) / n_sites,
    )
