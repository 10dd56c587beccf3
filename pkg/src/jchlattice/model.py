"""Lattice Hamiltonian H = H_free + H_int + H_hop on a fixed-excitation sector.

    H_free = omega_a * sum_i n_i  +  omega_b * sum_i s_i
    H_int  = sum_i g_i (a_i^dag |g><e|_i + h.c.)
    H_hop  = -t * sum_bonds (a_i^dag a_j + h.c.)

Matrix elements in the occupation basis:
  * interaction couples |.. n_i, e_i ..> and |.. n_i+1, g_i ..> with
    g_i * sqrt(n_i + 1);
  * hopping moves one photon j -> i with -t * sqrt(n_j (n_i + 1)).

Every element is real, so the matrix is real symmetric and states carry
real amplitudes throughout.

Boundary conventions: "open" couples sites i..i+1 for i < N; "periodic"
follows the literal wraparound sum i -> i+1 mod N.  For N = 2 the
wraparound sum hits the single physical bond twice, giving it strength
2t.  That is kept deliberately: it places the zero-momentum orbital at
-2t for every ring size, so the g = 0 level crossing sits at delta = 2t
uniformly, which the degenerate-manifold analysis relies on.

Within a fixed sector, shifting (omega_a, omega_b) by a common constant c
adds exactly M*c to every eigenvalue and leaves eigenvectors unchanged;
only the detuning delta = omega_a - omega_b matters for the physics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .hilbert import Configuration, SectorBasis

BOUNDARIES = ("open", "periodic")


@dataclass(frozen=True)
class ModelParams:
    """Couplings and frequencies of one lattice realization.

    couplings holds the per-site atom-photon strengths g_i; the uniform
    case is couplings = (g,) * N.  Site-resolved values exist so that the
    two-site perturbative setup (couplings on only at one pair) runs
    through the same builder.
    """

    omega_a: float
    omega_b: float
    couplings: tuple[float, ...]
    hopping: float
    boundary: str = "open"

    def __post_init__(self):
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}")
        if self.hopping < 0:
            raise ValueError("hopping must be non-negative")
        if any(g < 0 for g in self.couplings):
            raise ValueError("couplings must be non-negative")
        object.__setattr__(self, "couplings", tuple(float(g) for g in self.couplings))

    @property
    def detuning(self) -> float:
        return self.omega_a - self.omega_b

    @staticmethod
    def uniform(n_cavities, delta, hopping, g=1.0, boundary="open", omega_b=0.0):
        """Common case: equal coupling g everywhere, omega_a = omega_b + delta."""
        return ModelParams(
            omega_a=omega_b + delta,
            omega_b=omega_b,
            couplings=(g,) * n_cavities,
            hopping=hopping,
            boundary=boundary,
        )


class StateVector:
    """Real amplitude vector over a SectorBasis."""

    def __init__(self, basis: SectorBasis, amplitudes):
        amplitudes = np.asarray(amplitudes, dtype=np.float64)
        if amplitudes.shape != (basis.dim,):
            raise ValueError(
                f"amplitude vector has shape {amplitudes.shape}, basis dim {basis.dim}"
            )
        self.basis = basis
        self.amplitudes = amplitudes

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.basis, self.amplitudes / n)


def neighbor_bonds(n_cavities: int, boundary: str):
    """Directed bond list (i, j): hopping terms a_i^dag a_j + a_j^dag a_i.

    The periodic list follows the literal wraparound sum, so N = 2 yields
    [(0, 1), (1, 0)] and the single bond carries strength 2t (see module
    docstring).
    """
    if boundary not in BOUNDARIES:
        raise ValueError(f"boundary must be one of {BOUNDARIES}")
    if n_cavities < 2:
        return []
    if boundary == "open":
        return [(i, i + 1) for i in range(n_cavities - 1)]
    return [(i, (i + 1) % n_cavities) for i in range(n_cavities)]


class SparseHamiltonian:
    """Real symmetric sector Hamiltonian in CSR form."""

    def __init__(self, basis: SectorBasis, params: ModelParams, matrix):
        self.basis = basis
        self.params = params
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return self.basis.dim

    def apply_raw(self, amplitudes: np.ndarray) -> np.ndarray:
        """H @ v on a bare amplitude array (eigensolver hot path)."""
        return self.matrix @ amplitudes

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()


def build_hamiltonian(params: ModelParams, basis: SectorBasis) -> SparseHamiltonian:
    """Assemble H on the sector basis.

    All off-diagonal generators conserve sum(n_j + s_j), so every target
    configuration must be found in the sector; a failed lookup would mean
    a broken basis and raises immediately.
    """
    if len(params.couplings) != basis.n_cavities:
        raise ValueError(
            f"{len(params.couplings)} couplings for {basis.n_cavities} cavities"
        )
    dim = basis.dim
    index_of = basis.index_of
    rows, cols, vals = [], [], []

    # diagonal: omega_a * total photons + omega_b * excited atoms
    diag = (
        params.omega_a * basis.photon_table.sum(axis=1)
        + params.omega_b * basis.atom_table.sum(axis=1)
    ).astype(np.float64)
    rows.extend(range(dim))
    cols.extend(range(dim))
    vals.extend(diag.tolist())

    bonds = neighbor_bonds(basis.n_cavities, params.boundary)
    t = params.hopping

    for c, cfg in enumerate(basis.configurations):
        n, s = cfg.photon_occupations, cfg.atom_levels

        # atom de-excitation with photon emission, visited once from the
        # excited side; both triangle entries added explicitly
        for i, g_i in enumerate(params.couplings):
            if g_i == 0.0 or s[i] == 0:
                continue
            n2 = list(n)
            s2 = list(s)
            n2[i] += 1
            s2[i] = 0
            p = index_of[Configuration(tuple(n2), tuple(s2))]
            el = g_i * math.sqrt(n[i] + 1)
            rows.append(p); cols.append(c); vals.append(el)
            rows.append(c); cols.append(p); vals.append(el)

        # photon hopping; each directed move added once per directed bond
        # term, so the wraparound double bond accumulates to 2t
        if t != 0.0:
            for (i, j) in bonds:
                if n[j] >= 1:
                    n2 = list(n)
                    n2[j] -= 1
                    n2[i] += 1
                    p = index_of[Configuration(tuple(n2), s)]
                    rows.append(p); cols.append(c)
                    vals.append(-t * math.sqrt(n[j] * (n[i] + 1)))
                if n[i] >= 1:
                    n2 = list(n)
                    n2[i] -= 1
                    n2[j] += 1
                    p = index_of[Configuration(tuple(n2), s)]
                    rows.append(p); cols.append(c)
                    vals.append(-t * math.sqrt(n[i] * (n[j] + 1)))

    matrix = sp.coo_matrix(
        (np.array(vals), (np.array(rows), np.array(cols))), shape=(dim, dim)
    ).tocsr()
    return SparseHamiltonian(basis, params, matrix)


def apply(h: SparseHamiltonian, v: StateVector) -> StateVector:
    """H|v> as an (unnormalized) StateVector; stays inside the sector."""
    if v.basis is not h.basis and (
        v.basis.n_cavities != h.basis.n_cavities
        or v.basis.total_excitations != h.basis.total_excitations
    ):
        raise ValueError("state vector and Hamiltonian live on different bases")
    return StateVector(h.basis, h.apply_raw(v.amplitudes))
