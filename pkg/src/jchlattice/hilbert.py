"""Fixed-excitation sector of a cavity array doped with two-level atoms.

Each of the N cavities carries one photon mode (occupation n_j >= 0) and
one two-level atom (s_j = 0 ground, s_j = 1 excited).  The total
excitation count sum_j (n_j + s_j) commutes with the lattice Hamiltonian,
so every computation happens inside one sector at fixed M.  Within the
sector photon numbers are bounded by M automatically: the basis is exact,
nothing is truncated.

Canonical ordering is lexicographic over the concatenated tuple
(s_1..s_N, n_1..n_N), i.e. atoms-major: all photon configurations sharing
an atomic pattern are contiguous.  Reproducible CSV output depends on
this order.

SectorBasis is immutable after construction and safe to share across
parallel workers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

# Instrumentation: sweep drivers are expected to build their basis exactly
# once and share it, which this counter makes assertable.
_enumeration_count = 0


def enumeration_count() -> int:
    """How many times enumerate_basis ran in this process."""
    return _enumeration_count


@dataclass(frozen=True)
class Configuration:
    """One basis ket |n_1..n_N; s_1..s_N>."""

    photon_occupations: tuple[int, ...]
    atom_levels: tuple[int, ...]

    def total_excitation(self) -> int:
        return sum(self.photon_occupations) + sum(self.atom_levels)

    def __post_init__(self):
        if len(self.photon_occupations) != len(self.atom_levels):
            raise ValueError("photon and atom lists must have equal length")


def sector_dimension(n_cavities: int, total_excitations: int) -> int:
    """Closed-form sector size without enumeration.

    Choosing k excited atoms leaves M - k photons to distribute over N
    cavities:  sum_k C(N, k) * C(M - k + N - 1, N - 1).
    """
    _check_sizes(n_cavities, total_excitations)
    n, m = n_cavities, total_excitations
    return sum(
        math.comb(n, k) * math.comb(m - k + n - 1, n - 1)
        for k in range(min(n, m) + 1)
    )


def _check_sizes(n_cavities, total_excitations):
    if n_cavities < 1:
        raise ValueError(f"need at least one cavity, got {n_cavities}")
    if total_excitations < 0:
        raise ValueError(f"total excitation must be >= 0, got {total_excitations}")


def _compositions(total, slots):
    """Tuples of `slots` non-negative integers summing to `total`, lexicographic."""
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


class SectorBasis:
    """Enumerated sector with bidirectional index maps.

    Attributes
    ----------
    n_cavities, total_excitations : int
    configurations : tuple[Configuration]
        Canonical (atoms-major lexicographic) order.
    index_of : dict[Configuration, int]
        Inverse map; index_of[configurations[i]] == i.
    photon_table, atom_table : int ndarray, shape (dim, N)
        Per-configuration occupations, cached for vectorized diagonal
        observables.
    """

    def __init__(self, n_cavities, total_excitations, configurations):
        self.n_cavities = n_cavities
        self.total_excitations = total_excitations
        self.configurations = tuple(configurations)
        self.index_of = {c: i for i, c in enumerate(self.configurations)}
        self.photon_table = np.array(
            [c.photon_occupations for c in self.configurations], dtype=np.int64
        ).reshape(len(self.configurations), n_cavities)
        self.atom_table = np.array(
            [c.atom_levels for c in self.configurations], dtype=np.int64
        ).reshape(len(self.configurations), n_cavities)

    def __len__(self):
        return len(self.configurations)

    @property
    def dim(self) -> int:
        return len(self.configurations)

    def __repr__(self):
        return (
            f"SectorBasis(N={self.n_cavities}, M={self.total_excitations}, "
            f"dim={self.dim})"
        )


def enumerate_basis(n_cavities: int, total_excitations: int) -> SectorBasis:
    """Build the full sector basis in canonical order."""
    global _enumeration_count
    _check_sizes(n_cavities, total_excitations)
    _enumeration_count += 1
    configs = []
    for atoms in itertools.product((0, 1), repeat=n_cavities):
        remaining = total_excitations - sum(atoms)
        if remaining < 0:
            continue
        for photons in _compositions(remaining, n_cavities):
            configs.append(Configuration(photons, atoms))
    return SectorBasis(n_cavities, total_excitations, configs)


def lookup(basis: SectorBasis, config: Configuration):
    """Dense index of `config`, or None if it lies outside the sector.

    A length mismatch is a usage error, distinct from mere absence.
    """
    if len(config.photon_occupations) != basis.n_cavities:
        raise ValueError(
            f"configuration has {len(config.photon_occupations)} sites, "
            f"basis has {basis.n_cavities}"
        )
    return basis.index_of.get(config)
