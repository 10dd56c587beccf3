"""Analytic oracle at the zero-coupling degenerate point delta = 2t.

At g = 0 the sector Hamiltonian of a ring separates into photons and
atoms, and at delta = 2t every state with all photons condensed in the
zero-momentum orbital (any split between p photons and M - p excited
atoms) shares the energy M * omega_b: a 2^N-fold ground manifold at unit
filling M = N.

Switching on equal couplings g at exactly two sites i, j couples four of
those states,

    phi_1 = |N>_k0   all atoms ground
    phi_2 = |N-1>_k0 atom i excited, rest ground
    phi_3 = |N-1>_k0 atom j excited, rest ground
    phi_4 = |N-2>_k0 atoms i and j excited, rest ground,

with the block matrix (basis phi_1..phi_4, beta = sqrt((N-1)/N))

              [0, 1, 1, 0]
    g * B = g [1, 0, 0, beta]
              [1, 0, 0, beta]
              [0, beta, beta, 0].

Its ground eigenpair is

    lambda = -g sqrt(2 (1 + beta^2)) = -g / eta,
    psi    = eta * phi_1 - (1/2)(phi_2 + phi_3) + eta beta * phi_4,

with eta = sqrt(1 / (2 (1 + beta^2))) fixed by normalization.  The pair
concurrence of that state is

    C_ij = (1 - beta)^2 / (2 (1 + beta^2)),

independent of which pair carries the coupling (the k = 0 orbital weighs
every site equally).

A caution on the energy: the collective Bose enhancement might suggest
-g sqrt(2 N (1 + beta^2)) for the shift, but that sqrt(N) is spurious.
The local operator a_i^dag holds the zero-momentum mode with amplitude
N^{-1/2}, which exactly cancels the sqrt(N) enhancement of a_k0^dag
acting on |N-1>_k0, so each block element is g, not g sqrt(N).
Finite-difference slopes of the exact ground energy (see
validate_against_numerics) confirm the sqrt(N)-free value; the eigenvector
and the concurrence above are unaffected either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigen import ground_state
from .hilbert import Configuration, SectorBasis, enumerate_basis
from .model import ModelParams, StateVector, build_hamiltonian
from .observables import concurrence


@dataclass(frozen=True)
class PerturbativeGroundState:
    """Closed-form data of the coupled four-state manifold.

    amplitudes follow the (phi_1, phi_2, phi_3, phi_4) order:
    (eta, -1/2, -1/2, eta*beta).  first_order_energy_coefficient is the
    ground eigenvalue of B, equal to -1/eta; multiply by g for the energy
    shift.
    """

    n_cavities: int
    beta: float
    eta: float
    amplitudes: tuple[float, float, float, float]
    first_order_energy_coefficient: float


def perturbative_ground_state(n_cavities: int) -> PerturbativeGroundState:
    if n_cavities < 2:
        raise ValueError("the two-site setup needs at least two cavities")
    beta = math.sqrt((n_cavities - 1) / n_cavities)
    eta = math.sqrt(1.0 / (2.0 * (1.0 + beta * beta)))
    return PerturbativeGroundState(
        n_cavities=n_cavities,
        beta=beta,
        eta=eta,
        amplitudes=(eta, -0.5, -0.5, eta * beta),
        first_order_energy_coefficient=-math.sqrt(2.0 * (1.0 + beta * beta)),
    )


def perturbative_concurrence(n_cavities: int) -> float:
    """(1 - beta)^2 / (2 (1 + beta^2)) with beta = sqrt((N-1)/N)."""
    if n_cavities < 2:
        raise ValueError("concurrence needs at least two cavities")
    beta = math.sqrt((n_cavities - 1) / n_cavities)
    return (1.0 - beta) ** 2 / (2.0 * (1.0 + beta * beta))


def zero_momentum_amplitudes(n_cavities: int, n_photons: int) -> dict:
    """Fock expansion of |p>_k0, p photons condensed in the uniform orbital.

    Amplitude on (n_1..n_N) with sum n = p is sqrt(p! / prod n_l!) N^{-p/2}
    (multinomial weights; they square-sum to 1 by the multinomial theorem).
    """
    amps = {}

    def walk(prefix, left):
        if len(prefix) == n_cavities - 1:
            occ = prefix + (left,)
            w = math.factorial(n_photons)
            for n in occ:
                w //= math.factorial(n)
            amps[occ] = math.sqrt(w) * n_cavities ** (-n_photons / 2.0)
            return
        for first in range(left + 1):
            walk(prefix + (first,), left - first)

    walk((), n_photons)
    return amps


def embed_perturbative_state(basis: SectorBasis, i: int, j: int) -> StateVector:
    """Expand the four-state superposition in the occupation basis.

    Requires the unit-filling sector (M = N) of a ring; the k = 0
    condensate states presume the translation-invariant orbital.
    """
    n_sites = basis.n_cavities
    if basis.total_excitations != n_sites:
        raise ValueError(
            f"perturbative state lives in the M = N sector, got M = "
            f"{basis.total_excitations} for N = {n_sites}"
        )
    if i == j or not (0 <= i < n_sites and 0 <= j < n_sites):
        raise ValueError("need two distinct valid sites")

    pgs = perturbative_ground_state(n_sites)
    ground = tuple(0 for _ in range(n_sites))

    def atoms_with(*excited):
        s = [0] * n_sites
        for site in excited:
            s[site] = 1
        return tuple(s)

    pieces = [
        (pgs.amplitudes[0], n_sites, ground),
        (pgs.amplitudes[1], n_sites - 1, atoms_with(i)),
        (pgs.amplitudes[2], n_sites - 1, atoms_with(j)),
        (pgs.amplitudes[3], n_sites - 2, atoms_with(i, j)),
    ]
    vec = np.zeros(basis.dim)
    for weight, photons, atoms in pieces:
        for occ, amp in zero_momentum_amplitudes(n_sites, photons).items():
            vec[basis.index_of[Configuration(occ, atoms)]] += weight * amp
    return StateVector(basis, vec)


@dataclass(frozen=True)
class PerturbationSample:
    g_over_t: float
    ground_energy: float
    degenerate: bool
    concurrence: float
    concurrence_rel_error: float
    energy_abs_error: float


@dataclass(frozen=True)
class PerturbationValidation:
    """Numeric pipeline vs the closed forms, on a ring with pair coupling."""

    n_cavities: int
    pair: tuple[int, int]
    analytic_concurrence: float
    predicted_slope: float
    measured_slope: float
    samples: tuple

    def to_csv(self) -> str:
        lines = [
            f"# perturbative validation, N={self.n_cavities}, "
            f"pair=({self.pair[0] + 1},{self.pair[1] + 1}), delta=2t, ring",
            f"# analytic concurrence={self.analytic_concurrence!r}",
            f"# slope predicted={self.predicted_slope!r} measured={self.measured_slope!r}",
            "g_over_t,ground_energy,degenerate,concurrence,concurrence_rel_error,energy_abs_error",
        ]
        for s in self.samples:
            lines.append(
                f"{s.g_over_t!r},{s.ground_energy!r},{int(s.degenerate)},"
                f"{s.concurrence!r},{s.concurrence_rel_error!r},{s.energy_abs_error!r}"
            )
        return "\n".join(lines) + "\n"


def validate_against_numerics(
    n_cavities: int,
    g_over_t: float = 1e-3,
    pair: tuple[int, int] = (0, 1),
    g_list=(1e-2, 1e-3, 1e-4),
    hopping: float = 1.0,
    tol: float = 1e-12,
    seed: int = 0,
) -> PerturbationValidation:
    """Run model -> eigen -> observables at delta = 2t on a ring with the
    coupling alive only at `pair`, and compare against the closed forms.

    The slope is the finite difference (E0(2g) - E0(g)) / g at g =
    g_over_t * t; with the degenerate manifold at g = 0 it converges to
    first_order_energy_coefficient as g -> 0.
    """
    i, j = pair
    pgs = perturbative_ground_state(n_cavities)
    c_exact = perturbative_concurrence(n_cavities)
    basis = enumerate_basis(n_cavities, n_cavities)

    def solve(g):
        couplings = [0.0] * n_cavities
        couplings[i] = g
        couplings[j] = g
        params = ModelParams(
            omega_a=2.0 * hopping, omega_b=0.0, couplings=tuple(couplings),
            hopping=hopping, boundary="periodic",
        )
        h = build_hamiltonian(params, basis)
        return ground_state(h, tol=tol, seed=seed)

    samples = []
    for g_rel in g_list:
        g = g_rel * hopping
        result = solve(g)
        if result.degenerate:
            # level crossing: concurrence is not a function of the state
            samples.append(PerturbationSample(
                g_over_t=g_rel, ground_energy=result.energy,
                degenerate=True, concurrence=float("nan"),
                concurrence_rel_error=float("nan"),
                energy_abs_error=float("nan"),
            ))
            continue
        c_num = concurrence(result.vector, i, j)
        eps1 = g * pgs.first_order_energy_coefficient
        samples.append(PerturbationSample(
            g_over_t=g_rel,
            ground_energy=result.energy,
            degenerate=False,
            concurrence=c_num,
            concurrence_rel_error=abs(c_num - c_exact) / c_exact,
            energy_abs_error=abs(result.energy - eps1),
        ))

    g_ref = g_over_t * hopping
    if g_ref > 0:
        e_1 = solve(g_ref).energy
        e_2 = solve(2.0 * g_ref).energy
        measured_slope = (e_2 - e_1) / g_ref
    else:
        measured_slope = float("nan")

    return PerturbationValidation(
        n_cavities=n_cavities,
        pair=pair,
        analytic_concurrence=c_exact,
        predicted_slope=pgs.first_order_energy_coefficient,
        measured_slope=measured_slope,
        samples=tuple(samples),
    )
