"""Exact-diagonalization witnesses of the Mott-superfluid transition in a
coupled cavity array doped with two-level atoms.

Pipeline: enumerate the fixed-excitation sector (hilbert), assemble the
real symmetric lattice Hamiltonian (model), find the ground state by
Lanczos with a dense oracle (eigen), evaluate excitation fluctuation,
pair concurrence and photon visibility (observables), cross-check the
degenerate-point closed forms (perturbation), and scan the phase plane
to CSV (sweep, cli).
"""

__version__ = "0.1.0"

from .eigen import (
    ConvergenceError,
    DenseSpectrum,
    GroundStateResult,
    dense_spectrum,
    ground_state,
)
from .hilbert import (
    Configuration,
    SectorBasis,
    enumerate_basis,
    enumeration_count,
    lookup,
    sector_dimension,
)
from .model import (
    ModelParams,
    SparseHamiltonian,
    StateVector,
    apply,
    build_hamiltonian,
    neighbor_bonds,
)
from .observables import (
    MomentumDistribution,
    PairCorrelators,
    Visibility,
    WitnessSet,
    concurrence,
    concurrence_wootters,
    excitation_variance,
    momentum_distribution,
    pair_correlators,
    photon_correlation_matrix,
    photon_variance,
    reduced_density_matrix,
    visibility,
    witness_set,
)
from .perturbation import (
    PerturbativeGroundState,
    PerturbationValidation,
    embed_perturbative_state,
    perturbative_concurrence,
    perturbative_ground_state,
    validate_against_numerics,
    zero_momentum_amplitudes,
)
from .sweep import (
    SweepConfig,
    SweepRecord,
    locate_locus,
    run_sweep,
    write_csv,
)
