"""Closed forms at the degenerate point and their numeric validation."""

import math

import numpy as np
import pytest

from jchlattice import (
    concurrence,
    embed_perturbative_state,
    enumerate_basis,
    perturbative_concurrence,
    perturbative_ground_state,
    validate_against_numerics,
    zero_momentum_amplitudes,
)


@pytest.mark.parametrize("n", range(2, 9))
def test_normalization_identity(n):
    pgs = perturbative_ground_state(n)
    assert pgs.eta**2 * (1 + pgs.beta**2) + 0.5 == pytest.approx(1.0, abs=1e-14)
    # amplitude vector of the four-state superposition is unit length
    assert sum(a * a for a in pgs.amplitudes) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("n", range(2, 9))
def test_printed_slope_forms_agree_symbolically(n):
    # the two printed forms sqrt(2N(1+b^2)) and sqrt(N)/eta are one number
    pgs = perturbative_ground_state(n)
    assert math.sqrt(2 * n * (1 + pgs.beta**2)) == pytest.approx(
        math.sqrt(n) / pgs.eta, abs=1e-12
    )
    # the block eigenvalue itself is -1/eta, without the sqrt(N)
    assert pgs.first_order_energy_coefficient == pytest.approx(
        -1.0 / pgs.eta, abs=1e-14
    )


def test_concurrence_closed_form_values():
    # frozen from (1-b)^2 / (2(1+b^2)) at b = sqrt((N-1)/N)
    assert perturbative_concurrence(2) == pytest.approx(0.028595479208968308, abs=1e-15)
    assert perturbative_concurrence(4) == pytest.approx(0.005128340694606492, abs=1e-15)
    assert perturbative_concurrence(10**6) < 1e-12  # beta -> 1 kills it
    with pytest.raises(ValueError):
        perturbative_concurrence(1)


def test_zero_momentum_amplitudes_normalized():
    for n, p in [(2, 2), (3, 3), (4, 2)]:
        amps = zero_momentum_amplitudes(n, p)
        assert sum(a * a for a in amps.values()) == pytest.approx(1.0, abs=1e-13)
        assert all(sum(occ) == p for occ in amps)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_embed_reproduces_closed_form_concurrence(n):
    basis = enumerate_basis(n, n)
    state = embed_perturbative_state(basis, 0, 1)
    assert state.norm() == pytest.approx(1.0, abs=1e-12)
    assert concurrence(state, 0, 1) == pytest.approx(
        perturbative_concurrence(n), abs=1e-12
    )


def test_embed_pair_choice_is_irrelevant():
    basis = enumerate_basis(4, 4)
    a = embed_perturbative_state(basis, 0, 1)
    b = embed_perturbative_state(basis, 1, 3)
    assert concurrence(a, 0, 1) == pytest.approx(concurrence(b, 1, 3), abs=1e-13)


def test_embed_rejects_wrong_sector():
    with pytest.raises(ValueError):
        embed_perturbative_state(enumerate_basis(3, 2), 0, 1)
    with pytest.raises(ValueError):
        embed_perturbative_state(enumerate_basis(3, 3), 1, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_finite_difference_slope_matches_block_eigenvalue(n):
    """Oracle check of the first-order energy: the finite-difference slope
    of the exact ground energy converges to the four-state block value
    -sqrt(2(1+beta^2))."""
    report = validate_against_numerics(n, g_over_t=1e-3, g_list=())
    assert report.measured_slope == pytest.approx(
        report.predicted_slope, rel=1e-2
    )


def test_validation_report_n2():
    report = validate_against_numerics(2, g_over_t=1e-3, g_list=(1e-2, 1e-3, 1e-4))
    errors = [s.concurrence_rel_error for s in report.samples]
    assert errors[0] < 1e-1 and errors[1] < 1e-2 and errors[2] < 1e-3
    assert errors[0] > errors[1] > errors[2]  # first-order error shrinks with g
    # energy agrees with eps1 = g * coefficient up to the second-order term
    for s in report.samples:
        g = s.g_over_t
        assert s.energy_abs_error < 10 * g * g

    block = report.to_csv()
    lines = block.strip().split("\n")
    assert lines[-4].startswith("g_over_t,")
    assert len(lines) == 4 + len(report.samples)


def test_validation_at_zero_coupling_skips_comparison():
    report = validate_against_numerics(2, g_over_t=0.0, g_list=(0.0,))
    assert report.samples[0].degenerate
    assert math.isnan(report.samples[0].concurrence)
    assert math.isnan(report.measured_slope)
