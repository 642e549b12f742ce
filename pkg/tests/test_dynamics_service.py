import math

import numpy as np
import pytest

from errors import DomainError, EmptyDistributionError, InvalidDensityError, SparsityError
from models import FieldKind, PhotonDistribution
from services.dynamics_service import (
    SPARSITY_MASK,
    check_density,
    fock_two_atom_density,
    jc_amplitudes,
    two_atom_coefficients,
    two_atom_density,
)
from services.field_service import fock_distribution, thermal_distribution
from tests.conftest import ANCHOR_ALPHAS, ANCHOR_COHERENCE, ANCHOR_GT, ANCHOR_POPULATIONS


def test_jc_amplitudes():
    assert jc_amplitudes(0, 0.0) == (1.0, 0.0)
    c, s = jc_amplitudes(3, math.pi / 4)
    assert c == pytest.approx(math.cos(math.pi / 2), abs=1e-15)
    assert s == pytest.approx(1.0)


def test_coefficients_at_anchor():
    coeffs = two_atom_coefficients(0, ANCHOR_GT)
    assert coeffs.as_tuple() == pytest.approx(ANCHOR_ALPHAS, abs=2e-5)


def test_coefficients_at_zero_angle():
    assert two_atom_coefficients(5, 0.0).as_tuple() == (1.0, 0.0, 0.0, 0.0)


@pytest.mark.parametrize("n, gt", [(-1, 1.0), (1.5, 1.0), (0, -0.1), (0, float("nan"))])
def test_coefficients_reject_bad_arguments(n, gt):
    with pytest.raises(DomainError):
        two_atom_coefficients(n, gt)


def test_coefficients_are_normalized(gt_grid_256):
    for n in range(101):
        for gt in gt_grid_256:
            assert abs(two_atom_coefficients(n, gt).norm_squared - 1.0) < 1e-12


def test_anchor_density(anchor_density):
    assert anchor_density.populations == pytest.approx(ANCHOR_POPULATIONS, abs=2e-5)
    assert anchor_density.coherence.real == pytest.approx(ANCHOR_COHERENCE, abs=2e-5)
    assert anchor_density.coherence.imag == 0.0


def test_density_is_read_only(anchor_density):
    with pytest.raises(ValueError):
        anchor_density.matrix[0, 0] = 1.0


def test_identity_evolution_at_zero_angle():
    for d in (fock_distribution(4), thermal_distribution(2.0)):
        expected = np.zeros((4, 4))
        expected[0, 0] = 1.0
        assert np.allclose(two_atom_density(d, 0.0).matrix, expected, atol=1e-15)


def test_thermal_density_is_weighted_sum_of_fock_densities():
    d = thermal_distribution(1.0, 1e-12)
    gt = 1.3
    expected = sum(p * fock_two_atom_density(n, gt).matrix for n, p in enumerate(d.weights))
    expected /= d.total_weight
    assert np.allclose(two_atom_density(d, gt).matrix, expected, atol=1e-14)


def test_thermal_vacuum_matches_fock_vacuum(gt_grid_256):
    vacuum = thermal_distribution(0.0)
    for gt in gt_grid_256[::8]:
        assert np.array_equal(two_atom_density(vacuum, gt).matrix, fock_two_atom_density(0, gt).matrix)


def test_empty_distribution_rejected():
    d = PhotonDistribution(np.zeros(3), FieldKind.THERMAL, 0.0)
    with pytest.raises(EmptyDistributionError):
        two_atom_density(d, 1.0)


@pytest.mark.parametrize("n", [0, 1, 4])
def test_coherence_vanishes_at_forced_zeros(n):
    omega = math.sqrt(n + 1)
    for gt in (math.pi / (2 * omega), math.pi / omega, 3 * math.pi / (2 * omega)):
        assert abs(fock_two_atom_density(n, gt).coherence) < 1e-12


def test_densities_are_valid_over_grid(gt_grid_256):
    fields = [fock_distribution(m) for m in (0, 1, 5, 10)]
    fields += [thermal_distribution(nbar) for nbar in (0.1, 1.0, 10.0)]
    for d in fields:
        for gt in gt_grid_256[::4]:
            rho = two_atom_density(d, gt)
            check_density(rho)
            assert np.all(np.abs(rho.matrix[~SPARSITY_MASK]) == 0.0)


def test_check_density_accepts_plain_matrix():
    checked = check_density(np.diag([0.25, 0.25, 0.25, 0.25]))
    assert checked.populations.tolist() == [0.25] * 4


@pytest.mark.parametrize(
    "matrix",
    [
        np.diag([0.5, 0.5, 0.5, 0.5]),
        np.diag([1.5, -0.5, 0.0, 0.0]),
        np.array([[0.5, 0.1, 0, 0], [0.0, 0.5, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
        np.eye(3) / 3,
    ],
    ids=["trace", "negative", "non-hermitian", "shape"],
)
def test_check_density_rejects_invalid_matrices(matrix):
    with pytest.raises(InvalidDensityError):
        check_density(matrix)


def test_check_density_sparsity():
    rho = np.diag([0.4, 0.1, 0.1, 0.4]).astype(complex)
    rho[0, 3] = rho[3, 0] = 0.2
    with pytest.raises(SparsityError):
        check_density(rho)
    assert check_density(rho, sparsity=False).matrix[0, 3] == 0.2

    rho = np.diag([0.0, 0.5, 0.5, 0.0]).astype(complex)
    rho[1, 2], rho[2, 1] = 0.3j, -0.3j
    with pytest.raises(SparsityError):
        check_density(rho)


def test_jc_amplitudes_for_excited_photon_number():
    assert jc_amplitudes(3, 1.0) == pytest.approx((math.cos(2.0), math.sin(2.0)), abs=1e-15)


def test_two_atom_density_comes_out_checked(monkeypatch):
    calls = []

    def recording_check(rho, *args, **kwargs):
        calls.append(rho)
        return rho

    monkeypatch.setattr("services.dynamics_service.check_density", recording_check)
    rho = two_atom_density(thermal_distribution(1.0), ANCHOR_GT)
    assert calls == [rho]
