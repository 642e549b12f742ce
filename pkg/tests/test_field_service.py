import math

import numpy as np
import pytest

from errors import DomainError
from models import FieldKind
from services.field_service import (
    field_statistics,
    fock_distribution,
    mean_photon,
    nbar_from_temperature,
    thermal_distribution,
    thermal_from_temperature,
    thermal_tail_cutoff,
    variance_metric,
)


def test_fock_distribution_is_zero_padded_delta():
    d = fock_distribution(3)
    assert d.kind is FieldKind.FOCK
    assert d.weights.tolist() == [0.0, 0.0, 0.0, 1.0]
    assert d.nominal_mean == 3.0
    assert d.tail_mass == 0.0
    assert fock_distribution(0).weights.tolist() == [1.0]


@pytest.mark.parametrize("bad", [-1, 2.5, float("inf"), float("nan")])
def test_fock_distribution_rejects_bad_photon_number(bad):
    with pytest.raises(DomainError):
        fock_distribution(bad)


def test_weights_are_read_only():
    d = thermal_distribution(1.0)
    with pytest.raises(ValueError):
        d.weights[0] = 0.0


def test_thermal_first_weights():
    d = thermal_distribution(1.0, 1e-12)
    assert d.weights[:3] == pytest.approx([0.5, 0.25, 0.125], abs=1e-15)


def test_thermal_cutoff_for_large_mean():
    d = thermal_distribution(10.0, 1e-12)
    assert abs(d.n_max - 290) <= 1
    assert d.n_max == thermal_tail_cutoff(10.0, 1e-12)
    assert d.tail_mass < 1e-12
    # one fewer level would leave too much tail
    assert (10.0 / 11.0) ** d.n_max >= 1e-12


def test_thermal_vacuum():
    d = thermal_distribution(0.0, 1e-12)
    assert d.kind is FieldKind.THERMAL
    assert d.weights.tolist() == [1.0]
    assert d.tail_mass == 0.0


@pytest.mark.parametrize("nbar, eps", [(-0.1, 1e-12), (float("inf"), 1e-12), (1.0, 0.0), (1.0, 1e-3)])
def test_thermal_rejects_bad_arguments(nbar, eps):
    with pytest.raises(DomainError):
        thermal_distribution(nbar, eps)


@pytest.mark.parametrize("nbar", [0.1, 0.5, 1.0, 2.0, 5.0, 10.0])
def test_thermal_properties(nbar):
    eps = 1e-12
    d = thermal_distribution(nbar, eps)
    assert np.all(np.diff(d.weights) < 0)
    assert abs(d.total_weight + d.tail_mass - 1.0) < 1e-14
    assert 1.0 - eps <= d.total_weight <= 1.0
    # the discarded tail carries mean (N + 1 + nbar) * tail_mass
    assert abs(mean_photon(d) - nbar) <= eps * (d.n_max + 1 + nbar)


def test_mean_photon_examples():
    assert mean_photon(fock_distribution(7)) == 7.0
    assert mean_photon(thermal_distribution(1.0, 1e-12)) == pytest.approx(1.0, abs=1e-10)
    assert mean_photon(thermal_distribution(0.0, 1e-12)) == 0.0


@pytest.mark.parametrize("m", [1, 2, 3, 10, 100])
def test_variance_metric_of_number_state(m):
    assert variance_metric(fock_distribution(m)) == pytest.approx(1.0 - 1.0 / m, abs=1e-15)


def test_variance_metric_of_thermal_field():
    assert variance_metric(thermal_distribution(1.0, 1e-12)) == pytest.approx(2.0 / 3.0, abs=1e-9)


def test_variance_metric_undefined_for_vacuum():
    with pytest.raises(DomainError):
        variance_metric(fock_distribution(0))


def test_nbar_from_temperature():
    assert nbar_from_temperature(math.log(2.0)) == pytest.approx(1.0, abs=1e-14)
    assert nbar_from_temperature(1.0) == pytest.approx(0.58197670686933, abs=1e-12)
    assert nbar_from_temperature(50.0) < 1e-21
    assert nbar_from_temperature(1000.0) == 0.0
    for bad in (0.0, -1.0, float("nan")):
        with pytest.raises(DomainError):
            nbar_from_temperature(bad)


def test_thermal_from_temperature():
    d = thermal_from_temperature(math.log(2.0))
    assert d.nominal_mean == pytest.approx(1.0)
    assert d.weights[0] == pytest.approx(0.5)


def test_field_statistics():
    s = field_statistics(fock_distribution(1))
    assert s.variance_metric == 0.0
    assert s.nonclassical is True
    thermal = field_statistics(thermal_distribution(1.0))
    assert thermal.variance_metric == pytest.approx(2.0 / 3.0, abs=1e-9)
    assert thermal.support_size == 40
    vacuum = field_statistics(fock_distribution(0))
    assert vacuum.variance_metric is None
    assert vacuum.nonclassical is None


def test_fock_distribution_respects_photon_number_cap():
    assert fock_distribution(10, max_photons=10).n_max == 10
    with pytest.raises(DomainError):
        fock_distribution(11, max_photons=10)


@pytest.mark.parametrize("nbar", [1e16, 1e17, 1e300])
def test_thermal_mean_too_large_to_truncate(nbar):
    with pytest.raises(DomainError):
        thermal_distribution(nbar)


def test_thermal_cutoff_beyond_photon_number_cap():
    with pytest.raises(DomainError, match="maximum 100000"):
        thermal_distribution(1e6)
    with pytest.raises(DomainError):
        thermal_tail_cutoff(10.0, 1e-12, max_photons=10)
    assert thermal_tail_cutoff(10.0, 1e-12, max_photons=400) == thermal_tail_cutoff(10.0, 1e-12)


def test_thermal_from_tiny_temperature_ratio_is_rejected():
    with pytest.raises(DomainError):
        thermal_from_temperature(1e-20)
