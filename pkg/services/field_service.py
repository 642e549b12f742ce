"""Photon-number distributions of the cavity field and their statistics."""
from __future__ import annotations

import logging
import math

import numpy as np

from config import Config
from errors import DomainError
from models import FieldKind, FieldStatistics, PhotonDistribution

logger = logging.getLogger(__name__)

# Field Service


def fock_distribution(m: int, max_photons: int = Config.MAX_PHOTON_NUMBER) -> PhotonDistribution:
    """Number state |m>: weight 1 at n = m, zero-padded from n = 0."""
    if not float(m).is_integer() or m < 0:
        raise DomainError(f"Fock photon number must be a nonnegative integer, got {m!r}")
    if m > max_photons:
        raise DomainError(f"Fock photon number {m} exceeds the maximum of {max_photons}")
    m = int(m)
    weights = np.zeros(m + 1)
    weights[m] = 1.0
    return PhotonDistribution(weights, FieldKind.FOCK, float(m), 0.0)


def thermal_tail_cutoff(
    nbar: float, tail_epsilon: float, max_photons: int = Config.MAX_PHOTON_NUMBER
) -> int:
    """Smallest N with sum_{n > N} P_n = (nbar / (1 + nbar))^(N + 1) below tail_epsilon."""
    ratio = nbar / (1.0 + nbar)
    if ratio >= 1.0:
        raise DomainError(f"mean photon number {nbar:g} is too large to truncate")
    estimate = math.ceil(math.log(tail_epsilon) / math.log(ratio)) - 1
    if estimate > max_photons:
        raise DomainError(
            f"thermal field with mean {nbar:g} needs about {estimate} photon numbers "
            f"(maximum {max_photons})"
        )
    n_max = max(0, estimate)
    while ratio ** (n_max + 1) >= tail_epsilon:
        n_max += 1
    while n_max > 0 and ratio ** n_max < tail_epsilon:
        n_max -= 1
    return n_max


def thermal_distribution(nbar: float, tail_epsilon: float = 1e-12) -> PhotonDistribution:
    """
    Bose-Einstein photon statistics P_n = nbar^n / (1 + nbar)^(n + 1).

    The series is cut at the first N whose discarded tail is below
    ``tail_epsilon``; the discarded mass is kept in ``tail_mass``.
    """
    if not math.isfinite(nbar) or nbar < 0:
        raise DomainError(f"mean photon number must be finite and >= 0, got {nbar!r}")
    if not 0 < tail_epsilon <= 1e-6:
        raise DomainError(f"tail_epsilon must lie in (0, 1e-6], got {tail_epsilon!r}")
    if nbar == 0:
        return PhotonDistribution(np.ones(1), FieldKind.THERMAL, 0.0, 0.0)

    ratio = nbar / (1.0 + nbar)
    n_max = thermal_tail_cutoff(nbar, tail_epsilon)
    weights = np.power(ratio, np.arange(n_max + 1)) / (1.0 + nbar)
    tail_mass = ratio ** (n_max + 1)
    logger.debug("thermal nbar=%g truncated at N=%d (tail %.3e)", nbar, n_max, tail_mass)
    return PhotonDistribution(weights, FieldKind.THERMAL, float(nbar), tail_mass)


def nbar_from_temperature(x: float) -> float:
    """Bose-Einstein occupation 1 / (e^x - 1) for x = hbar*omega / kT."""
    if not x > 0:
        raise DomainError(f"hbar*omega/kT must be > 0, got {x!r}")
    if x > 700:
        return 0.0  # e^x overflows; occupation is below 1e-304
    return 1.0 / math.expm1(x)


def thermal_from_temperature(x: float, tail_epsilon: float = 1e-12) -> PhotonDistribution:
    return thermal_distribution(nbar_from_temperature(x), tail_epsilon)


def _moment(d: PhotonDistribution, power: int) -> float:
    n = d.photon_numbers().astype(float)
    return math.fsum(d.weights * n ** power)


def mean_photon(d: PhotonDistribution) -> float:
    """<n> = sum n P_n."""
    return _moment(d, 1)


def variance_metric(d: PhotonDistribution) -> float:
    """
    V = (<n^2> - <n>) / <n^2>.

    This is the field-noise figure used for micromaser statistics, not the
    statistical variance or the Fano factor: V = 1 - 1/m for a number state,
    V < 1 flags a nonclassical field.
    """
    second = _moment(d, 2)
    if second == 0:
        raise DomainError("variance metric is undefined for the vacuum (<n^2> = 0)")
    return (second - mean_photon(d)) / second


def field_statistics(d: PhotonDistribution) -> FieldStatistics:
    """Summary of a distribution; the variance metric is None for the vacuum."""
    mean = mean_photon(d)
    try:
        variance = variance_metric(d)
    except DomainError:
        variance = None
    return FieldStatistics(
        kind=d.kind,
        nominal_mean=d.nominal_mean,
        mean_photon=mean,
        variance_metric=variance,
        support_size=d.support_size,
        tail_mass=d.tail_mass,
    )
