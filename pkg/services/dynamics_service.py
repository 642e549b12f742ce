"""
Resonant Jaynes-Cummings evolution of two excited atoms crossing the cavity one after the other.

Both atoms enter in |e> and see the same Rabi angle gt. The field is an
incoherent mixture sum_n P_n |n><n|, so the reduced two-atom state is the
P_n-weighted sum of the number-state results.
"""
from __future__ import annotations

import logging
import math
from typing import Tuple

import numpy as np

from config import TOLERANCES, Tolerances
from errors import DomainError, EmptyDistributionError, InvalidDensityError, SparsityError
from models import (
    ComplexMatrix,
    PhotonDistribution,
    TwoAtomCoefficients,
    TwoAtomDensity,
    rabi_angle,
)
from services.field_service import fock_distribution
from services.linalg_service import hermitian_defect, hermitian_eigenvalues

logger = logging.getLogger(__name__)

# Entries allowed to be nonzero: the diagonal and the real e1g2/g1e2 coherence.
SPARSITY_MASK = np.eye(4, dtype=bool)
SPARSITY_MASK[1, 2] = SPARSITY_MASK[2, 1] = True

# Dynamics Service


def _photon_number(n) -> int:
    if not float(n).is_integer() or n < 0:
        raise DomainError(f"photon number must be a nonnegative integer, got {n!r}")
    return int(n)


def jc_amplitudes(n: int, gt: float) -> Tuple[float, float]:
    """Amplitudes of |e,n> and |g,n+1> after one excited atom crosses the number state |n>."""
    theta = math.sqrt(_photon_number(n) + 1) * rabi_angle(gt)
    return math.cos(theta), math.sin(theta)


def two_atom_coefficients(n: int, gt: float) -> TwoAtomCoefficients:
    """
    Amplitudes after both atoms have crossed |n>.

    The second atom meets |n> if the first stayed excited and |n+1> if it emitted.
    """
    n = _photon_number(n)
    c1, s1 = jc_amplitudes(n, gt)
    c2, s2 = jc_amplitudes(n + 1, gt)
    return TwoAtomCoefficients(n=n, alpha1=c1 * c1, alpha2=c1 * s1, alpha3=c2 * s1, alpha4=s1 * s2)


def _alpha_arrays(ns: np.ndarray, gt: float) -> Tuple[np.ndarray, ...]:
    theta1 = np.sqrt(ns + 1.0) * gt
    theta2 = np.sqrt(ns + 2.0) * gt
    c1, s1 = np.cos(theta1), np.sin(theta1)
    c2, s2 = np.cos(theta2), np.sin(theta2)
    return c1 * c1, c1 * s1, c2 * s1, s1 * s2


def two_atom_density(d: PhotonDistribution, gt: float) -> TwoAtomDensity:
    """
    Reduced two-atom density for a photon-number mixture.

    Diagonal (b1, b2, b3, b5) and the (e1g2, g1e2) coherence b4 are P_n-weighted
    sums of alpha1^2, alpha2^2, alpha3^2, alpha4^2 and alpha2*alpha3, divided by
    sum P_n so truncated thermal fields still give trace 1.
    """
    gt = rabi_angle(gt)
    total = d.total_weight if d.support_size else 0.0
    if total <= 0:
        raise EmptyDistributionError(f"distribution {d!r} carries no weight")

    ns = np.flatnonzero(d.weights > 0)
    p = d.weights[ns]
    a1, a2, a3, a4 = _alpha_arrays(ns.astype(float), gt)

    rho = np.zeros((4, 4))
    rho[0, 0] = np.dot(p, a1 * a1)
    rho[1, 1] = np.dot(p, a2 * a2)
    rho[2, 2] = np.dot(p, a3 * a3)
    rho[3, 3] = np.dot(p, a4 * a4)
    rho[1, 2] = rho[2, 1] = np.dot(p, a2 * a3)
    logger.debug("two-atom density at gt=%.6g over %d photon numbers", gt, ns.size)
    return check_density(TwoAtomDensity(rho / total))


def fock_two_atom_density(m: int, gt: float) -> TwoAtomDensity:
    return two_atom_density(fock_distribution(m), gt)


def check_density(
    rho: TwoAtomDensity | ComplexMatrix,
    tol: Tolerances = TOLERANCES,
    sparsity: bool = True,
) -> TwoAtomDensity:
    """Raise unless rho is Hermitian, trace 1, PSD and (optionally) in the model sparsity class."""
    matrix = rho.matrix if isinstance(rho, TwoAtomDensity) else np.asarray(rho, dtype=complex)
    if matrix.shape != (4, 4):
        raise InvalidDensityError(f"two-atom density must be 4x4, got {matrix.shape}")

    defect = hermitian_defect(matrix)
    if defect > tol.density:
        raise InvalidDensityError(f"density is not Hermitian (defect {defect:.3e})")
    trace = complex(np.trace(matrix))
    if abs(trace - 1.0) > tol.density:
        raise InvalidDensityError(f"density trace is {trace.real:.15f}, expected 1")
    lowest = min(hermitian_eigenvalues(matrix, tol))
    if lowest < -tol.density:
        raise InvalidDensityError(f"density has negative eigenvalue {lowest:.3e}")

    if sparsity:
        outside = float(np.max(np.abs(np.where(SPARSITY_MASK, 0.0, matrix))))
        if outside > tol.density:
            raise SparsityError(f"entry of magnitude {outside:.3e} outside the model sparsity pattern")
        if abs(matrix[1, 2].imag) > tol.density:
            raise SparsityError(f"e1g2/g1e2 coherence has imaginary part {matrix[1, 2].imag:.3e}")
    return rho if isinstance(rho, TwoAtomDensity) else TwoAtomDensity(matrix)
