"""Two-qubit entanglement of the atom pair: Wootters concurrence and entanglement of formation."""
from __future__ import annotations

import logging
import math

import numpy as np

from config import TOLERANCES, Tolerances
from errors import DomainError, InvalidDensityError, SparsityError
from models import ComplexMatrix, EntanglementResult, TwoAtomDensity
from services.dynamics_service import SPARSITY_MASK
from services.linalg_service import as_complex_matrix, psd_sqrt, singular_values, tensor_product

logger = logging.getLogger(__name__)

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SIGMA_YY = tensor_product(SIGMA_Y, SIGMA_Y)

# Entanglement Service


def _density_matrix(rho: TwoAtomDensity | ComplexMatrix, tol: Tolerances = TOLERANCES) -> ComplexMatrix:
    matrix = rho.matrix if isinstance(rho, TwoAtomDensity) else as_complex_matrix(rho, "rho")
    if matrix.shape != (4, 4):
        raise InvalidDensityError(f"two-qubit density must be 4x4, got {matrix.shape}")
    trace = complex(np.trace(matrix))
    if abs(trace - 1.0) > tol.density:
        raise InvalidDensityError(f"density trace is {trace.real:.15f}, expected 1")
    return matrix


def spin_flip(rho: TwoAtomDensity | ComplexMatrix) -> ComplexMatrix:
    """rho~ = (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)."""
    matrix = _density_matrix(rho)
    return SIGMA_YY @ matrix.conj() @ SIGMA_YY


def binary_entropy(x: float, tol: Tolerances = TOLERANCES) -> float:
    """Shannon binary entropy in bits, with h(0) = h(1) = 0."""
    if not -tol.entropy_slack <= x <= 1.0 + tol.entropy_slack:
        raise DomainError(f"binary entropy argument must lie in [0, 1], got {x!r}")
    x = min(max(float(x), 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def eof_from_concurrence(concurrence: float) -> float:
    """E_F = h((1 + sqrt(1 - C^2)) / 2), in ebits."""
    if not 0.0 <= concurrence <= 1.0:
        raise DomainError(f"concurrence must lie in [0, 1], got {concurrence!r}")
    return binary_entropy((1.0 + math.sqrt(1.0 - concurrence * concurrence)) / 2.0)


def concurrence_general(
    rho: TwoAtomDensity | ComplexMatrix, tol: Tolerances = TOLERANCES
) -> EntanglementResult:
    """
    Wootters concurrence from the spectrum of sqrt(rho) rho~ sqrt(rho).

    That Hermitian matrix has the same eigenvalues as rho rho~ and equals
    M M^dagger for M = sqrt(rho) sqrt(rho~), so sqrt(l_i) are the singular
    values of M. Taking them directly keeps near-zero l_i accurate.
    C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)).
    """
    matrix = _density_matrix(rho, tol)
    root = psd_sqrt(matrix, tol)
    # sqrt(rho~) is the spin flip of sqrt(rho)
    flipped_root = SIGMA_YY @ root.conj() @ SIGMA_YY
    roots = singular_values(root @ flipped_root, tol)
    lambdas = roots * roots
    concurrence = min(1.0, max(0.0, float(roots[0] - roots[1] - roots[2] - roots[3])))
    return EntanglementResult(
        concurrence=concurrence,
        eof=eof_from_concurrence(concurrence),
        lambdas=tuple(float(x) for x in lambdas),
    )


def concurrence_xstate(
    rho: TwoAtomDensity | ComplexMatrix, tol: Tolerances = TOLERANCES
) -> float:
    """
    Closed form C = 2 max(0, |rho_23| - sqrt(rho_11 rho_44)).

    Only valid for the model's sparsity class: diagonal plus the e1g2/g1e2 coherence.
    """
    matrix = _density_matrix(rho, tol)
    outside = float(np.max(np.abs(np.where(SPARSITY_MASK, 0.0, matrix))))
    if outside > tol.density:
        raise SparsityError(f"entry of magnitude {outside:.3e} outside the X-state sparsity pattern")
    corner = max(0.0, matrix[0, 0].real * matrix[3, 3].real)
    return min(1.0, 2.0 * max(0.0, abs(matrix[1, 2]) - math.sqrt(corner)))


def entanglement_of_formation(
    rho: TwoAtomDensity | ComplexMatrix, tol: Tolerances = TOLERANCES
) -> EntanglementResult:
    """Entanglement of formation of a two-atom density, through the general concurrence route."""
    result = concurrence_general(rho, tol)
    logger.debug("C=%.12g E_F=%.12g lambdas=%s", result.concurrence, result.eof, result.lambdas)
    return result
