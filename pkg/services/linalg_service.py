"""Dense complex linear algebra: Kronecker products, partial traces and a Jacobi eigensolver."""
from __future__ import annotations

import logging
import math
from typing import List, Tuple

import numpy as np

from config import TOLERANCES, Config, Tolerances
from errors import (
    ConvergenceError,
    DimensionError,
    NegativeEigenvalueError,
    NonHermitianError,
)
from models import ComplexMatrix

logger = logging.getLogger(__name__)

# Linalg Service


def as_complex_matrix(values, name: str = "matrix") -> ComplexMatrix:
    """Return ``values`` as a finite complex128 2-D array."""
    arr = np.asarray(values, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError(f"{name} has non-finite entries")
    return arr


def hermitian_defect(h: ComplexMatrix) -> float:
    """Largest entry of |h - h^dagger|."""
    return float(np.max(np.abs(h - h.conj().T)))


def hermitianize(h: ComplexMatrix) -> ComplexMatrix:
    return (h + h.conj().T) / 2


def tensor_product(
    a: ComplexMatrix, b: ComplexMatrix, max_dim: int = Config.MAX_DIMENSION
) -> ComplexMatrix:
    """Kronecker product a (x) b; block (i, j) of the result is a[i, j] * b."""
    a = as_complex_matrix(a, "a")
    b = as_complex_matrix(b, "b")
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > max_dim:
        raise DimensionError(
            f"tensor product of {a.shape} and {b.shape} exceeds the maximum dimension {max_dim}"
        )
    return np.kron(a, b)


def partial_trace_last(rho: ComplexMatrix, dim_keep: int, dim_trace: int) -> ComplexMatrix:
    """
    Trace out the rightmost tensor factor.

    Entry (i, j) of the result is sum_k rho[i*dim_trace + k, j*dim_trace + k].
    """
    rho = as_complex_matrix(rho, "rho")
    expected = dim_keep * dim_trace
    if dim_keep < 1 or dim_trace < 1 or rho.shape != (expected, expected):
        raise DimensionError(
            f"rho of shape {rho.shape} does not split as {dim_keep} x {dim_trace}"
        )
    blocks = rho.reshape(dim_keep, dim_trace, dim_keep, dim_trace)
    return np.trace(blocks, axis1=1, axis2=3)


def _offdiag_norm(a: ComplexMatrix) -> float:
    return float(np.linalg.norm(a - np.diag(a.diagonal())))


def _jacobi_rotate(a: ComplexMatrix, v: ComplexMatrix, p: int, q: int) -> None:
    """Zero a[p, q] in place with a unitary rotation, accumulating it into v."""
    apq = a[p, q]
    mag = abs(apq)
    if mag == 0.0:
        return
    phase = np.conj(apq / mag)
    theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
        if theta < 0:
            t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    # phase turns the (p, q) pair real, then a real Givens rotation diagonalizes it
    block = np.array([[c, s], [-s * phase, c * phase]], dtype=complex)
    idx = [p, q]
    a[:, idx] = a[:, idx] @ block
    a[idx, :] = block.conj().T @ a[idx, :]
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, idx] = v[:, idx] @ block


def hermitian_eigh(
    h: ComplexMatrix, tol: Tolerances = TOLERANCES
) -> Tuple[np.ndarray, ComplexMatrix]:
    """
    Cyclic Jacobi eigendecomposition of a Hermitian matrix.

    Returns eigenvalues in descending order and the matching orthonormal
    eigenvectors as columns, so that h = V diag(w) V^dagger.
    """
    h = as_complex_matrix(h, "h")
    if h.shape[0] != h.shape[1]:
        raise DimensionError(f"eigenproblem needs a square matrix, got {h.shape}")
    defect = hermitian_defect(h)
    if defect > tol.hermitian:
        raise NonHermitianError(f"matrix is not Hermitian (max |h - h^dagger| = {defect:.3e})")

    a = hermitianize(h).astype(complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = tol.jacobi_offdiag * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    while _offdiag_norm(a) >= threshold:
        if sweeps >= tol.jacobi_max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {sweeps} sweeps "
                f"(off-diagonal norm {_offdiag_norm(a):.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(a, v, p, q)
        sweeps += 1
    logger.debug("Jacobi converged on %dx%d matrix after %d sweeps", n, n, sweeps)

    values = a.diagonal().real.copy()
    order = np.argsort(-values, kind="stable")
    return values[order], v[:, order]


def hermitian_eigenvalues(h: ComplexMatrix, tol: Tolerances = TOLERANCES) -> List[float]:
    """Real eigenvalues of a Hermitian matrix, descending."""
    values, _ = hermitian_eigh(h, tol)
    return [float(x) for x in values]


def clamp_spectrum(values: np.ndarray, tol: Tolerances = TOLERANCES) -> np.ndarray:
    """
    Set negative rounding dust in a PSD spectrum to exactly zero.

    Values in [-eigen_clamp, 0) become 0; anything more negative means the
    matrix was not PSD. Positive values are left alone.
    """
    values = np.asarray(values, dtype=float)
    lowest = float(values.min())
    if lowest < -tol.eigen_clamp:
        raise NegativeEigenvalueError(
            f"eigenvalue {lowest:.3e} is below -{tol.eigen_clamp:g}; matrix is not PSD"
        )
    clamped = np.where(values < 0, 0.0, values)
    if lowest < 0:
        logger.debug("clamped negative eigenvalue dust %.3e to zero", lowest)
    return clamped


def psd_sqrt(rho: ComplexMatrix, tol: Tolerances = TOLERANCES) -> ComplexMatrix:
    """Hermitian PSD square root S of rho (S @ S == rho) via eigendecomposition."""
    values, vectors = hermitian_eigh(rho, tol)
    roots = np.sqrt(clamp_spectrum(values, tol))
    return hermitianize((vectors * roots) @ vectors.conj().T)


def singular_values(m: ComplexMatrix, tol: Tolerances = TOLERANCES) -> np.ndarray:
    """
    Singular values of a square matrix, descending, from the Jacobi solver.

    The Hermitian dilation [[0, m], [m^dagger, 0]] has eigenvalues +-s_i, so
    the s_i come out with absolute rather than square-root accuracy.
    """
    m = as_complex_matrix(m, "m")
    n = m.shape[0]
    if m.shape != (n, n):
        raise DimensionError(f"singular values need a square matrix, got {m.shape}")
    dilation = np.zeros((2 * n, 2 * n), dtype=complex)
    dilation[:n, n:] = m
    dilation[n:, :n] = m.conj().T
    values, _ = hermitian_eigh(dilation, tol)
    return np.sort(np.abs(values[:n]))[::-1]
