"""
Brute-force reference for the two-atom density.

Propagates |e1, e2, n> through the full atom (x) atom (x) field space with
explicit 2x2 Jaynes-Cummings block rotations, then traces the field out.
Nothing here reuses the closed-form amplitudes of the dynamics service.

Single atom (x) field index: atom * field_dim + n, atom 0 = e, 1 = g.
Two atoms (x) field index: (a1 * 2 + a2) * field_dim + n.
"""
from __future__ import annotations

import logging
import math
from typing import Optional, Tuple

import numpy as np

from config import TOLERANCES, Config, Tolerances
from errors import OracleMismatchError, TruncationError
from models import (
    ComplexMatrix,
    ComplexVector,
    FieldKind,
    PhotonDistribution,
    TruncatedSpace,
    TwoAtomDensity,
    rabi_angle,
)
from services.dynamics_service import check_density
from services.linalg_service import partial_trace_last, tensor_product

logger = logging.getLogger(__name__)

IDENTITY_ATOM = np.eye(2, dtype=complex)

# Oracle Service


def jc_propagator(field_dim: int, gt: float) -> ComplexMatrix:
    """
    exp(-i H t) for one atom and the truncated field, H = g (sigma+ a + sigma- a^dagger).

    Each pair {|e,n>, |g,n+1>} rotates by theta = sqrt(n+1) gt:
    |e,n> -> cos(theta)|e,n> - i sin(theta)|g,n+1>. |g,0> and the top level
    |e, field_dim-1>, whose partner lies outside the space, are stationary.
    """
    if field_dim < 2:
        raise TruncationError(f"field_dim must be >= 2, got {field_dim}")
    gt = rabi_angle(gt)
    dim = TruncatedSpace(field_dim).atom_field_dim
    u = np.zeros((dim, dim), dtype=complex)
    u[field_dim, field_dim] = 1.0
    u[field_dim - 1, field_dim - 1] = 1.0
    for n in range(field_dim - 1):
        theta = math.sqrt(n + 1) * gt
        e, g = n, field_dim + n + 1
        u[e, e] = u[g, g] = math.cos(theta)
        u[e, g] = u[g, e] = -1.0j * math.sin(theta)
    return u


def _atom1_permutation(field_dim: int) -> np.ndarray:
    """perm[i] is the (atom1, field, atom2) index of the (atom1, atom2, field) basis state i."""
    a1, a2, n = np.meshgrid(np.arange(2), np.arange(2), np.arange(field_dim), indexing="ij")
    return (a1 * 2 * field_dim + n * 2 + a2).ravel()


def embed_atom1(u_atom_field: ComplexMatrix, field_dim: int) -> ComplexMatrix:
    """Lift an atom (x) field operator onto atom 1, with atom 2 as spectator."""
    w = tensor_product(u_atom_field, IDENTITY_ATOM)
    perm = _atom1_permutation(field_dim)
    return w[np.ix_(perm, perm)]


def embed_atom2(u_atom_field: ComplexMatrix) -> ComplexMatrix:
    """Lift an atom (x) field operator onto atom 2, with atom 1 as spectator."""
    return tensor_product(IDENTITY_ATOM, u_atom_field)


def required_field_dim(n_max: int, margin: int = Config.ORACLE_MARGIN) -> int:
    return n_max + margin


def _resolve_field_dim(n_max: int, field_dim: Optional[int]) -> int:
    needed = required_field_dim(n_max)
    if field_dim is None:
        return needed
    if field_dim < needed:
        raise TruncationError(
            f"field_dim {field_dim} is too small for photon number {n_max} (need >= {needed})"
        )
    return field_dim


def _check_leak(states: ComplexMatrix, field_dim: int, tol: Tolerances) -> None:
    """The stationary top levels |e, field_dim-1> must never be populated."""
    grid = states.reshape(2, 2, field_dim, -1)
    top = grid[:, :, field_dim - 1, :]
    leak = float(np.max(np.abs(top[0, :, :]) ** 2 + np.abs(top[:, 0, :]) ** 2, initial=0.0))
    if leak > tol.truncation_leak:
        raise TruncationError(f"truncated top level populated with probability {leak:.3e}")


def _propagate(
    ns: np.ndarray, gt: float, field_dim: int, reverse_order: bool, tol: Tolerances
) -> ComplexMatrix:
    """Columns are the final states for initial |e1, e2, n>, n in ``ns``."""
    u = jc_propagator(field_dim, gt)
    first, second = embed_atom1(u, field_dim), embed_atom2(u)
    if reverse_order:
        first, second = second, first
    # |e1, e2, n> has index n, so first @ |e1, e2, n> is column n of first
    after_first = first[:, ns]
    _check_leak(after_first, field_dim, tol)
    final = second @ after_first
    _check_leak(final, field_dim, tol)
    return final


def oracle_two_atom_state(
    n: int, gt: float, field_dim: Optional[int] = None, tol: Tolerances = TOLERANCES
) -> ComplexVector:
    """Full atom (x) atom (x) field state after both atoms cross |n>."""
    field_dim = _resolve_field_dim(n, field_dim)
    return _propagate(np.array([n]), gt, field_dim, False, tol)[:, 0]


def extract_amplitudes(
    psi: ComplexVector, n: int, field_dim: int
) -> Tuple[complex, complex, complex, complex]:
    """Components of |e1e2,n>, |e1g2,n+1>, |g1e2,n+1>, |g1g2,n+2> in a full-space state."""
    grid = np.asarray(psi).reshape(2, 2, field_dim)
    return (
        complex(grid[0, 0, n]),
        complex(grid[0, 1, n + 1]),
        complex(grid[1, 0, n + 1]),
        complex(grid[1, 1, n + 2]),
    )


def oracle_two_atom_density(
    d: PhotonDistribution,
    gt: float,
    field_dim: Optional[int] = None,
    reverse_order: bool = False,
    tol: Tolerances = TOLERANCES,
) -> TwoAtomDensity:
    """
    Reduced two-atom density by full-space propagation and an explicit partial trace.

    Accumulates sum_n P_n |psi_n><psi_n| in increasing n, traces the field and
    divides by sum P_n. ``reverse_order`` sends atom 2 through first.
    """
    ns = np.flatnonzero(d.weights > 0)
    if ns.size == 0:
        raise TruncationError(f"distribution {d!r} has no populated photon number")
    field_dim = _resolve_field_dim(int(ns[-1]), field_dim)
    space = TruncatedSpace(field_dim)
    logger.debug(
        "oracle: %d photon numbers, field_dim=%d, total_dim=%d", ns.size, field_dim, space.total_dim
    )

    states = _propagate(ns, gt, field_dim, reverse_order, tol)
    weights = d.weights[ns]
    full = (states * weights) @ states.conj().T
    reduced = partial_trace_last(full, 4, field_dim) / math.fsum(weights)
    return check_density(TwoAtomDensity(reduced), tol)


def oracle_tolerance(d: PhotonDistribution, tol: Tolerances = TOLERANCES) -> float:
    return tol.oracle_fock if d.kind is FieldKind.FOCK else tol.oracle_thermal


def max_deviation(a: TwoAtomDensity, b: TwoAtomDensity) -> float:
    return float(np.max(np.abs(a.matrix - b.matrix)))


def verify_density(
    d: PhotonDistribution, gt: float, analytic: TwoAtomDensity, tol: Tolerances = TOLERANCES
) -> float:
    """Compare an analytic density with the oracle; raise OracleMismatchError beyond tolerance."""
    reference = oracle_two_atom_density(d, gt, tol=tol)
    deviation = max_deviation(analytic, reference)
    limit = oracle_tolerance(d, tol)
    if deviation > limit:
        raise OracleMismatchError(
            f"{d!r} at gt={gt:.12g}: analytic and oracle densities differ by "
            f"{deviation:.3e} (tolerance {limit:g})"
        )
    logger.debug("oracle agrees at gt=%.6g (max deviation %.3e)", gt, deviation)
    return deviation
