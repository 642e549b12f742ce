"""Shared fixtures and reference values."""
import math

import numpy as np
import pytest

from services.dynamics_service import fock_two_atom_density

# Fock n = 0 at gt = 2.0, hand-evaluated from cos/sin of 2 and 2*sqrt(2).
ANCHOR_GT = 2.0
ANCHOR_ALPHAS = (0.17318, -0.37840, -0.86507, 0.28011)
ANCHOR_POPULATIONS = (0.02999, 0.14319, 0.74835, 0.07846)
ANCHOR_COHERENCE = 0.32735
ANCHOR_CONCURRENCE = 0.5577
ANCHOR_EOF = 0.4194


@pytest.fixture
def anchor_density():
    return fock_two_atom_density(0, ANCHOR_GT)


@pytest.fixture
def gt_grid_256():
    return np.linspace(0.0, 2.0 * math.pi, 256)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_hermitian(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2


def random_density(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = g.conj().T @ g
    return rho / np.trace(rho).real
