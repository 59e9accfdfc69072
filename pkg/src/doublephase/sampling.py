"""Seeded random operators for tests and verification suites.

Every sampler takes a ``numpy.random.Generator``; pass
``numpy.random.default_rng(seed)`` for reproducible draws.
"""

from __future__ import annotations

import numpy as np

from .linalg import check_dim

__all__ = [
    "ginibre",
    "random_unitary",
    "random_isometry",
    "random_state_vector",
    "random_density",
    "random_kraus",
    "random_superop",
]


def ginibre(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_isometry(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Orthonormalised complex Gaussian matrix with ``V^dagger V = I``."""
    Q, R = np.linalg.qr(ginibre(rng, (rows, cols)))
    # fix the column phases so the distribution is Haar
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    return random_isometry(rng, check_dim(d), d)


def random_state_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    v = ginibre(rng, check_dim(d))
    return v / np.linalg.norm(v)


def random_density(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Mixed state ``G G^dagger / tr`` with ``G`` of shape ``(d, rank)``."""
    d = check_dim(d)
    G = ginibre(rng, (d, rank or d))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def random_kraus(d: int, n: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Trace-preserving Kraus set of ``n`` operators cut from a random isometry."""
    d = check_dim(d)
    V = random_isometry(rng, n * d, d)
    return [V[j * d:(j + 1) * d] for j in range(n)]


def random_superop(d: int, rng: np.random.Generator) -> np.ndarray:
    """Unstructured complex ``d**2 x d**2`` matrix."""
    d = check_dim(d)
    return ginibre(rng, (d * d, d * d))
