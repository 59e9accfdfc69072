"""Dense operator and superoperator primitives.

Operators are ``d x d`` complex arrays whose row index labels the bra
position and whose column index labels the ket position.  Superoperators
are ``d**2 x d**2`` complex arrays acting on column-stacked operators, so
that ``vectorize(O)[i + d*j] == O[i, j]``.

With this convention the sandwich map ``O -> A O B^dagger`` has the matrix
``kron(conj(B), A)`` and the dyad ``|A>><<B|`` has the matrix
``vec(A) vec(B)^dagger``.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "check_dim",
    "dim_of",
    "superop_dim",
    "as_operator",
    "as_superop",
    "hs_inner",
    "vectorize",
    "devectorize",
    "apply",
    "sandwich_superop",
    "dyad_superop",
    "identity_superop",
    "superop_tensor",
    "superop_from_tensor",
]


def check_dim(d) -> int:
    """Validate a Hilbert-space dimension and return it as ``int``.

    Only odd ``d >= 3`` is supported: the symmetrised phases of the
    translation and reflection operators need ``2**-1 mod d``.
    """
    if isinstance(d, bool) or int(d) != d:
        raise TypeError(f"dimension must be an integer, got {d!r}")
    d = int(d)
    if d < 3:
        raise ValueError(f"dimension must be >= 3, got {d}")
    if d % 2 == 0:
        raise ValueError(f"even dimension {d} is not supported (2^-1 mod d does not exist)")
    return d


def as_operator(O) -> np.ndarray:
    O = np.asarray(O, dtype=complex)
    if O.ndim != 2 or O.shape[0] != O.shape[1]:
        raise ValueError(f"operator must be a square matrix, got shape {O.shape}")
    if not np.all(np.isfinite(O)):
        raise ValueError("operator has non-finite entries")
    return O


def as_superop(S) -> np.ndarray:
    S = np.asarray(S, dtype=complex)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError(f"superoperator must be a square matrix, got shape {S.shape}")
    superop_dim(S)
    if not np.all(np.isfinite(S)):
        raise ValueError("superoperator has non-finite entries")
    return S


def dim_of(O) -> int:
    return np.shape(O)[0]


def superop_dim(S) -> int:
    n = np.shape(S)[0]
    d = int(round(np.sqrt(n)))
    if d * d != n:
        raise ValueError(f"superoperator size {n} is not a perfect square")
    return d


def _same_dim(*ops):
    shapes = {np.shape(o) for o in ops}
    if len(shapes) != 1:
        raise ValueError(f"dimension mismatch: {sorted(shapes)}")


def hs_inner(A, B) -> complex:
    """Hilbert-Schmidt product ``tr(A^dagger B)``."""
    A, B = as_operator(A), as_operator(B)
    _same_dim(A, B)
    return complex(np.vdot(A, B))


def vectorize(O) -> np.ndarray:
    """Column-stack an operator into a vector of length ``d**2``."""
    return as_operator(O).reshape(-1, order="F").copy()


def devectorize(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise ValueError("expected a 1-d vector")
    d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise ValueError(f"vector length {v.size} is not a perfect square")
    return v.reshape(d, d, order="F").copy()


def apply(S, O) -> np.ndarray:
    """Act with the superoperator matrix ``S`` on the operator ``O``."""
    S, O = as_superop(S), as_operator(O)
    if S.shape[0] != O.shape[0] ** 2:
        raise ValueError(f"dimension mismatch: superoperator {S.shape} vs operator {O.shape}")
    return devectorize(S @ vectorize(O))


def sandwich_superop(A, B) -> np.ndarray:
    """Matrix of ``O -> A O B^dagger``."""
    A, B = as_operator(A), as_operator(B)
    _same_dim(A, B)
    return np.kron(B.conj(), A)


def dyad_superop(A, B) -> np.ndarray:
    """Matrix of ``O -> A tr(B^dagger O)``."""
    A, B = as_operator(A), as_operator(B)
    _same_dim(A, B)
    return np.outer(vectorize(A), vectorize(B).conj())


def identity_superop(d: int) -> np.ndarray:
    return np.eye(d * d, dtype=complex)


def superop_tensor(S) -> np.ndarray:
    """Return ``S4[i, j, k, l] = <<E_ij|S|E_kl>>`` with ``E_ij = |i><j|``."""
    S = as_superop(S)
    d = superop_dim(S)
    return S.reshape(d, d, d, d, order="F")


def superop_from_tensor(S4) -> np.ndarray:
    d = S4.shape[0]
    return np.asarray(S4, dtype=complex).reshape(d * d, d * d, order="F")
