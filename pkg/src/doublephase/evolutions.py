"""Unitary, Kraus and echo superoperators and their phase-space kernels.

A superoperator ``S`` moves centre symbols ``W(x) = tr(R_x rho)`` through the
centre-centre kernel

    W'(x+) = (1/d) sum_x- K(x+, x-) W(x-),    K(x+, x-) = <<R_x+|S|R_x-|>>,

and chord symbols ``chi(xi) = tr(T_xi^dagger rho)`` through the analogous
chord-chord kernel built on translations.  The same kernels follow from the
Choi coefficients by a symplectic Fourier transform; for a channel with
Kraus operators ``K_j`` those coefficients factor as
``sum_j K_j(x+) conj(K_j(x-))``.  Both routes are provided so they can be
checked against each other.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import (
    as_operator,
    as_superop,
    check_dim,
    dim_of,
    sandwich_superop,
    superop_dim,
)
from .superop import BasisKind, DoublePhaseFunction, invert_double_weyl, matrix_elements
from .weyl import chord_symbol, weyl_symbol

__all__ = [
    "NonPhysicalWarning",
    "KrausSet",
    "PropagationKernel",
    "unitary_superop",
    "kraus_superop",
    "echo_superop",
    "center_center_kernel",
    "chord_chord_kernel",
    "center_center_kernel_fourier",
    "chord_chord_kernel_fourier",
    "propagate",
    "propagate_wigner",
]

UNITARY_TOL = 1e-10


class NonPhysicalWarning(UserWarning):
    """Input is allowed but is not unitary or not trace preserving."""


def _is_unitary(U, tol=UNITARY_TOL) -> bool:
    return np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))) <= tol


@dataclass(frozen=True)
class KrausSet:
    """Ordered list of Kraus operators of a common dimension."""

    operators: tuple

    def __post_init__(self):
        ops = tuple(as_operator(K) for K in self.operators)
        if not ops:
            raise ValueError("Kraus set must not be empty")
        if len({K.shape for K in ops}) != 1:
            raise ValueError("Kraus operators have mismatched dimensions")
        check_dim(dim_of(ops[0]))
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return dim_of(self.operators[0])

    def completeness_residual(self) -> float:
        total = sum(K.conj().T @ K for K in self.operators)
        return float(np.max(np.abs(total - np.eye(self.dim))))

    def is_trace_preserving(self, tol: float = 1e-10) -> bool:
        return self.completeness_residual() <= tol

    def __len__(self):
        return len(self.operators)


def _as_kraus(K) -> KrausSet:
    if isinstance(K, KrausSet):
        return K
    if isinstance(K, np.ndarray) and K.ndim == 2:
        return KrausSet((K,))
    return KrausSet(tuple(K))


def unitary_superop(U) -> np.ndarray:
    """``O -> U O U^dagger``; warns when ``U`` is not unitary."""
    U = as_operator(U)
    check_dim(dim_of(U))
    if not _is_unitary(U):
        warnings.warn("operator is not unitary", NonPhysicalWarning, stacklevel=2)
    return sandwich_superop(U, U)


def kraus_superop(K) -> np.ndarray:
    """``O -> sum_j K_j O K_j^dagger``; warns when the set is not trace preserving."""
    K = _as_kraus(K)
    if not K.is_trace_preserving():
        warnings.warn("Kraus set is not trace preserving", NonPhysicalWarning, stacklevel=2)
    return sum(sandwich_superop(A, A) for A in K.operators)


def echo_superop(U1, U2) -> np.ndarray:
    """``O -> U1 O U2^dagger``, the evolution behind the fidelity amplitude.

    For ``U1 != U2`` neither trace nor hermiticity is preserved; this is not
    an error.
    """
    U1, U2 = as_operator(U1), as_operator(U2)
    if U1.shape != U2.shape:
        raise ValueError(f"dimension mismatch: {U1.shape} vs {U2.shape}")
    check_dim(dim_of(U1))
    return sandwich_superop(U1, U2)


@dataclass(frozen=True)
class PropagationKernel:
    """Dense kernel over ``(out, in)`` flat labels.

    ``kind`` is ``"center"`` for centre-centre kernels acting on Weyl
    symbols and ``"chord"`` for chord-chord kernels acting on chord symbols.
    """

    table: np.ndarray
    kind: str = "center"

    def __post_init__(self):
        t = np.array(self.table, dtype=complex)
        if self.kind not in ("center", "chord"):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        d = superop_dim(t)
        check_dim(d)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def dim(self) -> int:
        return superop_dim(self.table)


def center_center_kernel(S) -> PropagationKernel:
    return PropagationKernel(matrix_elements(as_superop(S), BasisKind.REFLECTION), "center")


def chord_chord_kernel(S) -> PropagationKernel:
    return PropagationKernel(matrix_elements(as_superop(S), BasisKind.TRANSLATION), "chord")


def _choi_from_kraus(K: KrausSet, symbol) -> DoublePhaseFunction:
    d = K.dim
    C = np.zeros((d * d, d * d), dtype=complex)
    for A in K.operators:
        a = symbol(A).reshape(-1)
        C += np.outer(a, a.conj())
    return DoublePhaseFunction(C)


def center_center_kernel_fourier(K) -> PropagationKernel:
    """Centre-centre kernel from Weyl symbols of the Kraus operators.

    Builds ``C(x+, x-) = sum_j K_j(x+) conj(K_j(x-))`` and inverts its double
    Weyl transform.  A single unitary is accepted in place of a set.
    """
    C = _choi_from_kraus(_as_kraus(K), weyl_symbol)
    return PropagationKernel(invert_double_weyl(C, BasisKind.REFLECTION), "center")


def chord_chord_kernel_fourier(K) -> PropagationKernel:
    """Chord-chord kernel from chord symbols of the Kraus operators."""
    C = _choi_from_kraus(_as_kraus(K), chord_symbol)
    return PropagationKernel(invert_double_weyl(C, BasisKind.TRANSLATION), "chord")


def propagate(K: PropagationKernel, F) -> np.ndarray:
    """Apply a kernel to a ``(d, d)`` symbol table: ``F'(a) = (1/d) sum_b K(a, b) F(b)``."""
    F = np.asarray(F, dtype=complex)
    d = K.dim
    if F.shape != (d, d):
        raise ValueError(f"dimension mismatch: kernel for d={d}, table of shape {F.shape}")
    return (K.table @ F.reshape(d * d) / d).reshape(d, d)


def propagate_wigner(K: PropagationKernel, W) -> np.ndarray:
    """Propagate a Weyl symbol (or Wigner function) with a centre-centre kernel."""
    if K.kind != "center":
        raise ValueError("propagate_wigner needs a centre-centre kernel")
    return propagate(K, W)
