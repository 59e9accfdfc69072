"""Correlations, the density superoperator and pure-state Fourier identities.

For a pure state the density superoperator ``rho . rho`` coincides with the
dyad ``|rho>><<rho|``.  Reading its matrix elements in the translation and
reflection bases in two ways turns the Choi relations of the superoperator
module into identities obeyed by the Weyl symbol ``W(x) = tr(R_x rho)`` and
the chord symbol ``chi(xi) = tr(T_xi^dagger rho)`` of every pure state.

All identities are written in symbol scale (no ``1/d`` normalisation on
``W`` or ``chi``) and evaluated as direct sums over the grid, so that the
two sides of each identity never share a code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import as_operator, check_dim, dim_of, dyad_superop, sandwich_superop
from .superop import BasisKind, _center_chord_index, _negation_index, superop_matrix_element
from .weyl import (
    chord_symbol,
    grid_points,
    half,
    phase_matrix,
    reflection_op,
    symplectic_ft,
    translation_op,
    weyl_symbol,
    _root,
)

__all__ = [
    "PURITY_THRESHOLD",
    "StateReport",
    "correlation",
    "correlation_superop",
    "correlation_chord_sum",
    "anticorrelation",
    "anticorrelation_superop",
    "anticorrelation_wigner_sum",
    "density_superop",
    "is_self_choi_conjugate",
    "weyl_product",
    "purity_reconstruction",
    "verify_pure_identities",
]

# separates roundoff from genuine violations of the pure-state identities
PURITY_THRESHOLD = 1e-6
NORM_TOL = 1e-8


def _density(rho) -> np.ndarray:
    rho = as_operator(rho)
    check_dim(dim_of(rho))
    return rho


def _flat(x, d):
    return (int(x[0]) % d) * d + int(x[1]) % d


@dataclass(frozen=True)
class StateReport:
    dim: int
    purity: float
    residuals: dict = field(default_factory=dict)

    def max_residual(self) -> float:
        return max(self.residuals.values())

    def is_pure(self, threshold: float = PURITY_THRESHOLD) -> bool:
        return self.max_residual() < threshold

    def to_dict(self) -> dict:
        return {"dim": self.dim, "purity": self.purity, "residuals": dict(self.residuals)}


# -- correlations -----------------------------------------------------------

def correlation(rho, x) -> complex:
    """``C_x = tr(rho T_x rho T_x^dagger)``."""
    rho = _density(rho)
    T = translation_op(x, dim_of(rho))
    return complex(np.trace(rho @ T @ rho @ T.conj().T))


def correlation_superop(rho, x) -> complex:
    """``C_x`` as the diagonal element ``<<T_x|P|T_x>>`` of the density superoperator."""
    P = density_superop(rho)
    return superop_matrix_element(P, BasisKind.TRANSLATION, x, x)


def correlation_chord_sum(rho, x) -> complex:
    """``C_x = (1/d) sum_xi1 |chi(xi1)|**2 omega**(-<xi1, x>)``."""
    rho = _density(rho)
    d = dim_of(rho)
    chi = chord_symbol(rho).reshape(-1)
    phases = phase_matrix(d)[:, _flat(x, d)].conj()
    return complex(np.sum(np.abs(chi) ** 2 * phases) / d)


def anticorrelation(rho, x) -> complex:
    """``C^x = tr(rho R_x rho R_x)``."""
    rho = _density(rho)
    R = reflection_op(x, dim_of(rho))
    return complex(np.trace(rho @ R @ rho @ R))


def anticorrelation_superop(rho, x) -> complex:
    P = density_superop(rho)
    return superop_matrix_element(P, BasisKind.REFLECTION, x, x)


def anticorrelation_wigner_sum(rho, x) -> complex:
    """``C^x = (1/d) sum_x1 W(x + x1/2) W(x - x1/2)``."""
    rho = _density(rho)
    d = dim_of(rho)
    w = weyl_symbol(rho).reshape(-1)
    plus, minus = _center_chord_index(d)
    k = _flat(x, d)
    return complex(np.sum(w[plus[k]] * w[minus[k]]) / d)


# -- density superoperator ---------------------------------------------------

def density_superop(rho) -> np.ndarray:
    """``P = rho . rho``, the map ``O -> rho O rho``."""
    rho = _density(rho)
    return sandwich_superop(rho, rho)


def is_self_choi_conjugate(rho, tol: float = PURITY_THRESHOLD) -> bool:
    """True when ``rho . rho`` equals ``|rho>><<rho|`` entrywise within ``tol``."""
    rho = _density(rho)
    diff = density_superop(rho) - dyad_superop(rho, rho)
    return bool(np.max(np.abs(diff)) <= tol)


# -- product rule --------------------------------------------------------------

def weyl_product(A, B) -> np.ndarray:
    """Weyl symbol of ``A @ B`` from the symbols of the factors.

    ``(AB)(x) = (1/d**2) sum_x1,x2 A(x1) B(x2) omega**(-2<x1 - x, x2 - x>)``,
    accepting ``(d, d)`` symbol tables.
    """
    a = np.asarray(A, dtype=complex)
    b = np.asarray(B, dtype=complex)
    d = check_dim(a.shape[0])
    if a.shape != (d, d) or b.shape != (d, d):
        raise ValueError(f"expected two ({d}, {d}) tables, got {a.shape} and {b.shape}")
    pts = grid_points(d)
    a, b = a.reshape(-1), b.reshape(-1)
    out = np.empty(d * d, dtype=complex)
    for k, x in enumerate(pts):
        y = pts - x
        q, p = y[:, 0], y[:, 1]
        # <y1, y2> = p1 q2 - q1 p2
        sym = np.outer(p, q) - np.outer(q, p)
        out[k] = a @ _root(d, -2 * sym) @ b
    return out.reshape(d, d) / d**2


def purity_reconstruction(rho) -> np.ndarray:
    """Residual field ``rho^2(x) - rho(x)`` with ``rho^2`` from the product rule.

    It vanishes for pure states, where the symmetrised Wigner product is its
    own Fourier transform and the double sum collapses to ``rho(x)``.
    """
    rho = _density(rho)
    w = weyl_symbol(rho)
    return weyl_product(w, w) - w


# -- pure-state identities ---------------------------------------------------

def _check_state(state) -> np.ndarray:
    s = np.asarray(state, dtype=complex)
    if s.ndim == 1:
        check_dim(s.size)
        n = np.linalg.norm(s)
        if abs(n - 1) > NORM_TOL:
            raise ValueError(f"state vector is not normalised (norm {n:.6g})")
        return np.outer(s, s.conj())
    rho = _density(s)
    if np.max(np.abs(rho - rho.conj().T)) > NORM_TOL:
        raise ValueError("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1) > NORM_TOL:
        raise ValueError(f"density matrix is not normalised (trace {tr:.6g})")
    return rho


def _maxabs(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def verify_pure_identities(state) -> StateReport:
    """Evaluate every pure-state identity and report the max residual of each.

    ``state`` is a normalised vector or a unit-trace density matrix.  Mixed
    input is accepted so that the identities can serve as a purity test;
    they fail for mixed states.
    """
    rho = _check_state(state)
    d = dim_of(rho)
    h = half(d)
    Om = phase_matrix(d)
    plus, minus = _center_chord_index(d)
    neg = _negation_index(d)
    pts = grid_points(d)
    hidx = ((h * pts[:, 0]) % d) * d + (h * pts[:, 1]) % d

    w = weyl_symbol(rho).reshape(-1)
    chi = chord_symbol(rho).reshape(-1)

    # A[x, xi] = chi(x + xi/2) chi*(x - xi/2);  B[x, xi] = W(x + xi/2) W(x - xi/2)
    A = chi[plus] * chi[minus].conj()
    B = w[plus] * w[minus]

    res = {}
    # chord family: A(x, xi) = (1/d) sum_xi1 A(xi1, xi) omega**<xi1, x>
    rhs1 = np.einsum("ka,kx->xa", A, Om) / d
    res["prop1"] = _maxabs(A, rhs1)
    # Wigner family: B(x, xi) = (1/d) sum_x1 B(x, x1) omega**<xi, x1>
    rhs2 = np.einsum("xk,ak->xa", B, Om) / d
    res["prop2"] = _maxabs(B, rhs2)
    # mixed family: B(x, xi) = (1/d) sum_xi1 A(xi, xi1) omega**<xi1, x>
    rhs3 = np.einsum("ak,kx->xa", A, Om) / d
    res["prop3"] = _maxabs(B, rhs3)

    # xi = 0 in the chord family: |chi|^2 is its own transform
    abs2 = np.abs(chi) ** 2
    res["chord-modulus-invariance"] = _maxabs(abs2, Om @ abs2 / d)
    # W(x)^2 = (1/d) sum_y W(x + y/2) W(x - y/2)
    res["wigner-square"] = _maxabs(w**2, B.sum(axis=1) / d)

    zero = 0
    # x = 0 in the chord family: chi(xi/2)^2 = (1/d) sum_xi1 A(xi1, xi)
    res["special-chord-origin"] = _maxabs(chi[hidx] ** 2, A.sum(axis=0) / d)
    # x = 0 in the Wigner family
    res["special-wigner-origin"] = _maxabs(B[zero], rhs2[zero])
    # x = 0 in the mixed family: W(xi/2) W(-xi/2) = (1/d) sum_xi1 chi(xi + xi1/2) chi*(xi - xi1/2)
    res["special-mixed-origin"] = _maxabs(B[zero], A.sum(axis=1) / d)
    # xi = 0 in the mixed family: W(x)^2 = (1/d) sum_xi1 chi(xi1/2) chi*(-xi1/2) omega**<xi1, x>
    c0 = chi[hidx] * chi[neg[hidx]].conj()
    res["special-mixed-chord"] = _maxabs(w**2, Om.T @ c0 / d)

    # the symmetrised Wigner product is its own symplectic Fourier transform
    ft = np.stack([symplectic_ft(B[k].reshape(d, d)).reshape(-1) for k in range(d * d)])
    res["fourier-invariance"] = _maxabs(B, ft)

    res["quartic"] = abs(float(np.sum(np.real(w) ** 4)) - float(np.sum(np.abs(chi[hidx]) ** 4))) / d
    res["origin-value"] = max(
        abs(w[zero] ** 2 - B[zero].sum() / d),
        abs(w[zero] ** 2 - c0.sum() / d),
    )
    res["purity-reconstruction"] = float(np.max(np.abs(purity_reconstruction(rho))))

    purity = float(np.real(np.trace(rho @ rho)))
    return StateReport(dim=d, purity=purity, residuals={k: float(v) for k, v in res.items()})
