"""Discrete translation and reflection operators on an odd-dimensional space.

Phase-space points ``x = (q, p)`` live on the ``d x d`` torus ``Z_d x Z_d``.
The continuum dictionary used throughout the package is

    2*pi*hbar  <->  d
    int d^2x / (2*pi*hbar)  <->  (1/d) * sum over the grid
    Dirac delta  <->  d * Kronecker delta

and ``1/2`` is replaced by ``half(d) = (d + 1) // 2``, the inverse of 2 mod d.

Translations are ``T_xi = tau**(xi_q*xi_p) X**xi_q Z**xi_p`` with
``X|q> = |q+1>``, ``Z|q> = omega**q |q>``, ``omega = exp(2*pi*i/d)`` and
``tau = omega**half(d)``.  Reflections are
``R_x = (1/d) sum_xi omega**<x, xi> T_xi``; each one is Hermitian, unitary,
squares to the identity and has unit trace.

Functions taking a whole phase-space table use the flat label
``k = q*d + p``; ``PhaseFunction`` tables are plain ``(d, d)`` arrays
indexed ``[q, p]``.
"""

from __future__ import annotations

import functools

import numpy as np

from .linalg import as_operator, check_dim, dim_of

__all__ = [
    "half",
    "omega",
    "tau",
    "reduce_point",
    "symplectic",
    "grid_points",
    "symplectic_matrix",
    "phase_matrix",
    "translation_op",
    "reflection_op",
    "translations",
    "reflections",
    "weyl_symbol",
    "chord_symbol",
    "symplectic_ft",
    "inverse_symplectic_ft",
    "translation_product_law",
    "reflection_product_law",
    "reflection_translation_law",
    "translation_reflection_law",
    "quadruple_trace_T",
    "quadruple_trace_R",
]


def half(d: int) -> int:
    """Inverse of 2 modulo odd ``d``."""
    return (check_dim(d) + 1) // 2


def omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def tau(d: int) -> complex:
    return np.exp(2j * np.pi * half(d) / d)


def _root(d: int, k) -> np.ndarray | complex:
    # omega**k with the exponent reduced first, so the phase is exact up to one rounding
    return np.exp(2j * np.pi * (np.mod(k, d) / d))


def reduce_point(x, d: int) -> tuple[int, int]:
    q, p = x
    return int(q) % d, int(p) % d


def symplectic(x, y, d: int | None = None):
    """``<x, y> = p*q' - q*p'``, reduced mod ``d`` when ``d`` is given."""
    val = x[1] * y[0] - x[0] * y[1]
    return val % d if d is not None else val


def _add(x, y, d):
    return (x[0] + y[0]) % d, (x[1] + y[1]) % d


def _scale(c, x, d):
    return (c * x[0]) % d, (c * x[1]) % d


@functools.lru_cache(maxsize=None)
def grid_points(d: int) -> np.ndarray:
    """All points as a ``(d**2, 2)`` integer array in flat-label order."""
    d = check_dim(d)
    k = np.arange(d * d)
    pts = np.stack([k // d, k % d], axis=1)
    pts.setflags(write=False)
    return pts


@functools.lru_cache(maxsize=None)
def symplectic_matrix(d: int) -> np.ndarray:
    """``M[k1, k2] = <x_k1, x_k2> mod d`` over flat labels."""
    pts = grid_points(d)
    q, p = pts[:, 0], pts[:, 1]
    M = np.mod(np.outer(p, q) - np.outer(q, p), d)
    M.setflags(write=False)
    return M


@functools.lru_cache(maxsize=None)
def phase_matrix(d: int) -> np.ndarray:
    """``omega ** <x_k1, x_k2>`` over flat labels."""
    P = _root(d, symplectic_matrix(d))
    P.setflags(write=False)
    return P


@functools.lru_cache(maxsize=None)
def translations(d: int) -> np.ndarray:
    """Stack of all translation operators, shape ``(d, d, d, d)`` indexed ``[xi_q, xi_p]``."""
    d = check_dim(d)
    h = half(d)
    out = np.empty((d, d, d, d), dtype=complex)
    rows = np.arange(d)
    for a in range(d):
        for b in range(d):
            # T|q0> = omega**(b*(q0 + h*a)) |q0 + a>
            M = np.zeros((d, d), dtype=complex)
            M[(rows + a) % d, rows] = _root(d, b * (rows + h * a))
            out[a, b] = M
    out.setflags(write=False)
    return out


@functools.lru_cache(maxsize=None)
def reflections(d: int) -> np.ndarray:
    """Stack of all reflection operators, shape ``(d, d, d, d)`` indexed ``[q, p]``."""
    T = translations(d).reshape(d * d, d, d)
    R = np.tensordot(phase_matrix(d), T, axes=(1, 0)) / d
    R = R.reshape(d, d, d, d)
    R.setflags(write=False)
    return R


def translation_op(xi, d: int) -> np.ndarray:
    d = check_dim(d)
    a, b = reduce_point(xi, d)
    return translations(d)[a, b].copy()


def reflection_op(x, d: int) -> np.ndarray:
    d = check_dim(d)
    q, p = reduce_point(x, d)
    return reflections(d)[q, p].copy()


def weyl_symbol(O) -> np.ndarray:
    """Centre symbol ``O(x) = tr(R_x O)`` as a ``(d, d)`` table."""
    O = as_operator(O)
    R = reflections(check_dim(dim_of(O)))
    # tr(R O) = sum_ij R_ij O_ji
    return np.einsum("qpij,ji->qp", R, O)


def chord_symbol(O) -> np.ndarray:
    """Chord symbol ``O~(xi) = tr(T_xi^dagger O)`` as a ``(d, d)`` table."""
    O = as_operator(O)
    T = translations(check_dim(dim_of(O)))
    return np.einsum("qpij,ij->qp", T.conj(), O)


def symplectic_ft(F) -> np.ndarray:
    """``G(x) = (1/d) sum_xi omega**(-<x, xi>) F(xi)``; maps chord to centre symbols.

    The form is antisymmetric, so the transform is its own inverse.
    """
    F = np.asarray(F)
    d = check_dim(F.shape[0])
    G = phase_matrix(d).conj() @ F.reshape(d * d) / d
    return G.reshape(d, d)


def inverse_symplectic_ft(G) -> np.ndarray:
    """Inverse of ``symplectic_ft``, which is the same map."""
    return symplectic_ft(G)


# Closed-form composition laws.  Each returns ``(phase, label)`` such that the
# product equals ``phase * <operator at label>``.

def translation_product_law(xi1, xi2, d: int):
    """``T_xi1 T_xi2 = tau**<xi1, xi2> T_(xi1 + xi2)``."""
    return _root(d, half(d) * symplectic(xi1, xi2)), _add(xi1, xi2, d)


def reflection_product_law(x1, x2, d: int):
    """``R_x1 R_x2 = omega**(-2<x1, x2>) T_(2(x1 - x2))``.

    The product of two reflections is a translation by twice the vector
    joining the centres, ``x1 - x2``.
    """
    diff = (x1[0] - x2[0], x1[1] - x2[1])
    return _root(d, -2 * symplectic(x1, x2)), _scale(2, diff, d)


def reflection_translation_law(x, xi, d: int):
    """``R_x T_xi = omega**(-<x, xi>) R_(x - xi/2)``."""
    h = half(d)
    return _root(d, -symplectic(x, xi)), _add(x, _scale(-h, xi, d), d)


def translation_reflection_law(xi, x, d: int):
    """``T_xi R_x = omega**<xi, x> R_(x + xi/2)``."""
    h = half(d)
    return _root(d, symplectic(xi, x)), _add(x, _scale(h, xi, d), d)


def quadruple_trace_T(xi1, xi2, xi3, xi4, d: int) -> complex:
    """Closed form of ``tr(T1 T2 T3 T4)``."""
    d = check_dim(d)
    s = [sum(c) % d for c in zip(xi1, xi2, xi3, xi4)]
    if any(s):
        return 0j
    e = symplectic(xi1, xi2) + symplectic(xi3, xi4)
    return d * complex(_root(d, half(d) * e))


def quadruple_trace_R(x1, x2, x3, x4, d: int) -> complex:
    """Closed form of ``tr(R1 R2 R3 R4)``; nonzero only on parallelograms ``x1 - x2 + x3 - x4 = 0``."""
    d = check_dim(d)
    s = [(a - b + c - e) % d for a, b, c, e in zip(x1, x2, x3, x4)]
    if any(s):
        return 0j
    e = symplectic(x1, x2) + symplectic(x3, x4)
    return d * complex(_root(d, -2 * e))
