"""Superoperators in double phase space.

A superoperator is expanded either in dyads ``|A>><<B|`` (its matrix
elements) or in sandwiches ``A . B^dagger`` (its Choi coefficients).  For
the reflection and translation bases the two descriptions are related by a
symplectic Fourier transform over pairs of phase-space points: the Choi
matrix ``C(x+, x-)`` read in centre/chord coordinates

    x = (x+ + x-)/2,   xi = x+ - x-

is the double Weyl transform of the matrix elements.  The same statement
holds for translation sandwiches and the double chord transform.

Double tables are ``DoublePhaseFunction`` values stored over flat labels
``(x+, x-)``; ``center_chord()`` gives the ``(x, xi)`` view.  All transforms
are evaluated by direct sums, never by FFT.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from .linalg import (
    as_superop,
    check_dim,
    dyad_superop,
    sandwich_superop,
    superop_dim,
    superop_from_tensor,
    superop_tensor,
)
from .weyl import (
    _add,
    _root,
    _scale,
    grid_points,
    half,
    phase_matrix,
    reduce_point,
    reflections,
    symplectic,
    translations,
)

__all__ = [
    "BasisKind",
    "DoublePhaseFunction",
    "InconsistentForms",
    "SupertraceResult",
    "basis_operator",
    "basis_stack",
    "superop_matrix_element",
    "matrix_elements",
    "choi_reshuffle",
    "choi_matrix",
    "choi_reconstruct",
    "double_weyl",
    "double_chord",
    "super_reflection",
    "super_translation",
    "super_reflection_on_reflection",
    "super_reflection_on_translation",
    "super_translation_on_translation",
    "super_translation_on_reflection",
    "translation_parallelogram",
    "reflection_parallelogram",
    "delta4",
    "supertrace",
    "supertrace_product",
    "invert_double_weyl",
    "alt_double_weyl_positions",
    "positions_as_choi",
]


class BasisKind(enum.Enum):
    REFLECTION = "reflection"
    TRANSLATION = "translation"
    TRANSITION = "transition"
    DOUBLE_POSITION = "double_position"

    @classmethod
    def parse(cls, kind) -> "BasisKind":
        if isinstance(kind, cls):
            return kind
        try:
            return cls(str(kind).lower())
        except ValueError:
            raise ValueError(f"unknown basis kind {kind!r}") from None


class InconsistentForms(ArithmeticError):
    """Raised when equivalent trace expressions disagree beyond tolerance."""


def _flat(x, d):
    q, p = reduce_point(x, d)
    return q * d + p


@functools.lru_cache(maxsize=None)
def _center_chord_index(d: int):
    """Flat labels of ``x + xi/2`` and ``x - xi/2`` for all ``(x, xi)``."""
    h = half(d)
    pts = grid_points(d)
    q, p = pts[:, 0][:, None], pts[:, 1][:, None]
    hq, hp = (h * pts[:, 0])[None, :], (h * pts[:, 1])[None, :]
    plus = ((q + hq) % d) * d + (p + hp) % d
    minus = ((q - hq) % d) * d + (p - hp) % d
    plus.setflags(write=False)
    minus.setflags(write=False)
    return plus, minus


@functools.lru_cache(maxsize=None)
def _negation_index(d: int):
    pts = grid_points(d)
    neg = ((-pts[:, 0]) % d) * d + (-pts[:, 1]) % d
    neg.setflags(write=False)
    return neg


@dataclass(frozen=True)
class DoublePhaseFunction:
    """Complex table over pairs of phase-space points.

    ``values[k+, k-]`` holds the entry at ``(x+, x-)`` with flat labels
    ``k = q*d + p``.  The centre/chord view addresses the same data through
    ``x+ = x + xi/2`` and ``x- = x - xi/2``.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        n = v.shape[0]
        d = int(round(np.sqrt(n)))
        if v.shape != (n, n) or d * d != n:
            raise ValueError(f"double table must be (d^2, d^2), got {v.shape}")
        check_dim(d)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def d(self) -> int:
        return int(round(np.sqrt(self.values.shape[0])))

    def at(self, xp, xm) -> complex:
        d = self.d
        return complex(self.values[_flat(xp, d), _flat(xm, d)])

    def at_center_chord(self, x, xi) -> complex:
        d = self.d
        h = half(d)
        return self.at(_add(x, _scale(h, xi, d), d), _add(x, _scale(-h, xi, d), d))

    def center_chord(self) -> np.ndarray:
        """Table indexed ``[x, xi]`` over flat labels."""
        plus, minus = _center_chord_index(self.d)
        return self.values[plus, minus]

    @classmethod
    def from_center_chord(cls, table) -> "DoublePhaseFunction":
        table = np.asarray(table, dtype=complex)
        d = int(round(np.sqrt(table.shape[0])))
        plus, minus = _center_chord_index(check_dim(d))
        out = np.empty_like(table)
        out[plus, minus] = table
        return cls(out)

    def max_abs_diff(self, other) -> float:
        other = other.values if isinstance(other, DoublePhaseFunction) else np.asarray(other)
        return float(np.max(np.abs(self.values - other)))


# -- bases -------------------------------------------------------------------

def basis_stack(kind, d: int) -> np.ndarray:
    """All basis operators of ``kind`` as a ``(d**2, d, d)`` array in label order.

    Reflection and translation labels are flat phase-space labels
    ``q*d + p``; transition and double-position labels ``(i, j)`` map to
    ``i*d + j`` and denote ``|i><j|``.
    """
    kind = BasisKind.parse(kind)
    d = check_dim(d)
    if kind is BasisKind.REFLECTION:
        return reflections(d).reshape(d * d, d, d)
    if kind is BasisKind.TRANSLATION:
        return translations(d).reshape(d * d, d, d)
    return np.eye(d * d, dtype=complex).reshape(d * d, d, d)


def basis_operator(kind, label, d: int) -> np.ndarray:
    d = check_dim(d)
    i, j = label
    if not (0 <= i < d and 0 <= j < d) and BasisKind.parse(kind) in (
        BasisKind.TRANSITION,
        BasisKind.DOUBLE_POSITION,
    ):
        raise ValueError(f"invalid label {label!r} for dimension {d}")
    return basis_stack(kind, d)[_flat(label, d)].copy()


def _lambda(kind: BasisKind, d: int) -> int:
    return d if kind in (BasisKind.REFLECTION, BasisKind.TRANSLATION) else 1


def superop_matrix_element(S, kind, alpha, beta) -> complex:
    """``<<S_alpha| S |S_beta>> = tr(S_alpha^dagger S(S_beta))``."""
    S = as_superop(S)
    d = superop_dim(S)
    A = basis_operator(kind, alpha, d)
    B = basis_operator(kind, beta, d)
    va, vb = A.reshape(-1, order="F"), B.reshape(-1, order="F")
    return complex(np.vdot(va, S @ vb))


def matrix_elements(S, kind) -> np.ndarray:
    """Full table ``M[a, b] = <<S_a|S|S_b>>`` over flat labels."""
    S = as_superop(S)
    d = superop_dim(S)
    V = basis_stack(kind, d).transpose(0, 2, 1).reshape(d * d, d * d).T
    return V.conj().T @ S @ V


# -- Choi representations ----------------------------------------------------

def choi_reshuffle(S) -> np.ndarray:
    """Dynamical matrix ``C[i + d*k, j + d*l] = <<E_ij|S|E_kl>>``.

    The reshuffle is an index permutation and therefore an involution.
    """
    S4 = superop_tensor(S)
    return superop_from_tensor(S4.transpose(0, 2, 1, 3))


def choi_matrix(S, kind="reflection") -> DoublePhaseFunction:
    """Coefficients of ``S = (1/d**2) sum C(x+, x-) B_x+ . B_x-^dagger``.

    ``kind`` selects reflections or translations for ``B``.  The sandwich
    basis is orthogonal with norm ``d**2``, so each coefficient is a
    Frobenius overlap with ``S``.
    """
    kind = BasisKind.parse(kind)
    if kind not in (BasisKind.REFLECTION, BasisKind.TRANSLATION):
        raise ValueError("choi_matrix supports reflection and translation kinds")
    S4 = superop_tensor(S)
    B = basis_stack(kind, S4.shape[0])
    # sandwich(A, B)[i,j,k,l] = A_ik conj(B_jl)
    C = np.einsum("xik,yjl,ijkl->xy", B.conj(), B, S4, optimize=True)
    return DoublePhaseFunction(C)


def choi_reconstruct(C: DoublePhaseFunction, kind="reflection") -> np.ndarray:
    kind = BasisKind.parse(kind)
    d = C.d
    B = basis_stack(kind, d)
    S4 = np.einsum("xy,xik,yjl->ijkl", C.values, B, B.conj(), optimize=True) / d**2
    return superop_from_tensor(S4)


def double_weyl(S) -> DoublePhaseFunction:
    """``S(x, xi) = (1/d) sum_x1 <<R_(x+x1/2)|S|R_(x-x1/2)>> omega**<x1, xi>``."""
    d = superop_dim(S)
    M = matrix_elements(S, BasisKind.REFLECTION)
    plus, minus = _center_chord_index(d)
    G = M[plus, minus]  # [x, x1]
    table = G @ phase_matrix(d) / d
    return DoublePhaseFunction.from_center_chord(table)


def double_chord(S) -> DoublePhaseFunction:
    """``S~(x, xi) = (1/d) sum_xi1 <<T_(xi1+xi/2)|S|T_(xi1-xi/2)>> omega**<xi1, x>``."""
    d = superop_dim(S)
    N = matrix_elements(S, BasisKind.TRANSLATION)
    plus, minus = _center_chord_index(d)
    H = N[plus, minus]  # [xi1, xi]
    table = phase_matrix(d).T @ H / d
    return DoublePhaseFunction.from_center_chord(table)


def invert_double_weyl(C: DoublePhaseFunction, kind="reflection") -> np.ndarray:
    """Recover the matrix elements ``M[a, b]`` from a double Weyl (or chord) table.

    Reflection kind inverts ``double_weyl``; translation kind inverts
    ``double_chord``.
    """
    kind = BasisKind.parse(kind)
    d = C.d
    plus, minus = _center_chord_index(d)
    table = C.center_chord()
    Om = phase_matrix(d)
    if kind is BasisKind.REFLECTION:
        G = table @ Om.conj().T / d  # [x, x1]
    elif kind is BasisKind.TRANSLATION:
        G = Om.conj() @ table / d  # [xi1, xi]
    else:
        raise ValueError("inversion supports reflection and translation kinds")
    M = np.empty_like(G)
    M[plus, minus] = G
    return M


# -- super-reflections and super-translations -------------------------------

def super_reflection(x, xi, d: int, form: str = "monomial") -> np.ndarray:
    """Reflection superoperator at double phase-space point ``(x, xi)``.

    ``form="monomial"`` builds ``R_(x+xi/2) . R_(x-xi/2)``; ``form="fourier"``
    builds ``(1/d) sum_x1 |R_(x+x1/2)>><<R_(x-x1/2)| omega**(-<x1, xi>)``.
    The two agree exactly.
    """
    d = check_dim(d)
    h = half(d)
    R = reflections(d)
    if form == "monomial":
        xp, xm = _add(x, _scale(h, xi, d), d), _add(x, _scale(-h, xi, d), d)
        return sandwich_superop(R[xp], R[xm])
    if form != "fourier":
        raise ValueError(f"unknown form {form!r}")
    out = np.zeros((d * d, d * d), dtype=complex)
    for x1 in map(tuple, grid_points(d)):
        a = _add(x, _scale(h, x1, d), d)
        b = _add(x, _scale(-h, x1, d), d)
        out += _root(d, -symplectic(x1, xi)) * dyad_superop(R[a], R[b])
    return out / d


def super_translation(x, xi, d: int, form: str = "monomial") -> np.ndarray:
    """Translation superoperator ``T_(x+xi/2) . T_(x-xi/2)^dagger``.

    ``form="fourier"`` builds it as
    ``(1/d) sum_xi1 |T_(xi1+xi/2)>><<T_(xi1-xi/2)| omega**(-<xi1, x>)``.
    """
    d = check_dim(d)
    h = half(d)
    T = translations(d)
    if form == "monomial":
        xp, xm = _add(x, _scale(h, xi, d), d), _add(x, _scale(-h, xi, d), d)
        return sandwich_superop(T[xp], T[xm])
    if form != "fourier":
        raise ValueError(f"unknown form {form!r}")
    out = np.zeros((d * d, d * d), dtype=complex)
    for xi1 in map(tuple, grid_points(d)):
        a = _add(xi1, _scale(h, xi, d), d)
        b = _add(xi1, _scale(-h, xi, d), d)
        out += _root(d, -symplectic(xi1, x)) * dyad_superop(T[a], T[b])
    return out / d


# Action laws, each returning ``(phase, label)`` of the image operator.

def super_reflection_on_reflection(x, xi, x0, d: int):
    """``R(x, xi)`` maps ``R_x0`` to ``omega**(-2<x - x0, xi>) R_(2x - x0)``."""
    diff = (x[0] - x0[0], x[1] - x0[1])
    return _root(d, -2 * symplectic(diff, xi)), _add(_scale(2, x, d), _scale(-1, x0, d), d)


def super_reflection_on_translation(x, xi, xi0, d: int):
    """``R(x, xi)`` maps ``T_xi0`` to ``omega**(-2<xi - xi0, x>) T_(2xi - xi0)``."""
    diff = (xi[0] - xi0[0], xi[1] - xi0[1])
    return _root(d, -2 * symplectic(diff, x)), _add(_scale(2, xi, d), _scale(-1, xi0, d), d)


def super_translation_on_translation(x, xi, xi0, d: int):
    """``T(x, xi)`` maps ``T_xi0`` to ``omega**<x, xi0 + xi/2> T_(xi + xi0)``."""
    h = half(d)
    return _root(d, symplectic(x, _add(xi0, _scale(h, xi, d), d))), _add(xi, xi0, d)


def super_translation_on_reflection(x, xi, x0, d: int):
    """``T(x, xi)`` maps ``R_x0`` to ``omega**<xi, x0 + x/2> R_(x0 + x)``."""
    h = half(d)
    return _root(d, symplectic(xi, _add(x0, _scale(h, x, d), d))), _add(x0, x, d)


def delta4(xi1, xi2, xi3, xi4, d: int) -> int:
    """Symplectic area ``(<xi1, xi2> + <xi3, xi4>)/2`` as an exponent of omega mod ``d``."""
    return (half(d) * (symplectic(xi1, xi2) + symplectic(xi3, xi4))) % d


def translation_parallelogram(xi2, xi3, xi4, d: int):
    """Image of ``T_xi3`` under ``O -> T_xi4 O T_xi2``.

    With the closing chord ``xi1 = -(xi2 + xi3 + xi4)`` the image is
    ``omega**(-Delta4(xi1, xi2, xi3, xi4)) T_(-xi1)``.  Returns
    ``(phase, label, xi1)``.
    """
    xi1 = _scale(-1, _add(_add(xi2, xi3, d), xi4, d), d)
    phase = _root(d, -delta4(xi1, xi2, xi3, xi4, d))
    return phase, _scale(-1, xi1, d), xi1


def reflection_parallelogram(x2, x3, x4, d: int):
    """Image of ``R_x3`` under ``O -> R_x4 O R_x2``.

    The image is a reflection through ``x1 = x2 + x4 - x3``, the fourth
    vertex of the parallelogram ``x1 - x2 + x3 - x4 = 0``, with phase
    ``omega**(-2(<x4, x3> + <x3, x2> + <x2, x4>))``.
    """
    x1 = _add(_add(x2, x4, d), _scale(-1, x3, d), d)
    e = symplectic(x4, x3) + symplectic(x3, x2) + symplectic(x2, x4)
    return _root(d, -2 * e), x1


# -- traces --------------------------------------------------------------------

@dataclass(frozen=True)
class SupertraceResult:
    value: complex
    forms: dict
    discrepancy: float


def _collect(forms: dict, tol: float) -> SupertraceResult:
    vals = list(forms.values())
    disc = max(abs(a - b) for a in vals for b in vals)
    value = complex(np.mean(vals))
    if disc > tol * max(1.0, abs(value)):
        raise InconsistentForms(f"trace forms disagree by {disc:.3e}: {forms}")
    return SupertraceResult(value, forms, float(disc))


def supertrace(S, tol: float = 1e-10) -> SupertraceResult:
    """Trace of a superoperator through four equivalent phase-space expressions."""
    S = as_superop(S)
    d = superop_dim(S)
    MR = matrix_elements(S, BasisKind.REFLECTION)
    MT = matrix_elements(S, BasisKind.TRANSLATION)
    forms = {
        "reflection": complex(np.trace(MR) / d),
        "center": complex(double_weyl(S).values.sum() / d**2),
        "translation": complex(np.trace(MT) / d),
        "chord": double_chord(S).at_center_chord((0, 0), (0, 0)),
    }
    return _collect(forms, tol)


def supertrace_product(S1, S2, tol: float = 1e-10) -> SupertraceResult:
    """``Tr(S2 S1)`` through reflection, centre, translation and chord forms.

    The chord form pairs ``S1~(x, xi)`` with ``S2~(-x, -xi)``, because the
    adjoint of a super-translation is the super-translation at the negated
    point.
    """
    S1, S2 = as_superop(S1), as_superop(S2)
    if S1.shape != S2.shape:
        raise ValueError(f"dimension mismatch: {S1.shape} vs {S2.shape}")
    d = superop_dim(S1)
    R1, R2 = matrix_elements(S1, "reflection"), matrix_elements(S2, "reflection")
    T1, T2 = matrix_elements(S1, "translation"), matrix_elements(S2, "translation")
    W1, W2 = double_weyl(S1).center_chord(), double_weyl(S2).center_chord()
    C1, C2 = double_chord(S1).center_chord(), double_chord(S2).center_chord()
    neg = _negation_index(d)
    forms = {
        "reflection": complex(np.sum(R2.T * R1) / d**2),
        "center": complex(np.sum(W2 * W1) / d**2),
        "translation": complex(np.sum(T2.T * T1) / d**2),
        "chord": complex(np.sum(C1 * C2[np.ix_(neg, neg)]) / d**2),
    }
    return _collect(forms, tol)


# -- double position basis -----------------------------------------------------

def alt_double_weyl_positions(S) -> np.ndarray:
    """Double Weyl transform built on the double position basis ``|q+><q-|``.

    Returns ``S'[a1, a2, al1, al2]`` with ``a = (q+, q-)`` and conjugate
    momenta ``al``::

        S'(a, al) = sum_a' <<Q_(a+a'/2)|S|Q_(a-a'/2)>> omega**(-al . a')
    """
    S4 = superop_tensor(S)
    d = S4.shape[0]
    h = half(d)
    r = np.arange(d)
    a1 = r[:, None, None, None]
    a2 = r[None, :, None, None]
    s1 = (h * r)[None, None, :, None]
    s2 = (h * r)[None, None, None, :]
    E = S4[(a1 + s1) % d, (a2 + s2) % d, (a1 - s1) % d, (a2 - s2) % d]  # [a1, a2, a'1, a'2]
    F = _root(d, -np.outer(r, r))
    return np.einsum("abmn,im,jn->abij", E, F, F)


def positions_as_choi(table) -> DoublePhaseFunction:
    """Relabel ``S'(a, al)`` to ``(x+, x-)`` via ``(a, al) = (q+, q-, p+, -p-)``."""
    table = np.asarray(table)
    d = table.shape[0]
    r = np.arange(d)
    qp, pp, qm, pm = np.meshgrid(r, r, r, r, indexing="ij")
    vals = table[qp, qm, pp, (-pm) % d]  # [q+, p+, q-, p-]
    return DoublePhaseFunction(vals.reshape(d * d, d * d))
