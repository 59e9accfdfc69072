"""Verification suites behind the command-line interface.

Each suite returns a ``Report`` whose checks record the worst residual
found for one identity and the tolerance it was held to.  Random inputs
come from ``numpy.random.default_rng(seed)``.
"""

from __future__ import annotations

import itertools
import time

import numpy as np

from . import airy as _airy
from .evolutions import echo_superop, kraus_superop, unitary_superop
from .io import Check, Report
from .linalg import check_dim
from .purestate import PURITY_THRESHOLD, verify_pure_identities
from .sampling import random_kraus, random_state_vector, random_superop, random_unitary
from .superop import (
    alt_double_weyl_positions,
    choi_matrix,
    choi_reconstruct,
    choi_reshuffle,
    double_chord,
    double_weyl,
    invert_double_weyl,
    matrix_elements,
    positions_as_choi,
    super_reflection,
    super_translation,
    supertrace,
    supertrace_product,
)
from .weyl import (
    chord_symbol,
    quadruple_trace_R,
    quadruple_trace_T,
    reflection_product_law,
    reflection_translation_law,
    reflections,
    symplectic_ft,
    translation_product_law,
    translation_reflection_law,
    translations,
    weyl_symbol,
)

__all__ = [
    "EmptySuite",
    "algebra_suite",
    "superop_suite",
    "pure_suite",
    "airy_suite",
    "random_channel",
]


class EmptySuite(ValueError):
    """A suite was asked to run zero cases."""


def _points(d):
    return [(q, p) for q in range(d) for p in range(d)]


def _tuples(d, k, rng, samples):
    """All ``k``-tuples of points when that is cheap, otherwise ``samples`` random ones."""
    if d == 3 or d ** (2 * k) <= samples:
        return list(itertools.product(_points(d), repeat=k))
    labels = rng.integers(0, d, size=(samples, k, 2))
    return [tuple(map(tuple, t)) for t in labels]


def algebra_suite(d: int, tol: float = 1e-10, seed: int = 0, samples: int = 200) -> Report:
    """Group laws, orthogonality, completeness and quadruple traces."""
    start = time.perf_counter()
    d = check_dim(d)
    rng = np.random.default_rng(seed)
    T = translations(d)
    R = reflections(d)
    eye = np.eye(d)
    checks = []

    def worst(pairs):
        return max((float(np.max(np.abs(a - b))) for a, b in pairs), default=0.0)

    pairs = _tuples(d, 2, rng, samples)
    checks.append(Check.make("translation-product", worst(
        (T[a] @ T[b], ph * T[l]) for a, b in pairs for ph, l in [translation_product_law(a, b, d)]), tol))
    checks.append(Check.make("reflection-product", worst(
        (R[a] @ R[b], ph * T[l]) for a, b in pairs for ph, l in [reflection_product_law(a, b, d)]), tol))
    checks.append(Check.make("reflection-translation", worst(
        (R[a] @ T[b], ph * R[l]) for a, b in pairs for ph, l in [reflection_translation_law(a, b, d)]), tol))
    checks.append(Check.make("translation-reflection", worst(
        (T[a] @ R[b], ph * R[l]) for a, b in pairs for ph, l in [translation_reflection_law(a, b, d)]), tol))

    Tf = T.reshape(d * d, d, d)
    Rf = R.reshape(d * d, d, d)
    gram_T = np.einsum("aij,bij->ab", Tf.conj(), Tf)
    gram_R = np.einsum("aij,bij->ab", Rf.conj(), Rf)
    dI = d * np.eye(d * d)
    checks.append(Check.make("translation-orthogonality", np.max(np.abs(gram_T - dI)), tol))
    checks.append(Check.make("reflection-orthogonality", np.max(np.abs(gram_R - dI)), tol))
    # sum_k |B_k>><<B_k| = d * identity on operator space
    vT = Tf.transpose(0, 2, 1).reshape(d * d, d * d)
    vR = Rf.transpose(0, 2, 1).reshape(d * d, d * d)
    checks.append(Check.make("translation-completeness", np.max(np.abs(vT.T @ vT.conj() - dI)), tol))
    checks.append(Check.make("reflection-completeness", np.max(np.abs(vR.T @ vR.conj() - dI)), tol))
    refl = max(
        np.max(np.abs(Rf - Rf.conj().transpose(0, 2, 1))),
        np.max(np.abs(np.einsum("aij,ajk->aik", Rf, Rf) - eye)),
        np.max(np.abs(np.trace(Rf, axis1=1, axis2=2) - 1)),
        np.max(np.abs(Rf.sum(axis=0) - d * eye)),
    )
    checks.append(Check.make("reflection-structure", refl, tol))

    quads = _tuples(d, 4, rng, samples)
    qt = qr = 0.0
    for a, b, c, e in quads:
        qt = max(qt, abs(np.trace(T[a] @ T[b] @ T[c] @ T[e]) - quadruple_trace_T(a, b, c, e, d)))
        qr = max(qr, abs(np.trace(R[a] @ R[b] @ R[c] @ R[e]) - quadruple_trace_R(a, b, c, e, d)))
    checks.append(Check.make("quadruple-trace-translation", qt, tol))
    checks.append(Check.make("quadruple-trace-reflection", qr, tol))

    O = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    checks.append(Check.make("centre-chord-transform",
                             np.max(np.abs(weyl_symbol(O) - symplectic_ft(chord_symbol(O)))), tol))

    extra = {"pairs": len(pairs), "quadruples": len(quads)}
    return Report("algebra", d, seed, tuple(checks), time.perf_counter() - start, extra)


def random_channel(kind: str, d: int, rng) -> np.ndarray:
    if kind == "kraus":
        return kraus_superop(random_kraus(d, 3, rng))
    if kind == "unitary":
        return unitary_superop(random_unitary(d, rng))
    if kind == "echo":
        return echo_superop(random_unitary(d, rng), random_unitary(d, rng))
    if kind == "general":
        return random_superop(d, rng)
    raise ValueError(f"unknown channel kind {kind!r}")


# cycle giving 10 Kraus, 5 unitary and 5 echo channels out of 20
_CHANNEL_CYCLE = ("kraus", "kraus", "unitary", "echo")


def _superop_residuals(S, rng, points: int = 4) -> dict:
    d = int(round(np.sqrt(S.shape[0])))
    res = {}
    C = choi_matrix(S, "reflection")
    Ct = choi_matrix(S, "translation")
    W = double_weyl(S)
    X = double_chord(S)
    res["double-weyl-equals-choi"] = W.max_abs_diff(C)
    res["double-chord-equals-choi"] = X.max_abs_diff(Ct)
    res["choi-reconstruction"] = max(
        np.max(np.abs(choi_reconstruct(C, "reflection") - S)),
        np.max(np.abs(choi_reconstruct(Ct, "translation") - S)),
    )
    res["double-weyl-inversion"] = max(
        np.max(np.abs(invert_double_weyl(W, "reflection") - matrix_elements(S, "reflection"))),
        np.max(np.abs(invert_double_weyl(X, "translation") - matrix_elements(S, "translation"))),
    )
    mono = 0.0
    for _ in range(points):
        x, xi = tuple(rng.integers(0, d, 2)), tuple(rng.integers(0, d, 2))
        mono = max(
            mono,
            np.max(np.abs(super_reflection(x, xi, d) - super_reflection(x, xi, d, "fourier"))),
            np.max(np.abs(super_translation(x, xi, d) - super_translation(x, xi, d, "fourier"))),
            abs(np.trace(S @ super_reflection(x, xi, d)) - W.at_center_chord(x, xi)),
        )
    res["monomial-forms"] = float(mono)
    res["supertrace-forms"] = supertrace(S, tol=np.inf).discrepancy
    res["trace-product-forms"] = supertrace_product(S, random_superop(d, rng), tol=np.inf).discrepancy
    res["double-position-relabeling"] = positions_as_choi(alt_double_weyl_positions(S)).max_abs_diff(C)
    return res


def superop_suite(d: int, seed: int = 0, channels: int = 20, tol: float = 1e-9,
                  channel=None, cp_tol: float = 1e-10) -> Report:
    """Double-phase-space identities on seeded random channels.

    When ``channel`` (a superoperator matrix) is given it is checked as well,
    including complete positivity of its Choi matrix.
    """
    start = time.perf_counter()
    d = check_dim(d)
    if channels < 0:
        raise ValueError("number of channels must be nonnegative")
    if channels == 0 and channel is None:
        raise EmptySuite("superop suite needs at least one channel")
    rng = np.random.default_rng(seed)
    worst: dict = {}
    kinds = {}
    for i in range(channels):
        kind = _CHANNEL_CYCLE[i % len(_CHANNEL_CYCLE)]
        kinds[kind] = kinds.get(kind, 0) + 1
        S = random_channel(kind, d, rng)
        for k, v in _superop_residuals(S, rng).items():
            worst[k] = max(worst.get(k, 0.0), float(v))
    checks = [Check.make(k, v, tol) for k, v in worst.items()]
    if channel is not None:
        S = np.asarray(channel, dtype=complex)
        for k, v in _superop_residuals(S, rng).items():
            checks.append(Check.make(f"input-{k}", v, tol))
        eig = np.linalg.eigvalsh((choi_reshuffle(S) + choi_reshuffle(S).conj().T) / 2)
        herm = np.max(np.abs(choi_reshuffle(S) - choi_reshuffle(S).conj().T))
        checks.append(Check.make("input-complete-positivity", max(0.0, -eig.min(), herm), cp_tol))
    extra = {"channels": kinds}
    return Report("superop", d, seed, tuple(checks), time.perf_counter() - start, extra)


def pure_suite(d: int, seed: int = 0, states: int = 10, tol: float = 1e-9,
               state=None, include_basis: bool = True) -> Report:
    """Pure-state identities on random states, the basis state ``|0>`` and an optional input state."""
    start = time.perf_counter()
    d = check_dim(d)
    if states < 0:
        raise ValueError("number of states must be nonnegative")
    rng = np.random.default_rng(seed)
    inputs = [random_state_vector(d, rng) for _ in range(states)]
    if include_basis and state is None:
        inputs.append(np.eye(d, dtype=complex)[0])
    if state is not None:
        inputs.append(np.asarray(state, dtype=complex))
    if not inputs:
        raise EmptySuite("pure suite needs at least one state")
    worst: dict = {}
    for s in inputs:
        rep = verify_pure_identities(s)
        for k, v in rep.residuals.items():
            worst[k] = max(worst.get(k, 0.0), v)
    checks = tuple(Check.make(k, v, tol) for k, v in worst.items())
    verdict = "pure" if max(worst.values()) < PURITY_THRESHOLD else "mixed"
    extra = {"states": len(inputs), "classification": verdict}
    return Report("pure", d, seed, checks, time.perf_counter() - start, extra)


def airy_suite(x1=(-3.0, 0.0), N: int = 1024, L: float = 24.0, tol: float = 1e-5,
               edge_floor: float = _airy.DEFAULT_EDGE_FLOOR, symmetry_tol: float = 1e-10,
               imag_tol: float = 1e-10):
    """Fourier invariance of the symmetrised Airy product; returns ``(report, field)``."""
    start = time.perf_counter()
    grid = _airy.PlaneGrid(N, L)
    F = _airy.symmetrized_product_field(x1, grid, edge_floor=edge_floor)
    G = _airy.symplectic_ft_2d(F).values
    v = F.values
    diff = G - v
    peak = float(np.max(np.abs(v)))
    rel = float(np.linalg.norm(diff) / np.linalg.norm(v))
    # F(-x2) sits at index N - k; index 0 (x = -L/2) has no partner on the grid
    sym = float(np.max(np.abs(v[1:, 1:] - v[1:, 1:][::-1, ::-1])) / peak)
    signs = 0.0 if (v.max() > 0 and v.min() < 0) else 1.0
    checks = (
        Check.make("fourier-invariance-rel-l2", rel, tol),
        Check.make("transform-imaginary-part", float(np.max(np.abs(G.imag)) / peak), imag_tol),
        Check.make("central-symmetry", sym, symmetry_tol),
        Check.make("both-signs-present", signs, 0.0),
    )
    extra = {
        "x1": [float(x1[0]), float(x1[1])],
        "N": grid.N,
        "L": grid.L,
        "max_abs_err": float(np.max(np.abs(diff))),
        "rel_l2_err": rel,
        "edge_ratio": F.edge_ratio(),
    }
    return Report("airy", None, None, checks, time.perf_counter() - start, extra), F
