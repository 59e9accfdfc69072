"""Double phase space representation of operators and superoperators.

Discrete translations and reflections on odd-dimensional Hilbert spaces, the
double Weyl and chord transforms of superoperators, their Choi tables,
phase-space propagation kernels, pure-state Fourier identities, and a
continuum check of the Airy-product Fourier invariance.
"""

from .airy import airy_eval, airy_wigner, verify_airy_invariance
from .evolutions import (
    KrausSet,
    center_center_kernel,
    chord_chord_kernel,
    echo_superop,
    kraus_superop,
    propagate_wigner,
    unitary_superop,
)
from .linalg import apply, check_dim, dyad_superop, sandwich_superop
from .purestate import anticorrelation, correlation, density_superop, verify_pure_identities
from .superop import (
    BasisKind,
    DoublePhaseFunction,
    choi_matrix,
    choi_reshuffle,
    double_chord,
    double_weyl,
    super_reflection,
    super_translation,
    supertrace,
)
from .weyl import chord_symbol, reflection_op, symplectic_ft, translation_op, weyl_symbol

__version__ = "0.1.0"

__all__ = [
    "BasisKind",
    "DoublePhaseFunction",
    "KrausSet",
    "airy_eval",
    "airy_wigner",
    "anticorrelation",
    "apply",
    "center_center_kernel",
    "check_dim",
    "choi_matrix",
    "choi_reshuffle",
    "chord_chord_kernel",
    "chord_symbol",
    "correlation",
    "density_superop",
    "double_chord",
    "double_weyl",
    "dyad_superop",
    "echo_superop",
    "kraus_superop",
    "propagate_wigner",
    "reflection_op",
    "sandwich_superop",
    "super_reflection",
    "super_translation",
    "supertrace",
    "symplectic_ft",
    "translation_op",
    "unitary_superop",
    "verify_airy_invariance",
    "verify_pure_identities",
    "weyl_symbol",
]
