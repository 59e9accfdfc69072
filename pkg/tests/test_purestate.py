import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from doublephase.purestate import (
    anticorrelation,
    anticorrelation_superop,
    anticorrelation_wigner_sum,
    correlation,
    correlation_chord_sum,
    correlation_superop,
    density_superop,
    is_self_choi_conjugate,
    purity_reconstruction,
    verify_pure_identities,
    weyl_product,
)
from doublephase.linalg import dyad_superop, identity_superop
from doublephase.sampling import random_density, random_state_vector
from doublephase.weyl import chord_symbol, weyl_symbol

from conftest import maxdiff

seeds = st.integers(0, 2**32 - 1)
dims = st.sampled_from([3, 5, 7])


@given(dims, seeds)
def test_correlation_three_ways(d, seed):
    rng = np.random.default_rng(seed)
    rho = random_density(d, rng)
    x = tuple(rng.integers(0, d, 2))
    c = correlation(rho, x)
    assert abs(c - correlation_superop(rho, x)) < 1e-10
    assert abs(c - correlation_chord_sum(rho, x)) < 1e-10
    a = anticorrelation(rho, x)
    assert abs(a - anticorrelation_superop(rho, x)) < 1e-10
    assert abs(a - anticorrelation_wigner_sum(rho, x)) < 1e-10


def test_correlation_at_origin_is_purity(rng):
    rho = random_density(5, rng)
    assert abs(correlation(rho, (0, 0)) - np.trace(rho @ rho)) < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_maximally_mixed_correlations(d):
    rho = np.eye(d) / d
    for x in [(0, 0), (1, 2), (d - 1, 1)]:
        assert abs(correlation(rho, x) - 1 / d) < 1e-12
        assert abs(anticorrelation(rho, x) - 1 / d) < 1e-12


def test_pure_state_correlations(rng):
    d = 7
    psi = random_state_vector(d, rng)
    rho = np.outer(psi, psi.conj())
    chi, W = chord_symbol(rho), weyl_symbol(rho)
    for x in [(0, 3), (2, 5), (6, 6)]:
        assert abs(correlation(rho, x) - abs(chi[x]) ** 2) < 1e-12
        assert abs(anticorrelation(rho, x) - W[x].real ** 2) < 1e-12


def test_anticorrelation_at_symmetry_centre():
    # |0> is a parity eigenstate, so R_0 rho R_0 = rho
    rho = np.zeros((3, 3))
    rho[0, 0] = 1
    assert abs(anticorrelation(rho, (0, 0)) - 1) < 1e-12


def test_density_superop_cases(rng):
    d = 5
    assert maxdiff(density_superop(np.eye(d) / d), identity_superop(d) / d**2) < 1e-15
    psi = random_state_vector(d, rng)
    rho = np.outer(psi, psi.conj())
    assert maxdiff(density_superop(rho), dyad_superop(rho, rho)) < 1e-12
    mixed = random_density(d, rng)
    assert maxdiff(density_superop(mixed), dyad_superop(mixed, mixed)) > 1e-3


@given(dims, seeds, st.booleans())
def test_self_choi_conjugacy_iff_pure(d, seed, pure):
    rng = np.random.default_rng(seed)
    if pure:
        psi = random_state_vector(d, rng)
        rho = np.outer(psi, psi.conj())
    else:
        rho = random_density(d, rng, rank=2)
    residual = np.max(np.abs(rho @ rho - rho))
    assert is_self_choi_conjugate(rho) == (residual < 1e-6)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_random_pure_states_satisfy_all_identities(d, rng):
    for _ in range(3):
        rep = verify_pure_identities(random_state_vector(d, rng))
        assert rep.is_pure()
        assert rep.max_residual() < 1e-9
        assert abs(rep.purity - 1) < 1e-12


def test_report_lists_every_identity(rng):
    rep = verify_pure_identities(random_state_vector(3, rng))
    expected = {
        "prop1", "prop2", "prop3", "chord-modulus-invariance", "wigner-square",
        "special-chord-origin", "special-wigner-origin", "special-mixed-origin",
        "special-mixed-chord", "fourier-invariance", "quartic", "origin-value",
        "purity-reconstruction",
    }
    assert set(rep.residuals) == expected
    assert all(v >= 0 for v in rep.residuals.values())
    assert rep.to_dict()["dim"] == 3


def test_maximally_mixed_fails_prop2():
    rep = verify_pure_identities(np.eye(7) / 7)
    # (d - 1)/d**2 at the origin of the chord
    assert abs(rep.residuals["prop2"] - 6 / 49) < 1e-12
    assert rep.residuals["prop2"] > 1e-2
    assert not rep.is_pure()


def test_basis_state_identities_and_wigner_ridge():
    e0 = np.eye(3)[0]
    rep = verify_pure_identities(e0)
    assert rep.max_residual() < 1e-12
    # W(q, p) = delta(q, 0) in symbol scale: a ridge along q = 0
    W = weyl_symbol(np.outer(e0, e0))
    assert maxdiff(W, np.array([[1, 1, 1], [0, 0, 0], [0, 0, 0]])) < 1e-12


@given(dims, seeds)
def test_random_mixed_states_violate_chord_identity(d, seed):
    rng = np.random.default_rng(seed)
    rep = verify_pure_identities(random_density(d, rng, rank=2))
    assert rep.residuals["prop1"] > 1e-6


def test_input_validation():
    with pytest.raises(ValueError, match="normalised"):
        verify_pure_identities(np.array([1.0, 1.0, 0.0]))
    with pytest.raises(ValueError, match="normalised"):
        verify_pure_identities(2 * np.eye(3) / 3)
    with pytest.raises(ValueError, match="Hermitian"):
        verify_pure_identities(np.diag([1, 0, 0]) + 0.1j * np.eye(3, k=1))


@given(dims, seeds)
def test_product_rule(d, seed):
    rng = np.random.default_rng(seed)
    A, B = random_density(d, rng), rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    assert maxdiff(weyl_product(weyl_symbol(A), weyl_symbol(B)), weyl_symbol(A @ B)) < 1e-10


def test_purity_reconstruction(rng):
    psi = random_state_vector(7, rng)
    assert np.max(np.abs(purity_reconstruction(np.outer(psi, psi.conj())))) < 1e-9
    d = 5
    # rho = I/d has symbol 1/d and rho^2 has symbol 1/d**2
    res = purity_reconstruction(np.eye(d) / d)
    assert maxdiff(res, 1 / d**2 - 1 / d) < 1e-12
