import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import assert_symplectic, random_cov, random_symplectic
from qillum import (
    Bipartition,
    CovarianceMatrix,
    GaussianState,
    WilliamsonDecomposition,
    is_physical,
    is_pure,
    log_negativity,
    partial_transpose,
    symplectic_eigenvalues,
    symplectic_form,
    tmsv_correlation,
    tmsv_cov,
    williamson_decompose,
)


def test_symplectic_form_blocks():
    omega = symplectic_form(2)
    assert omega.shape == (4, 4)
    assert np.array_equal(omega, -omega.T)
    assert np.array_equal(omega[:2, :2], [[0, 1], [-1, 0]])
    assert np.max(np.abs(omega @ omega + np.eye(4))) == 0


def test_symplectic_form_rejects_nonpositive():
    with pytest.raises(ValueError):
        symplectic_form(0)


def test_covariance_validation():
    with pytest.raises(ValueError):
        CovarianceMatrix(np.ones((3, 3)))  # odd dimension
    with pytest.raises(ValueError):
        CovarianceMatrix(np.ones((2, 4)))
    bad = np.diag([2.0, 2.0]).astype(float)
    bad[0, 1] = 1e-6  # asymmetric
    with pytest.raises(ValueError):
        CovarianceMatrix(bad)
    with pytest.raises(ValueError):
        CovarianceMatrix(np.diag([1.0, -1.0]))


def test_gaussian_state_mean_length():
    cov = CovarianceMatrix(np.diag([3.0, 3.0]))
    state = GaussianState(cov=cov)
    assert np.array_equal(state.mean, np.zeros(2))
    with pytest.raises(ValueError):
        GaussianState(cov=cov, mean=np.zeros(4))


def test_single_thermal_eigenvalue():
    assert np.allclose(symplectic_eigenvalues(np.diag([7.0, 7.0])), [7.0])


def test_williamson_thermal_diagonal():
    cov = CovarianceMatrix(np.diag([5.0, 5.0, 2.0, 2.0]))
    dec = williamson_decompose(cov)
    assert np.allclose(dec.nu, [5.0, 2.0])
    assert np.max(np.abs(dec.reconstruct() - cov.matrix)) < 1e-12


def test_williamson_deterministic():
    rng = np.random.default_rng(7)
    m, _ = random_cov(3, rng)
    d1 = williamson_decompose(m)
    d2 = williamson_decompose(m)
    assert np.array_equal(d1.symplectic, d2.symplectic)
    assert np.array_equal(d1.nu, d2.nu)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 3))
def test_williamson_random_properties(seed, n):
    rng = np.random.default_rng(seed)
    m, nus = random_cov(n, rng)
    dec = williamson_decompose(m)
    scale = max(1.0, np.max(np.abs(m)))
    assert np.max(np.abs(dec.reconstruct() - m)) < 1e-9 * scale
    assert_symplectic(dec.symplectic)
    assert np.all(np.diff(dec.nu) <= 1e-12)
    assert np.allclose(dec.nu, nus, rtol=1e-8, atol=1e-8)
    # determinant is the squared product of the spectrum
    assert np.isclose(np.linalg.det(m), np.prod(dec.nu**2), rtol=1e-7)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_spectrum_congruence_invariant(seed):
    rng = np.random.default_rng(seed)
    m, _ = random_cov(2, rng)
    s = random_symplectic(2, rng)
    before = symplectic_eigenvalues(m)
    after = symplectic_eigenvalues(0.5 * ((s @ m @ s.T) + (s @ m @ s.T).T))
    assert np.allclose(before, after, rtol=1e-8, atol=1e-8)


def test_decomposition_validation():
    with pytest.raises(ValueError):
        WilliamsonDecomposition(symplectic=np.eye(4), nu=np.array([1.0, 2.0]))  # ascending
    with pytest.raises(ValueError):
        WilliamsonDecomposition(symplectic=2 * np.eye(4), nu=np.array([2.0, 1.0]))


def test_tmsv_is_pure():
    cov = tmsv_cov(0.4)
    assert np.allclose(symplectic_eigenvalues(cov), [1.0, 1.0], atol=1e-12)
    assert is_pure(cov)
    assert is_physical(cov)


def test_unphysical_detection():
    assert not is_physical(np.diag([0.5, 0.5]))
    assert not is_pure(np.diag([3.0, 3.0]))


def test_bipartition_validation():
    part = Bipartition(n_modes=3, transposed=(2, 0, 2))
    assert part.transposed == (0, 2)
    with pytest.raises(ValueError):
        Bipartition(n_modes=3, transposed=())
    with pytest.raises(ValueError):
        Bipartition(n_modes=3, transposed=(0, 1, 2))
    with pytest.raises(ValueError):
        Bipartition(n_modes=3, transposed=(3,))


def test_partial_transpose_involution_and_signs():
    rng = np.random.default_rng(11)
    m, _ = random_cov(2, rng)
    cov = CovarianceMatrix(m)
    part = Bipartition(n_modes=2, transposed=(1,))
    once = partial_transpose(cov, part)
    assert once.matrix[0, 3] == -cov.matrix[0, 3]
    assert once.matrix[2, 2] == cov.matrix[2, 2]
    twice = partial_transpose(once, part)
    assert np.array_equal(twice.matrix, cov.matrix)


def test_tmsv_negativity_closed_form():
    ns = 0.3
    cov = tmsv_cov(ns)
    s = 2 * ns + 1
    c = tmsv_correlation(ns)
    part = Bipartition(n_modes=2, transposed=(1,))
    tilde = symplectic_eigenvalues(partial_transpose(cov, part))
    assert np.allclose(np.sort(tilde), np.sort([s - c, s + c]), atol=1e-12)
    assert log_negativity(cov, part) == pytest.approx(-np.log2(s - c), abs=1e-12)


def test_log_negativity_zero_for_product_state():
    cov = CovarianceMatrix(np.diag([3.0, 3.0, 5.0, 5.0]))
    assert log_negativity(cov, Bipartition(n_modes=2, transposed=(0,))) == 0.0
