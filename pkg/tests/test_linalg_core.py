import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from errors import DimensionError, ValidationError
from linalg_core import (
    choi_matrix,
    dagger,
    is_hermitian,
    kron,
    mat_exp,
    mat_exp_split,
    min_eigenvalue_hermitian,
    partial_trace,
    superop_from_map,
    unvec,
    vec,
)

def _random_matrix(seed, rows, cols=None):
    rng = np.random.default_rng(seed)
    cols = rows if cols is None else cols
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))

def test_vec_stacks_columns():
    X = np.array([[1, 2], [3, 4]])
    assert_allclose(vec(X), [1, 3, 2, 4])

@given(st.integers(0, 10_000), st.integers(1, 4))
@settings(max_examples=30, deadline=None)
def test_sandwich_matches_kron(seed, d):
    A, X, B = (_random_matrix(seed + k, d) for k in range(3))
    assert_allclose(kron(B.T, A) @ vec(X), vec(A @ X @ B), atol=1e-12)

@given(st.integers(0, 10_000), st.integers(1, 4))
@settings(max_examples=20, deadline=None)
def test_unvec_inverts_vec(seed, d):
    X = _random_matrix(seed, d)
    assert_allclose(unvec(vec(X), d), X)

def test_unvec_wrong_size():
    with pytest.raises(DimensionError):
        unvec(np.ones(5), 2)

def test_mat_exp_zero_and_diagonal():
    assert_allclose(mat_exp(np.zeros((3, 3))), np.eye(3))
    assert_allclose(mat_exp(np.diag([1.0, -2.0])), np.diag([np.e, np.exp(-2.0)]), rtol=1e-14)

def test_mat_exp_rejects_large_norm():
    with pytest.raises(ValidationError):
        mat_exp(np.diag([100.0, 0.0]))

def test_mat_exp_rejects_non_square_and_nan():
    with pytest.raises(DimensionError):
        mat_exp(np.ones((2, 3)))
    with pytest.raises(ValidationError):
        mat_exp(np.array([[np.nan, 0], [0, 0]]))

def test_mat_exp_split_large_norm():
    M = np.diag([-120.0, -0.5])
    assert_allclose(mat_exp_split(M), np.diag([np.exp(-120.0), np.exp(-0.5)]), rtol=1e-10, atol=1e-300)

def test_kron_layout():
    A = np.array([[1, 2], [3, 4]])
    B = np.eye(2)
    assert kron(A, B)[2, 0] == 3
    assert kron(A, B).shape == (4, 4)

def test_partial_trace_product_state():
    rho_a = np.diag([0.25, 0.75])
    rho_b = np.array([[0.5, 0.5], [0.5, 0.5]])
    joint = np.kron(rho_a, rho_b)
    assert_allclose(partial_trace(joint, (2, 2), "B"), rho_a)
    assert_allclose(partial_trace(joint, (2, 2), "A"), rho_b)

def test_partial_trace_bad_dims():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(6), (2, 2))
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), (2, 2), "C")

def test_superop_from_map_matches_kron():
    A = _random_matrix(7, 3)
    S = superop_from_map(lambda X: A @ X @ dagger(A), 3)
    assert_allclose(S, kron(A.conj(), A), atol=1e-12)

def test_choi_of_identity_is_maximally_entangled():
    d = 2
    choi = choi_matrix(np.eye(d * d), d)
    omega = np.zeros(d * d)
    omega[0] = omega[3] = 1.0
    assert_allclose(choi, np.outer(omega, omega))

def test_choi_of_transpose_not_positive():
    d = 2
    S = superop_from_map(lambda X: X.T, d)
    assert min_eigenvalue_hermitian(choi_matrix(S, d)) < -0.5

def test_is_hermitian_relative_tolerance():
    H = np.array([[1.0, 2.0 + 1j], [2.0 - 1j, -1.0]])
    assert is_hermitian(H, 1e-10)
    assert not is_hermitian(H + np.array([[0, 1e-3], [0, 0]]), 1e-10)

@given(st.integers(0, 10_000), st.integers(1, 4))
@settings(max_examples=30, deadline=None)
def test_mat_exp_of_commuting_sum(seed, d):
    M = 0.3 * _random_matrix(seed, d)
    N = 2.0 * M + np.eye(d)
    assert_allclose(mat_exp(M + N), mat_exp(M) @ mat_exp(N), rtol=1e-10, atol=1e-12)

@given(st.integers(0, 10_000), st.integers(1, 4))
@settings(max_examples=30, deadline=None)
def test_mat_exp_commutes_with_adjoint(seed, d):
    M = 0.5 * _random_matrix(seed, d)
    assert_allclose(dagger(mat_exp(M)), mat_exp(dagger(M)), rtol=1e-12, atol=1e-14)

def _partial_trace_by_index_sum(M, dims, which):
    d_a, d_b = dims
    if which == "B":
        out = np.zeros((d_a, d_a), dtype=complex)
        for i in range(d_a):
            for j in range(d_a):
                out[i, j] = sum(M[i * d_b + k, j * d_b + k] for k in range(d_b))
        return out
    out = np.zeros((d_b, d_b), dtype=complex)
    for k in range(d_b):
        for l in range(d_b):
            out[k, l] = sum(M[i * d_b + k, i * d_b + l] for i in range(d_a))
    return out

@given(st.integers(0, 10_000), st.integers(1, 3), st.integers(1, 3), st.sampled_from(["A", "B"]))
@settings(max_examples=40, deadline=None)
def test_partial_trace_matches_index_sum(seed, d_a, d_b, which):
    M = _random_matrix(seed, d_a * d_b)
    reduced = partial_trace(M, (d_a, d_b), which)
    assert_allclose(reduced, _partial_trace_by_index_sum(M, (d_a, d_b), which), atol=1e-12)
    assert abs(np.trace(reduced) - np.trace(M)) <= 1e-12 * max(1.0, abs(np.trace(M)))

def test_partial_trace_of_maximally_entangled_state():
    psi = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    rho = np.outer(psi, psi.conj())
    assert_allclose(partial_trace(rho, (2, 2), "B"), np.eye(2) / 2, atol=1e-15)
    assert_allclose(partial_trace(rho, (2, 2), "A"), np.eye(2) / 2, atol=1e-15)

def test_choi_of_full_depolarizer():
    S = superop_from_map(lambda X: np.trace(X) * np.eye(2) / 2, 2)
    assert_allclose(choi_matrix(S, 2), np.eye(4) / 2, atol=1e-15)

def test_choi_of_ground_projection():
    A = np.diag([1.0, 0.0])
    S = superop_from_map(lambda X: A @ X @ dagger(A), 2)
    assert_allclose(choi_matrix(S, 2), np.diag([1.0, 0.0, 0.0, 0.0]), atol=1e-15)
