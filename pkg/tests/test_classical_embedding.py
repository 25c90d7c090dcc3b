import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from classical_embedding import (
    chain_from_model,
    classical_correlation,
    compare_quantum_classical,
    diagonal_invariance_check,
    path_sum_correlation,
    transition_matrix,
    validate_chain,
)
from errors import DimensionError, TimeOrderError, ValidationError
from model import atom_decay_model, make_model, random_model, sigma_minus, validate_density
from regression import make_query

def test_atom_generator_column_convention(atom):
    invariant, Q = diagonal_invariance_check(atom)
    assert invariant
    # ℒ*(E_ee) = E_gg − E_ee
    assert_allclose(Q, np.array([[0.0, 1.0], [0.0, -1.0]]))

def test_chain_from_model_uses_row_convention(atom, excited):
    chain = chain_from_model(atom, excited)
    assert_allclose(chain.Q, np.array([[0.0, 0.0], [1.0, -1.0]]))
    assert_allclose(chain.Q.sum(axis=1), 0.0)
    assert_allclose(chain.p0, [0.0, 1.0])

def test_non_invariant_model(rng):
    model = random_model(rng, 3)
    assert diagonal_invariance_check(model) == (False, None)
    rho = validate_density(np.eye(3) / 3)
    with pytest.raises(ValidationError):
        chain_from_model(model, rho)

def test_coherent_drive_breaks_invariance():
    model = make_model(sigma_minus() + sigma_minus().T, sigma_minus())
    invariant, _ = diagonal_invariance_check(model)
    assert not invariant

def test_absorbing_two_point(atom, excited):
    chain = chain_from_model(atom, excited)
    value = classical_correlation(chain, [0.5, 1.0], [[0.0, 1.0], [0.0, 1.0]])
    assert abs(value - math.exp(-1.0)) < 1e-10

def test_transition_matrix_is_stochastic(atom, excited):
    P = transition_matrix(chain_from_model(atom, excited), 0.7)
    assert_allclose(P.sum(axis=1), 1.0)
    assert abs(P[1, 1] - math.exp(-0.7)) < 1e-12
    with pytest.raises(TimeOrderError):
        transition_matrix(chain_from_model(atom, excited), -1.0)

@pytest.mark.parametrize("Q, p0, error", [
    (np.array([[-1.0, 1.0], [2.0, -1.0]]), [1.0, 0.0], ValidationError),
    (np.array([[1.0, -1.0], [0.0, 0.0]]), [1.0, 0.0], ValidationError),
    (np.array([[0.0, 0.0], [1.0, -1.0]]), [0.7, 0.7], ValidationError),
    (np.array([[0.0, 0.0], [1.0, -1.0]]), [1.0, 0.0, 0.0], DimensionError),
])
def test_validate_chain_rejects(Q, p0, error):
    with pytest.raises(error):
        validate_chain(Q, p0)

def test_correlation_time_checks(atom, excited):
    chain = chain_from_model(atom, excited)
    with pytest.raises(TimeOrderError):
        classical_correlation(chain, [1.0, 0.5], [[1, 1], [1, 1]])
    with pytest.raises(ValidationError):
        path_sum_correlation(chain, [0.5], [[1, 1], [1, 1]])

@given(st.integers(0, 10_000), st.integers(1, 4))
@settings(max_examples=30, deadline=None)
def test_quantum_matches_classical_path_sum(seed, n):
    rng = np.random.default_rng(seed)
    model = atom_decay_model(rng.uniform(0.2, 2.0))
    p = rng.uniform()
    rho = validate_density(np.diag([1.0 - p, p]))
    times = np.sort(rng.uniform(0.0, 2.0, size=n))
    b_ops = [np.diag(rng.uniform(-1.0, 1.0, size=2)) for _ in range(n)]

    result = compare_quantum_classical(model, rho, make_query(times, b_ops))
    assert result["diff"] <= 1e-10
    brute = path_sum_correlation(chain_from_model(model, rho), times, [np.diag(b) for b in b_ops])
    assert abs(brute - result["classical"]) <= 1e-10

def test_three_level_cascade():
    # cascata |2⟩ → |1⟩ → |0⟩ com um único L
    L = np.zeros((3, 3))
    L[0, 1] = 1.0
    L[1, 2] = 1.0
    model = make_model(np.diag([0.0, 1.0, 3.0]), L)
    rho = validate_density(np.diag([0.0, 0.0, 1.0]))
    q = make_query([0.4, 1.3, 2.0], [np.diag([1.0, 2.0, 3.0])] * 3)
    assert compare_quantum_classical(model, rho, q)["diff"] <= 1e-10

def test_preconditions_on_query(atom, excited):
    with pytest.raises(ValidationError, match="diagonal"):
        compare_quantum_classical(atom, excited, make_query([1.0], [sigma_minus()]))
    with pytest.raises(ValidationError, match="identidade"):
        compare_quantum_classical(atom, excited, make_query([1.0], [np.eye(2)], a_ops=[2 * np.eye(2)]))

def test_non_diagonal_state_rejected(atom):
    rho = validate_density(np.full((2, 2), 0.5))
    with pytest.raises(ValidationError, match="diagonal"):
        chain_from_model(atom, rho)

def _random_chain(seed, n):
    rng = np.random.default_rng(seed)
    Q = rng.uniform(0.0, 2.0, size=(n, n))
    np.fill_diagonal(Q, 0.0)
    np.fill_diagonal(Q, -Q.sum(axis=1))
    p0 = rng.dirichlet(np.ones(n))
    return validate_chain(Q, p0)

@given(st.integers(0, 10_000), st.integers(2, 4), st.floats(0.0, 3.0), st.floats(0.0, 3.0))
@settings(max_examples=30, deadline=None)
def test_chapman_kolmogorov(seed, n, s, t):
    chain = _random_chain(seed, n)
    assert_allclose(
        transition_matrix(chain, s + t),
        transition_matrix(chain, s) @ transition_matrix(chain, t),
        atol=1e-10,
    )

@given(st.integers(0, 10_000), st.integers(2, 4), st.floats(0.0, 10.0))
@settings(max_examples=30, deadline=None)
def test_transition_matrix_is_nonnegative(seed, n, t):
    P = transition_matrix(_random_chain(seed, n), t)
    assert (P >= -1e-12).all()
    assert_allclose(P.sum(axis=1), 1.0, atol=1e-10)
