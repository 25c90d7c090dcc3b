import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from errors import DimensionError, TimeOrderError, ValidationError
from model import (
    excited_projector,
    make_model,
    random_density,
    random_model,
    sigma_minus,
    sigma_plus,
)
from regression import (
    CorrelationQuery,
    gram_matrix,
    kernel_heisenberg,
    kernel_schrodinger,
    make_query,
    nested_expectation,
    two_time,
    validate_query,
)
from verification import random_query

def test_population_closed_form(atom, excited):
    w = kernel_schrodinger(atom, excited, make_query([1.0], [excited_projector()]))
    assert abs(w - math.exp(-1.0)) < 1e-10

def test_dipole_closed_form(atom, excited):
    q = make_query([0.5, 1.0], [np.eye(2), sigma_minus()], a_ops=[sigma_minus(), np.eye(2)])
    w = kernel_schrodinger(atom, excited, q)
    assert abs(w - 0.4723665527) < 1e-10
    assert abs(w.imag) < 1e-14

def test_two_time_matches_dipole_query(atom, excited):
    w = two_time(atom, excited, sigma_plus(), sigma_minus(), 0.5, 1.0)
    assert abs(w - math.exp(-0.75)) < 1e-10

def test_two_time_requires_order(atom, excited):
    with pytest.raises(TimeOrderError):
        two_time(atom, excited, sigma_plus(), sigma_minus(), 1.0, 0.5)

def test_three_point_joint_query(atom, excited):
    identity = np.eye(2)
    q = make_query(
        [0.25, 0.5, 1.0],
        [identity, identity, sigma_minus()],
        a_ops=[sigma_minus(), identity, identity],
    )
    assert abs(kernel_schrodinger(atom, excited, q) - math.exp(-0.625)) < 1e-10
    assert abs(kernel_heisenberg(atom, excited, q) - math.exp(-0.625)) < 1e-10

def test_order_dependence(atom, excited):
    first = kernel_schrodinger(atom, excited, make_query([0.5, 1.0], [sigma_minus(), sigma_plus()]))
    second = kernel_schrodinger(atom, excited, make_query([0.5, 1.0], [sigma_plus(), sigma_minus()]))
    assert abs(first - math.exp(-0.75)) < 1e-10
    assert abs(second - (1 - math.exp(-0.5)) * math.exp(-0.25)) < 1e-10
    assert abs(first - second) > 0.1

def test_repeated_times_multiply_operators(atom, excited):
    same = make_query([0.5, 0.5], [sigma_plus(), sigma_minus()])
    product = make_query([0.5], [sigma_minus() @ sigma_plus()])
    assert abs(kernel_schrodinger(atom, excited, same) - kernel_schrodinger(atom, excited, product)) < 1e-12

def test_trivial_dynamics_gives_static_correlation(rng):
    model = make_model(np.zeros((3, 3)), np.zeros((3, 3)))
    rho = random_density(rng, 3)
    b1 = rng.normal(size=(3, 3))
    b2 = rng.normal(size=(3, 3))
    w = kernel_schrodinger(model, rho, make_query([0.3, 2.0], [b1, b2]))
    assert abs(w - np.trace(b2 @ b1 @ rho.rho)) < 1e-12

def test_identity_query_is_trace(atom, excited):
    q = make_query([0.2, 0.9, 1.7], [np.eye(2)] * 3)
    assert abs(kernel_schrodinger(atom, excited, q) - 1.0) < 1e-12

def test_invalid_queries(atom, excited):
    with pytest.raises(TimeOrderError):
        kernel_schrodinger(atom, excited, make_query([1.0, 0.5], [np.eye(2)] * 2))
    with pytest.raises(TimeOrderError):
        kernel_schrodinger(atom, excited, make_query([-0.1], [np.eye(2)]))
    with pytest.raises(ValidationError):
        validate_query(make_query([], []), 2)
    with pytest.raises(DimensionError):
        kernel_schrodinger(atom, excited, make_query([1.0], [np.eye(3)]))
    mismatched = CorrelationQuery((0.5, 1.0), (np.eye(2),), (np.eye(2), np.eye(2)))
    with pytest.raises(ValidationError):
        validate_query(mismatched, 2)

@pytest.mark.parametrize("times, label", [
    ([float("nan")], "t_1"),
    ([0.5, float("inf")], "t_2"),
])
def test_non_finite_times_rejected(times, label):
    q = make_query(times, [np.eye(2)] * len(times))
    with pytest.raises(ValidationError, match=label):
        validate_query(q, 2)

@given(st.integers(0, 10_000), st.sampled_from([2, 3, 4]), st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_schrodinger_and_heisenberg_forms_agree(seed, dim, n):
    rng = np.random.default_rng(seed)
    model = random_model(rng, dim)
    rho = random_density(rng, dim)
    q = random_query(rng, dim, n)
    assert abs(kernel_schrodinger(model, rho, q) - kernel_heisenberg(model, rho, q)) <= 1e-10

@given(st.integers(0, 10_000), st.floats(0.0, 1.0))
@settings(max_examples=20, deadline=None)
def test_heisenberg_cut_is_irrelevant(seed, fraction):
    rng = np.random.default_rng(seed)
    model = random_model(rng, 3)
    rho = random_density(rng, 3)
    q = random_query(rng, 3, 3)
    t0 = fraction * q.times[0]
    assert abs(kernel_heisenberg(model, rho, q, t0) - kernel_heisenberg(model, rho, q)) <= 1e-10

def test_nested_expectation_cut_after_first_time(atom):
    q = make_query([0.5, 1.0], [np.eye(2)] * 2)
    with pytest.raises(TimeOrderError):
        nested_expectation(atom, q, 0.6)

def test_nested_expectation_of_identity_is_identity(rng):
    model = random_model(rng, 3)
    q = make_query([0.4, 1.1], [np.eye(3)] * 2)
    assert_allclose(nested_expectation(model, q, 0.0), np.eye(3), atol=1e-12)

def test_gram_matrix_is_positive_semidefinite(rng):
    model = random_model(rng, 2)
    rho = random_density(rng, 2)
    families = [
        [rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(2)]
        for _ in range(4)
    ]
    G = gram_matrix(model, rho, [0.3, 0.8], families)
    assert_allclose(G, G.conj().T, atol=1e-10)
    assert np.linalg.eigvalsh((G + G.conj().T) / 2).min() >= -1e-10
