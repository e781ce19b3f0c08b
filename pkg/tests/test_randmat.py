import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wre.errors import DegenerateInputError, ParameterError
from wre.randmat import (
    EnsembleSpec,
    check_density_matrix,
    generator,
    normalized_moments,
    random_reduced_density,
    reduced_density,
    sample_ensemble_matrix,
    sample_gaussian_matrix,
    sampling_mean_for_lambda0,
    seed_sequence,
    trace_gram,
    wishart,
)


def test_seed_bounds():
    seed_sequence(0)
    seed_sequence(2**64 - 1)
    with pytest.raises(ParameterError):
        seed_sequence(-1)
    with pytest.raises(ParameterError):
        seed_sequence(2**64)


def test_streams_are_reproducible_and_distinct():
    a = sample_gaussian_matrix(4, 6, 0.0, 1.0, seed_sequence(7, 1))
    b = sample_gaussian_matrix(4, 6, 0.0, 1.0, seed_sequence(7, 1))
    c = sample_gaussian_matrix(4, 6, 0.0, 1.0, seed_sequence(7, 2))
    assert np.array_equal(a, b)
    assert not np.allclose(a, c)
    assert isinstance(generator(3).bit_generator, np.random.Philox)


def test_gaussian_moments():
    Z = sample_gaussian_matrix(400, 500, 0.3, 2.0, 11)
    assert Z.dtype == np.complex128
    assert abs(Z.mean() - 0.3) < 0.01
    assert abs(np.mean(np.abs(Z - 0.3) ** 2) - 4.0) < 0.03
    # real and imaginary parts carry half the variance each
    assert abs((Z.real - 0.3).var() - 2.0) < 0.03
    assert abs(Z.imag.var() - 2.0) < 0.03


@pytest.mark.parametrize("args", [(0, 3, 0.0, 1.0), (3, 3, 0.0, 0.0), (3, 3, np.nan, 1.0)])
def test_gaussian_rejects_bad_arguments(args):
    with pytest.raises(ParameterError):
        sample_gaussian_matrix(*args, seed=0)


def test_wishart_matches_direct_product():
    X = sample_gaussian_matrix(5, 9, 0.2, 1.0, 3)
    Y = wishart(X, 9)
    assert np.array_equal(Y, Y.conj().T)
    np.testing.assert_allclose(Y, X @ X.conj().T / 9, atol=1e-13)


def test_wishart_real_input():
    X = generator(1).standard_normal((4, 7))
    np.testing.assert_allclose(wishart(X, 7), X @ X.T / 7, atol=1e-13)


def test_wishart_beta_must_match_columns():
    with pytest.raises(ParameterError):
        wishart(np.ones((2, 3)), 4)


def test_reduced_density_contract():
    Z = sample_gaussian_matrix(6, 10, 0.5, 1.0, 5)
    rho = reduced_density(Z)
    check_density_matrix(rho)
    assert abs(np.trace(rho).real - 1.0) < 1e-12
    assert abs(trace_gram(Z) - np.sum(np.abs(Z) ** 2)) < 1e-10


def test_reduced_density_of_a_row_is_pure():
    rho = reduced_density(np.array([1.0 + 1j, 2.0, -1j]))
    assert rho.shape == (1, 1)
    assert abs(rho[0, 0] - 1.0) < 1e-15


def test_reduced_density_rejects_zero():
    with pytest.raises(DegenerateInputError):
        reduced_density(np.zeros((2, 3)))


def test_check_density_matrix_failures():
    with pytest.raises(ParameterError):
        check_density_matrix(np.array([[0.5, 0.1], [0.0, 0.5]]))
    with pytest.raises(ParameterError):
        check_density_matrix(np.eye(2))
    with pytest.raises(ParameterError):
        check_density_matrix(np.diag([1.5, -0.5]))


def test_ensemble_spec_validation():
    with pytest.raises(ParameterError):
        EnsembleSpec(4, 2)
    with pytest.raises(ParameterError):
        EnsembleSpec(2, 4, sigma=0.0)
    with pytest.raises(ParameterError):
        EnsembleSpec(2, 4, gamma=-1.0)
    with pytest.raises(ParameterError):
        EnsembleSpec(2, 4, trials=0)


def test_ensemble_trials_are_independent_streams():
    spec = EnsembleSpec(3, 5, 0.1, 1.0, seed=9)
    assert np.array_equal(sample_ensemble_matrix(spec, 2), sample_ensemble_matrix(spec, 2))
    assert not np.allclose(sample_ensemble_matrix(spec, 2), sample_ensemble_matrix(spec, 3))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 6), st.floats(0.0, 3.0), st.integers(0, 2**32))
def test_random_reduced_density_is_a_state(alpha, extra, gamma, seed):
    spec = EnsembleSpec(alpha, alpha + extra, gamma, 1.0, seed)
    rho = random_reduced_density(spec, 0)
    check_density_matrix(rho)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.floats(0.0, 3.0), st.integers(0, 2**32))
def test_normalized_parameters_satisfy_unit_budget(alpha, beta, gamma, seed):
    Z = sample_gaussian_matrix(alpha, beta, gamma, 1.0, seed)
    g, s2 = normalized_moments(Z)
    assert abs(alpha * (g * g + s2) - 1.0) < 1e-10


@pytest.mark.parametrize("l0", [0.0, 0.1, 0.5, 0.9])
def test_sampling_mean_reaches_target_lambda0(l0):
    gamma = sampling_mean_for_lambda0(l0)
    alpha, beta = 64, 4096
    lam = [
        np.linalg.eigvalsh(random_reduced_density(EnsembleSpec(alpha, beta, gamma, 1.0, 4), t))[-1]
        for t in range(3)
    ]
    # the bulk edge is ~ 4/alpha for l0 = 0
    expected = max(l0, (1 + np.sqrt(alpha / beta)) ** 2 / alpha)
    assert abs(np.mean(lam) - expected) < 0.02


def test_sampling_mean_domain():
    with pytest.raises(ParameterError):
        sampling_mean_for_lambda0(1.0)
    with pytest.raises(ParameterError):
        sampling_mean_for_lambda0(-0.1)
