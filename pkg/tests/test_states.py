import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spinwitness.errors import LatticeError, NumericalHealthError
from spinwitness.observables import concurrence
from spinwitness.spin_algebra import LatticeSpec, SpinLength, total_component
from spinwitness.states import (
    all_up,
    basis_state,
    global_rotation,
    haar_random_pure,
    product_state,
    random_density_matrix,
    random_mixed_state,
    random_rotation,
    random_separable_mixture,
    rotate,
    simplex_weights,
    singlet_pair,
    state_magnetization,
    to_density_matrix,
    validate_density_matrix,
    validate_pure,
    variance_sum,
)

HALF, ONE = SpinLength(1), SpinLength(2)


def test_generators_are_deterministic():
    assert np.array_equal(haar_random_pure(8, 5), haar_random_pure(8, 5))
    assert np.array_equal(random_density_matrix(6, 5), random_density_matrix(6, 5))
    lat = LatticeSpec(3, HALF)
    assert np.array_equal(random_separable_mixture(lat, 3, 9), random_separable_mixture(lat, 3, 9))
    assert np.array_equal(random_rotation(ONE, 2), random_rotation(ONE, 2))
    assert not np.array_equal(haar_random_pure(8, 5), haar_random_pure(8, 6))


def test_generator_outputs_are_valid(rng):
    for d in (2, 3, 8):
        validate_pure(haar_random_pure(d, rng))
        validate_density_matrix(random_mixed_state(d, rng))
        validate_density_matrix(random_mixed_state(d, rng, ancilla_dim=1))
    lat = LatticeSpec(3, ONE)
    validate_density_matrix(random_separable_mixture(lat, 4, rng))
    w = simplex_weights(7, rng)
    assert abs(w.sum() - 1) < 1e-15 and np.all(w > 0)
    with pytest.raises(LatticeError):
        random_separable_mixture(lat, 0, rng)


def test_validation_rejects_bad_states():
    with pytest.raises(NumericalHealthError):
        validate_pure(np.array([1.0, 1.0]))
    with pytest.raises(NumericalHealthError):
        validate_density_matrix(np.diag([1.5, -0.5]))
    with pytest.raises(NumericalHealthError):
        validate_density_matrix(np.array([[0.5, 0.1], [0.0, 0.5]]))
    with pytest.raises(LatticeError):
        basis_state(HALF, 1.0)
    with pytest.raises(LatticeError):
        product_state([basis_state(HALF, 0.5), basis_state(ONE, 1)])


def test_haar_magnetization_mean_is_zero():
    lat = LatticeSpec(3, HALF)
    mz = total_component("z", lat)
    rng = np.random.default_rng(11)
    samples = np.array([np.real(np.vdot(p, mz @ p)) for p in (haar_random_pure(8, rng) for _ in range(4000))])
    assert abs(samples.mean()) < 4 * samples.std() / np.sqrt(samples.size)


def test_rotation_is_unitary_and_covariant(rng):
    for spin in (HALF, ONE, SpinLength(3)):
        u = random_rotation(spin, rng)
        np.testing.assert_allclose(u @ u.conj().T, np.eye(spin.dim), atol=1e-12)
    lat = LatticeSpec(2, ONE)
    U = global_rotation(lat, rng)
    psi = all_up(lat)
    # |<M>| is preserved under a global rotation
    before = np.linalg.norm(state_magnetization(psi, lat))
    after = np.linalg.norm(state_magnetization(rotate(psi, U), lat))
    assert abs(before - after) < 1e-12


@pytest.mark.parametrize("n, two_s", [(2, 1), (3, 1), (2, 2), (4, 1)])
def test_variance_sum_reference_states(n, two_s):
    lat = LatticeSpec(n, SpinLength(two_s))
    ns, s = lat.total_spin, lat.spin.s
    assert abs(variance_sum(all_up(lat), lat) - ns) < 1e-12
    mixed = np.eye(lat.hilbert_dim) / lat.hilbert_dim
    assert abs(variance_sum(mixed, lat) - n * s * (s + 1)) < 1e-12


def test_singlet_variance_sum_is_zero():
    lat = LatticeSpec(2, HALF)
    assert abs(variance_sum(singlet_pair(), lat)) < 1e-15
    np.testing.assert_allclose(state_magnetization(singlet_pair(), lat), 0, atol=1e-15)


def test_variance_sum_is_concave(rng):
    lat = LatticeSpec(2, ONE)
    for _ in range(50):
        a, b = random_density_matrix(9, rng), random_density_matrix(9, rng)
        p = rng.uniform()
        mixed = variance_sum(p * a + (1 - p) * b, lat)
        assert mixed >= p * variance_sum(a, lat) + (1 - p) * variance_sum(b, lat) - 1e-12


@pytest.mark.parametrize("spin", [HALF, ONE, SpinLength(3)])
def test_single_site_magnetization_bounded(spin, rng):
    lat = LatticeSpec(1, spin)
    for _ in range(100):
        m = state_magnetization(haar_random_pure(spin.dim, rng), lat)
        assert float(m @ m) <= spin.s**2 + 1e-12


def test_separable_two_qubit_states_have_zero_concurrence(rng):
    lat = LatticeSpec(2, HALF)
    for _ in range(200):
        rho = random_separable_mixture(lat, int(rng.integers(1, 5)), rng)
        assert concurrence(rho) < 1e-7


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n_terms=st.integers(1, 4),
       case=st.sampled_from([(2, 1), (3, 1), (2, 2)]))
def test_separable_mixtures_respect_bound(seed, n_terms, case):
    lat = LatticeSpec(case[0], SpinLength(case[1]))
    rho = random_separable_mixture(lat, n_terms, seed)
    assert variance_sum(rho, lat) >= lat.total_spin - 1e-9


def test_ket_and_density_matrix_paths_agree(rng):
    lat = LatticeSpec(3, HALF)
    psi = haar_random_pure(8, rng)
    rho = to_density_matrix(psi)
    assert abs(variance_sum(psi, lat) - variance_sum(rho, lat)) < 1e-12
    np.testing.assert_allclose(state_magnetization(psi, lat), state_magnetization(rho, lat), atol=1e-12)
