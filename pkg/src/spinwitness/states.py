"""Named states, random state generators and state-level expectation values.

States are plain numpy arrays: a 1-D array is a pure state (ket), a 2-D array
is a density matrix. Randomness always comes from an explicit seed or
``numpy.random.Generator``; there is no module-level RNG.
"""

from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import LatticeError, NumericalHealthError
from .spin_algebra import AXES, LatticeSpec, SpinLength, spin_component, total_component

NORM_TOL = 1e-12
POSITIVITY_TOL = 1e-10


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def validate_pure(psi: np.ndarray, tol: float = NORM_TOL) -> np.ndarray:
    psi = np.asarray(psi)
    if psi.ndim != 1:
        raise LatticeError(f"pure state must be a vector, got shape {psi.shape}")
    if abs(np.linalg.norm(psi) - 1.0) > tol:
        raise NumericalHealthError(f"state norm {np.linalg.norm(psi):.15f} differs from 1")
    return psi


def validate_density_matrix(rho: np.ndarray, tol: float = NORM_TOL,
                            positivity_tol: float = POSITIVITY_TOL) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; returns ``rho`` unchanged."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise LatticeError(f"density matrix must be square, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise NumericalHealthError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise NumericalHealthError(f"density matrix trace {np.trace(rho).real:.15f} differs from 1")
    if np.linalg.eigvalsh(rho)[0] < -positivity_tol:
        raise NumericalHealthError("density matrix has a negative eigenvalue")
    return rho


def to_density_matrix(state: np.ndarray) -> np.ndarray:
    state = np.asarray(state)
    return np.outer(state, state.conj()) if state.ndim == 1 else state


def expectation(state: np.ndarray, A: np.ndarray) -> float:
    """Real part of <A> for a ket or density matrix; Hermitian A assumed."""
    state = np.asarray(state)
    if state.ndim == 1:
        value = np.vdot(state, A @ state)
    else:
        value = np.einsum("ij,ji->", state, A)
    if abs(value.imag) > 1e-8:
        raise NumericalHealthError(f"expectation has imaginary part {value.imag:.3e}")
    return float(value.real)


def variance(state: np.ndarray, A: np.ndarray) -> float:
    return expectation(state, A @ A) - expectation(state, A) ** 2


def total_components(lattice: LatticeSpec) -> dict[str, np.ndarray]:
    return {axis: total_component(axis, lattice) for axis in AXES}


def state_magnetization(state: np.ndarray, lattice: LatticeSpec,
                        components: dict[str, np.ndarray] | None = None) -> np.ndarray:
    """(<M_x>, <M_y>, <M_z>) of an explicit state."""
    components = components or total_components(lattice)
    return np.array([expectation(state, components[a]) for a in AXES])


def variance_sum(state: np.ndarray, lattice: LatticeSpec,
                 components: dict[str, np.ndarray] | None = None) -> float:
    """Var(M_x) + Var(M_y) + Var(M_z); equals T * chi_bar on a thermal state."""
    components = components or total_components(lattice)
    return sum(variance(state, components[a]) for a in AXES)


def basis_state(spin: SpinLength, m: float) -> np.ndarray:
    """Local ket |m> in the basis ordering m = s, s-1, ..., -s."""
    index = round(spin.s - m)
    if not (0 <= index < spin.dim) or abs(spin.s - m - index) > 1e-12:
        raise LatticeError(f"m={m} is not a magnetic quantum number of spin {spin.s}")
    ket = np.zeros(spin.dim, dtype=complex)
    ket[index] = 1.0
    return ket


def singlet_pair() -> np.ndarray:
    """(|01> - |10>)/sqrt(2) with |0> = spin up."""
    psi = np.zeros(4, dtype=complex)
    psi[1], psi[2] = 1 / np.sqrt(2), -1 / np.sqrt(2)
    return psi


def product_state(locals_: Sequence[np.ndarray]) -> np.ndarray:
    """Tensor product of single-site kets in slot order."""
    if not locals_:
        raise LatticeError("product_state needs at least one site")
    dims = {len(v) for v in locals_}
    if len(dims) != 1:
        raise LatticeError(f"all local states must have the same dimension, got {sorted(dims)}")
    for v in locals_:
        validate_pure(np.asarray(v, dtype=complex))
    return reduce(np.kron, [np.asarray(v, dtype=complex) for v in locals_])


def all_up(lattice: LatticeSpec) -> np.ndarray:
    """|j = Ns, m = Ns>."""
    up = basis_state(lattice.spin, lattice.spin.s)
    return product_state([up] * lattice.n_sites)


def haar_random_pure(dim: int, seed=None) -> np.ndarray:
    """Normalized complex Gaussian vector (Haar measure on the unit sphere)."""
    if dim < 2:
        raise LatticeError(f"dim must be at least 2, got {dim}")
    rng = _rng(seed)
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def random_mixed_state(dim: int, seed=None, ancilla_dim: int | None = None) -> np.ndarray:
    """Induced-measure mixed state: partial trace of a Haar pure state on dim x ancilla_dim."""
    rng = _rng(seed)
    k = ancilla_dim or dim
    psi = haar_random_pure(dim * k, rng).reshape(dim, k)
    rho = psi @ psi.conj().T
    return 0.5 * (rho + rho.conj().T)


def random_density_matrix(dim: int, seed=None) -> np.ndarray:
    """Hilbert-Schmidt random density matrix (square ancilla)."""
    return random_mixed_state(dim, seed, dim)


def simplex_weights(n: int, seed=None) -> np.ndarray:
    """Uniform (Dirichlet(1)) weights from normalized exponential draws."""
    rng = _rng(seed)
    w = rng.exponential(size=n)
    return w / w.sum()


def random_separable_mixture(lattice: LatticeSpec, n_terms: int, seed=None,
                             pure_locals: bool = False) -> np.ndarray:
    """sum_n w_n rho^1_n ⊗ ... ⊗ rho^N_n with random single-site states."""
    if n_terms < 1:
        raise LatticeError(f"n_terms must be at least 1, got {n_terms}")
    rng = _rng(seed)
    d = lattice.local_dim
    weights = simplex_weights(n_terms, rng)
    rho = np.zeros((lattice.hilbert_dim,) * 2, dtype=complex)
    for w in weights:
        if pure_locals:
            factors = [to_density_matrix(haar_random_pure(d, rng)) for _ in range(lattice.n_sites)]
        else:
            factors = [random_mixed_state(d, rng) for _ in range(lattice.n_sites)]
        rho += w * reduce(np.kron, factors)
    return rho


def random_rotation(spin: SpinLength, seed=None) -> np.ndarray:
    """Single-site SU(2) rotation exp(-i theta n.s) with random axis n and angle theta."""
    rng = _rng(seed)
    n = rng.standard_normal(3)
    n /= np.linalg.norm(n)
    theta = rng.uniform(0, 2 * np.pi)
    generator = sum(c * spin_component(spin, a) for c, a in zip(n, AXES))
    return scipy.linalg.expm(-1j * theta * generator)


def global_rotation(lattice: LatticeSpec, seed=None) -> np.ndarray:
    """The same random rotation applied to every site."""
    u = random_rotation(lattice.spin, seed)
    return reduce(np.kron, [u] * lattice.n_sites)


def rotate(state: np.ndarray, U: np.ndarray) -> np.ndarray:
    state = np.asarray(state)
    return U @ state if state.ndim == 1 else U @ state @ U.conj().T
