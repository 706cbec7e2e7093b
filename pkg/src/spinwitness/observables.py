"""Magnetization, susceptibilities, correlators, reduced states and concurrence."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import LatticeError, NumericalHealthError
from .models import ModelSpec, build_hamiltonian
from .spin_algebra import AXES, LatticeSpec, embed, spin_component, apply_total_component
from .states import POSITIVITY_TOL, expectation, to_density_matrix, validate_density_matrix
from .thermal import Spectrum, diagonalize, thermal_weights

_CHUNK = 1024


@dataclass(frozen=True)
class MagnetizationVector:
    mx: float
    my: float
    mz: float

    @property
    def squared_norm(self) -> float:
        return self.mx**2 + self.my**2 + self.mz**2


@dataclass(frozen=True)
class SusceptibilityTriple:
    chi_x: float
    chi_y: float
    chi_z: float
    T: float

    @property
    def chi_bar(self) -> float:
        return self.chi_x + self.chi_y + self.chi_z


def magnetization_moments(spec: Spectrum, lattice: LatticeSpec, axis: str) -> tuple[np.ndarray, np.ndarray]:
    """Per-eigenstate <n|M_a|n> and <n|M_a^2|n>, memoized on the spectrum.

    Uses ||M_a|n>||^2 for the second moment, and applies M_a site by site
    so no dense total-component matrix is formed.
    """
    if spec.dim != lattice.hilbert_dim:
        raise LatticeError(f"spectrum dimension {spec.dim} does not match lattice {lattice.hilbert_dim}")
    key = ("moments", lattice, axis)
    if key not in spec.cache:
        V = spec.eigenvectors
        first = np.empty(spec.dim)
        second = np.empty(spec.dim)
        for start in range(0, spec.dim, _CHUNK):
            block = V[:, start:start + _CHUNK]
            W = apply_total_component(axis, lattice, block)
            first[start:start + _CHUNK] = np.einsum("kn,kn->n", block.conj(), W).real
            second[start:start + _CHUNK] = np.einsum("kn,kn->n", W.conj(), W).real
        spec.cache[key] = (first, second)
    return spec.cache[key]


def magnetization(spec: Spectrum, T: float, lattice: LatticeSpec, axis: str) -> float:
    """Thermal expectation of the total spin component M_axis (T = 0 allowed)."""
    first, _ = magnetization_moments(spec, lattice, axis)
    return float(np.dot(thermal_weights(spec, T).probabilities, first))


def magnetization_vector(spec: Spectrum, T: float, lattice: LatticeSpec) -> MagnetizationVector:
    return MagnetizationVector(*(magnetization(spec, T, lattice, a) for a in AXES))


def thermal_variance(spec: Spectrum, T: float, lattice: LatticeSpec, axis: str) -> float:
    """<M_a^2> - <M_a>^2 in the thermal state."""
    first, second = magnetization_moments(spec, lattice, axis)
    p = thermal_weights(spec, T).probabilities
    mean = np.dot(p, first)
    return float(np.dot(p, second) - mean * mean)


def fluctuation_susceptibility(spec: Spectrum, T: float, lattice: LatticeSpec, axis: str) -> float:
    """chi_a = Var(M_a) / T."""
    if T <= 0:
        raise ValueError(f"susceptibility needs T > 0, got {T}")
    return thermal_variance(spec, T, lattice, axis) / T


def susceptibility_triple(spec: Spectrum, T: float, lattice: LatticeSpec) -> SusceptibilityTriple:
    return SusceptibilityTriple(*(fluctuation_susceptibility(spec, T, lattice, a) for a in AXES), T=float(T))


def _probe_magnetization(model: ModelSpec, T: float, axis: str, h: float) -> float:
    spec = diagonalize(build_hamiltonian(model, axis, h))
    return magnetization(spec, T, model.lattice, axis)


def derivative_susceptibility(model: ModelSpec, T: float, axis: str, step: float = 1e-3,
                              richardson_tol: float = 1e-3) -> float:
    """Central-difference susceptibility from probe fields +-step along ``axis``.

    The probe enters as +h*M_axis, so the thermodynamic magnetization
    T d(ln Z)/dh equals -<M_axis>; the returned value is its derivative,
    -[<M>(+h) - <M>(-h)] / (2h), which is positive and matches Var(M)/T when
    the probe commutes with the Hamiltonian. A second evaluation at step/2
    guards against a step that is too large.
    """
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    if T <= 0:
        raise ValueError(f"susceptibility needs T > 0, got {T}")

    def central(h):
        return -(_probe_magnetization(model, T, axis, h) - _probe_magnetization(model, T, axis, -h)) / (2 * h)

    coarse = central(step)
    fine = central(step / 2)
    scale = max(abs(fine), 1e-300)
    if abs(coarse - fine) / scale > richardson_tol:
        raise NumericalHealthError(
            f"step {step} too large: estimates {coarse:.6g} (h) and {fine:.6g} (h/2) disagree"
        )
    return coarse


def two_site_correlator(state: np.ndarray, lattice: LatticeSpec, i: int, j: int, axis: str) -> float:
    """<s_a^i s_a^j> in an explicit state."""
    if i == j:
        raise LatticeError("two_site_correlator needs distinct sites")
    local = spin_component(lattice.spin, axis)
    return expectation(state, embed(local, i, lattice) @ embed(local, j, lattice))


def _check_keep(keep: Sequence[int], lattice: LatticeSpec) -> list[int]:
    keep = list(keep)
    if not keep:
        raise LatticeError("keep must contain at least one site")
    if any(b <= a for a, b in zip(keep, keep[1:])):
        raise LatticeError(f"keep must be strictly increasing, got {keep}")
    if keep[0] < 0 or keep[-1] >= lattice.n_sites:
        raise LatticeError(f"keep {keep} out of range for {lattice.n_sites} sites")
    return keep


def reduced_density_matrix(state: np.ndarray, lattice: LatticeSpec, keep: Sequence[int]) -> np.ndarray:
    """Partial trace over every site not in ``keep`` (ket or density matrix input)."""
    keep = _check_keep(keep, lattice)
    state = np.asarray(state)
    n, d = lattice.n_sites, lattice.local_dim
    rest = [k for k in range(n) if k not in keep]
    dk, dr = d ** len(keep), d ** len(rest)
    if state.ndim == 1:
        psi = state.reshape((d,) * n).transpose(keep + rest).reshape(dk, dr)
        return psi @ psi.conj().T
    rho = state.reshape((d,) * (2 * n))
    perm = keep + rest + [n + k for k in keep] + [n + k for k in rest]
    rho = rho.transpose(perm).reshape(dk, dr, dk, dr)
    return np.trace(rho, axis1=1, axis2=3)


def thermal_reduced_density_matrix(spec: Spectrum, T: float, lattice: LatticeSpec,
                                   keep: Sequence[int]) -> np.ndarray:
    """Reduced thermal state sum_n p_n Tr_rest|n><n|, without forming the full rho.

    The per-eigenstate reduced matrices are memoized on the spectrum.
    """
    keep = tuple(_check_keep(keep, lattice))
    key = ("rdm", lattice, keep)
    if key not in spec.cache:
        n, d = lattice.n_sites, lattice.local_dim
        rest = [k for k in range(n) if k not in keep]
        dk = d ** len(keep)
        blocks = []
        for start in range(0, spec.dim, _CHUNK):
            V = spec.eigenvectors[:, start:start + _CHUNK]
            X = V.reshape((d,) * n + (V.shape[1],)).transpose(list(keep) + rest + [n]).reshape(dk, -1, V.shape[1])
            blocks.append(np.einsum("arn,brn->nab", X, X.conj()))
        spec.cache[key] = np.concatenate(blocks)
    p = thermal_weights(spec, T).probabilities
    return np.einsum("n,nab->ab", p, spec.cache[key])


_SIGMA_YY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)


def concurrence_lambdas(rho: np.ndarray) -> np.ndarray:
    """Descending square roots of the eigenvalues of rho (sy⊗sy) rho* (sy⊗sy).

    Computed from the Hermitian form sqrt(rho) rho~ sqrt(rho), which has the
    same spectrum. Negative eigenvalues above -1e-10 are clamped to zero.
    """
    rho = to_density_matrix(rho)
    if rho.shape != (4, 4):
        raise LatticeError(f"concurrence needs a two-qubit (4x4) state, got shape {rho.shape}")
    validate_density_matrix(rho, tol=1e-10)
    w, U = np.linalg.eigh(rho)
    sqrt_rho = (U * np.sqrt(np.clip(w, 0, None))) @ U.conj().T
    flipped = _SIGMA_YY @ rho.conj() @ _SIGMA_YY
    R = sqrt_rho @ flipped @ sqrt_rho
    eig = np.linalg.eigvalsh(0.5 * (R + R.conj().T))
    if eig[0] < -POSITIVITY_TOL:
        raise NumericalHealthError(f"R-matrix eigenvalue {eig[0]:.3e} is too negative")
    return np.sqrt(np.clip(eig, 0, None))[::-1]


def concurrence_margin(rho: np.ndarray) -> float:
    """Unclamped lambda_1 - lambda_2 - lambda_3 - lambda_4 (positive iff entangled)."""
    lam = concurrence_lambdas(rho)
    return float(lam[0] - lam[1:].sum())


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence max(0, lambda_1 - lambda_2 - lambda_3 - lambda_4)."""
    return min(1.0, max(0.0, concurrence_margin(rho)))


def partial_transpose(rho: np.ndarray, lattice: LatticeSpec, sites: Sequence[int]) -> np.ndarray:
    """Transpose the tensor factors listed in ``sites``."""
    rho = to_density_matrix(rho)
    n, d = lattice.n_sites, lattice.local_dim
    t = rho.reshape((d,) * (2 * n))
    perm = list(range(2 * n))
    for k in sites:
        perm[k], perm[n + k] = perm[n + k], perm[k]
    return t.transpose(perm).reshape(rho.shape)


def is_ppt(rho: np.ndarray, lattice: LatticeSpec, sites: Sequence[int], tol: float = 1e-12) -> bool:
    """Positive partial transpose test (separability certificate for 2x2 and 2x3)."""
    pt = partial_transpose(rho, lattice, sites)
    return bool(np.linalg.eigvalsh(0.5 * (pt + pt.conj().T))[0] >= -tol)
