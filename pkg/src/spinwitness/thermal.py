"""Dense diagonalization and thermal averages from a cached spectrum."""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import LatticeError, NumericalHealthError
from .models import ModelSpec, build_hamiltonian

HERMITICITY_TOL = 1e-12
DEGENERACY_TOL = 1e-9
IMAG_TOL = 1e-8


@dataclass
class Tolerances:
    """Process-wide defaults, overridable from the run configuration."""

    degeneracy: float = DEGENERACY_TOL
    hermiticity: float = HERMITICITY_TOL


TOLERANCES = Tolerances()


def set_tolerances(degeneracy: float | None = None, hermiticity: float | None = None) -> None:
    if degeneracy is not None:
        TOLERANCES.degeneracy = float(degeneracy)
    if hermiticity is not None:
        TOLERANCES.hermiticity = float(hermiticity)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Ascending energies and the matching orthonormal eigenvectors (columns).

    Instances are immutable; ``cache`` only memoizes quantities derived from
    the eigenvectors (per-eigenstate moments) so temperature sweeps stay cheap.
    """

    energies: np.ndarray
    eigenvectors: np.ndarray
    cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return self.energies.shape[0]

    def eigen_diagonal(self, A: np.ndarray) -> np.ndarray:
        """<n|A|n> for every eigenvector n."""
        A = np.asarray(A)
        if A.shape != (self.dim, self.dim):
            raise LatticeError(f"operator shape {A.shape} does not match spectrum dimension {self.dim}")
        V = self.eigenvectors
        return np.einsum("kn,kn->n", V.conj(), A @ V)


@dataclass(frozen=True)
class ThermalWeights:
    T: float
    probabilities: np.ndarray


def hermiticity_error(H: np.ndarray) -> float:
    H = np.asarray(H)
    return float(np.max(np.abs(H - H.conj().T))) if H.size else 0.0


def diagonalize(H: np.ndarray, hermiticity_tol: float | None = None) -> Spectrum:
    """Full eigendecomposition of a Hermitian matrix.

    Real symmetric input (or complex input with vanishing imaginary part) is
    solved in real arithmetic, which is several times faster than the
    complex driver at the sizes used for chains.

    Raises
    ------
    NumericalHealthError
        If ``H`` is not Hermitian to within ``hermiticity_tol`` (scaled by
        max(1, max|H|)).
    """
    if hermiticity_tol is None:
        hermiticity_tol = TOLERANCES.hermiticity
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise LatticeError(f"expected a square matrix, got shape {H.shape}")
    scale = max(1.0, float(np.max(np.abs(H)))) if H.size else 1.0
    if hermiticity_error(H) > hermiticity_tol * scale:
        raise NumericalHealthError("matrix is not Hermitian; refusing to symmetrize")
    if np.iscomplexobj(H) and not np.any(H.imag):
        H = H.real
    energies, vectors = scipy.linalg.eigh(H, check_finite=False)
    energies.setflags(write=False)
    vectors.setflags(write=False)
    return Spectrum(energies, vectors)


def ground_manifold(spec: Spectrum, degeneracy_tol: float | None = None) -> np.ndarray:
    """Boolean mask of eigenstates within ``degeneracy_tol`` of the ground energy."""
    if degeneracy_tol is None:
        degeneracy_tol = TOLERANCES.degeneracy
    return spec.energies - spec.energies[0] <= degeneracy_tol


def thermal_weights(spec: Spectrum, T: float, degeneracy_tol: float | None = None) -> ThermalWeights:
    """Boltzmann probabilities; T = 0 gives the uniform mixture over the ground manifold."""
    if T < 0:
        raise ValueError(f"temperature must be non-negative, got {T}")
    if T == 0:
        mask = ground_manifold(spec, degeneracy_tol)
        p = mask / mask.sum()
    else:
        x = np.exp(-(spec.energies - spec.energies[0]) / T)
        p = x / x.sum()
    return ThermalWeights(float(T), p)


def _expectation_from_diagonal(diag: np.ndarray, p: np.ndarray) -> float:
    value = np.dot(p, diag)
    if abs(np.imag(value)) > IMAG_TOL:
        raise NumericalHealthError(f"expectation has imaginary part {np.imag(value):.3e}")
    return float(np.real(value))


def thermal_expectation(spec: Spectrum, A: np.ndarray, T: float) -> float:
    """Tr(rho A) for the thermal state at temperature T."""
    p = thermal_weights(spec, T).probabilities
    return _expectation_from_diagonal(spec.eigen_diagonal(A), p)


def log_partition_function(spec: Spectrum, T: float) -> float:
    """ln Z = -E_0/T + ln sum_n exp(-(E_n - E_0)/T)."""
    if T <= 0:
        raise ValueError(f"log Z needs T > 0, got {T}")
    e0 = spec.energies[0]
    return float(-e0 / T + np.log(np.sum(np.exp(-(spec.energies - e0) / T))))


def thermal_density_matrix(spec: Spectrum, T: float) -> np.ndarray:
    """rho = V diag(p) V^dagger."""
    p = thermal_weights(spec, T).probabilities
    V = spec.eigenvectors
    return (V * p) @ V.conj().T


def mean_energy(spec: Spectrum, T: float) -> float:
    return float(np.dot(thermal_weights(spec, T).probabilities, spec.energies))


class SpectrumCache:
    """Bounded LRU of spectra keyed by ModelSpec (which already includes B)."""

    def __init__(self, maxsize: int = 8):
        self.maxsize = maxsize
        self._store: OrderedDict[ModelSpec, Spectrum] = OrderedDict()
        self.hits = 0
        self.misses = 0

    def get(self, model: ModelSpec, hermiticity_tol: float | None = None) -> Spectrum:
        if model in self._store:
            self._store.move_to_end(model)
            self.hits += 1
            return self._store[model]
        self.misses += 1
        spec = diagonalize(build_hamiltonian(model), hermiticity_tol)
        self._store[model] = spec
        while len(self._store) > self.maxsize:
            self._store.popitem(last=False)
        return spec

    def clear(self) -> None:
        self._store.clear()


_default_cache = SpectrumCache()


def solve(model: ModelSpec, hermiticity_tol: float | None = None) -> Spectrum:
    """Diagonalize ``model`` once; repeated calls with an equal model reuse the spectrum."""
    return _default_cache.get(model, hermiticity_tol)
