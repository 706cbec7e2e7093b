"""Spin operators for arbitrary spin length and their embedding in a lattice.

Tensor slot convention: site 0 is the leftmost Kronecker factor, so a basis
index of the full space reads as the base-(2s+1) digits (m_0, m_1, ..., m_{N-1})
with site 0 most significant. Local basis order is m = s, s-1, ..., -s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Mapping, Sequence

import numpy as np

from .errors import LatticeError, ResourceCapError

AXES = ("x", "y", "z")

DEFAULT_MAX_DIM = 2**16


@dataclass(frozen=True)
class SpinLength:
    """Spin length stored as the integer ``two_s`` = 2s."""

    two_s: int

    def __post_init__(self):
        if int(self.two_s) != self.two_s or self.two_s < 0:
            raise LatticeError(f"two_s must be a non-negative integer, got {self.two_s!r}")

    @classmethod
    def from_float(cls, s: float) -> "SpinLength":
        two_s = round(2 * s)
        if abs(two_s - 2 * s) > 1e-12:
            raise LatticeError(f"spin length must be a multiple of 1/2, got {s}")
        return cls(two_s)

    @property
    def s(self) -> float:
        return self.two_s / 2

    @property
    def dim(self) -> int:
        return self.two_s + 1


@dataclass(frozen=True)
class LatticeSpec:
    """N sites of uniform spin length with a list of (i, j, J_ij) couplings."""

    n_sites: int
    spin: SpinLength
    couplings: tuple[tuple[int, int, float], ...] = ()
    max_dim: int = field(default=DEFAULT_MAX_DIM, compare=False)

    def __post_init__(self):
        if self.n_sites < 1:
            raise LatticeError(f"n_sites must be positive, got {self.n_sites}")
        if self.spin.two_s < 1:
            raise LatticeError("trivial site: spin length 0 has a one-dimensional space")
        normalized = []
        for coupling in self.couplings:
            i, j, J = coupling
            if not (0 <= i < j < self.n_sites):
                raise LatticeError(
                    f"coupling {coupling!r} must satisfy 0 <= i < j < {self.n_sites}"
                )
            normalized.append((int(i), int(j), float(J)))
        object.__setattr__(self, "couplings", tuple(normalized))
        if self.hilbert_dim > self.max_dim:
            raise ResourceCapError(
                f"Hilbert dimension {self.hilbert_dim} exceeds the cap {self.max_dim}"
            )

    @property
    def local_dim(self) -> int:
        return self.spin.dim

    @property
    def hilbert_dim(self) -> int:
        return self.spin.dim**self.n_sites

    @property
    def total_spin(self) -> float:
        """Maximal total spin N*s."""
        return self.n_sites * self.spin.s

    def relabeled(self, permutation: Sequence[int]) -> "LatticeSpec":
        """Same lattice with site ``k`` renamed to ``permutation[k]``."""
        if sorted(permutation) != list(range(self.n_sites)):
            raise LatticeError("permutation must be a rearrangement of range(n_sites)")
        couplings = []
        for i, j, J in self.couplings:
            a, b = sorted((permutation[i], permutation[j]))
            couplings.append((a, b, J))
        return LatticeSpec(self.n_sites, self.spin, tuple(couplings), self.max_dim)


@lru_cache(maxsize=None)
def _ladder(two_s: int) -> tuple[np.ndarray, np.ndarray]:
    s = two_s / 2
    m = s - np.arange(two_s + 1)
    # <m+1|S+|m> sits one row above the diagonal because m decreases down the basis
    raising = np.diag(np.sqrt(s * (s + 1) - m[1:] * (m[1:] + 1)), k=1)
    return raising, np.diag(m)


def ladder_matrices(spin: SpinLength) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Real matrices (S+, S-, Sz)."""
    if spin.two_s < 1:
        raise LatticeError("trivial site")
    raising, sz = _ladder(spin.two_s)
    return raising.copy(), raising.T.copy(), sz.copy()


def spin_matrices(spin: SpinLength) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return complex (Sx, Sy, Sz) in the basis m = s, ..., -s.

    Raises
    ------
    LatticeError
        If ``spin.two_s == 0`` (trivial site).
    """
    sp, sm, sz = ladder_matrices(spin)
    sx = 0.5 * (sp + sm)
    sy = -0.5j * (sp - sm)
    return sx.astype(complex), sy, sz.astype(complex)


def spin_component(spin: SpinLength, axis: str) -> np.ndarray:
    """Single-site spin component, real-valued for x and z."""
    if axis not in AXES:
        raise LatticeError(f"axis must be one of {AXES}, got {axis!r}")
    sp, sm, sz = ladder_matrices(spin)
    if axis == "x":
        return 0.5 * (sp + sm)
    if axis == "y":
        return -0.5j * (sp - sm)
    return sz


def _check_site(site: int, lattice: LatticeSpec) -> None:
    if not (0 <= site < lattice.n_sites):
        raise LatticeError(f"site {site} out of range for {lattice.n_sites} sites")


def _check_local(local: np.ndarray, lattice: LatticeSpec) -> None:
    if local.shape != (lattice.local_dim, lattice.local_dim):
        raise LatticeError(
            f"local operator shape {local.shape} does not match site dimension {lattice.local_dim}"
        )


def site_product(factors: Mapping[int, np.ndarray], lattice: LatticeSpec) -> np.ndarray:
    """Kronecker product with ``factors[i]`` in slot i and identities elsewhere."""
    d = lattice.local_dim
    for site, local in factors.items():
        _check_site(site, lattice)
        _check_local(np.asarray(local), lattice)
    pieces = []
    run = 0
    for site in range(lattice.n_sites):
        if site in factors:
            if run:
                pieces.append(np.eye(d**run))
                run = 0
            pieces.append(np.asarray(factors[site]))
        else:
            run += 1
    if run:
        pieces.append(np.eye(d**run))
    return reduce(np.kron, pieces)


def embed(local: np.ndarray, site: int, lattice: LatticeSpec) -> np.ndarray:
    """I ⊗ ... ⊗ local ⊗ ... ⊗ I with ``local`` in tensor slot ``site``."""
    return site_product({site: local}, lattice)


def total_component(axis: str, lattice: LatticeSpec) -> np.ndarray:
    """Dense total magnetization operator M_axis = sum_i s_axis^i (complex)."""
    local = spin_component(lattice.spin, axis).astype(complex)
    return sum(embed(local, i, lattice) for i in range(lattice.n_sites))


def total_spin_squared(lattice: LatticeSpec) -> np.ndarray:
    """Casimir M_x^2 + M_y^2 + M_z^2 of the total spin."""
    out = np.zeros((lattice.hilbert_dim,) * 2, dtype=complex)
    for axis in AXES:
        m = total_component(axis, lattice)
        out += m @ m
    return out


def magnetic_numbers(lattice: LatticeSpec) -> np.ndarray:
    """Diagonal of M_z in the product basis."""
    m_local = lattice.spin.s - np.arange(lattice.local_dim)
    grids = np.meshgrid(*([m_local] * lattice.n_sites), indexing="ij")
    return sum(grids).ravel()


def apply_local(op: np.ndarray, site: int, lattice: LatticeSpec, vectors: np.ndarray) -> np.ndarray:
    """Apply a single-site operator to the columns of ``vectors`` without forming embed()."""
    _check_site(site, lattice)
    _check_local(op, lattice)
    d = lattice.local_dim
    vectors = np.asarray(vectors)
    squeeze = vectors.ndim == 1
    v = vectors.reshape(lattice.hilbert_dim, -1)
    k = v.shape[1]
    v = v.reshape(d**site, d, d ** (lattice.n_sites - site - 1), k)
    out = np.einsum("ab,ibjk->iajk", op, v, optimize=True).reshape(lattice.hilbert_dim, k)
    return out[:, 0] if squeeze else out


def apply_total_component(axis: str, lattice: LatticeSpec, vectors: np.ndarray) -> np.ndarray:
    """M_axis applied to the columns of ``vectors``; O(N d D k) instead of O(D^2 k)."""
    vectors = np.asarray(vectors)
    if axis == "z":
        m = magnetic_numbers(lattice)
        return m[:, None] * vectors if vectors.ndim == 2 else m * vectors
    op = spin_component(lattice.spin, axis)
    out = None
    for i in range(lattice.n_sites):
        term = apply_local(op, i, lattice, vectors)
        out = term if out is None else out + term
    return out
