"""Hamiltonian builders: isotropic Heisenberg lattices, xxx chains, dimer chains.

Units: hbar = k = 1, energies and temperatures in units of J, g*mu_B absorbed
into B. J > 0 is antiferromagnetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import LatticeError
from .spin_algebra import (
    AXES,
    DEFAULT_MAX_DIM,
    LatticeSpec,
    SpinLength,
    ladder_matrices,
    magnetic_numbers,
    site_product,
    spin_component,
)

KINDS = ("heisenberg_general", "xxx_chain", "dimer_chain")
BOUNDARIES = ("open", "periodic")


def build_heisenberg(lattice: LatticeSpec) -> np.ndarray:
    """H = sum_(i,j) J_ij s^i . s^j over the lattice couplings (real symmetric)."""
    if not lattice.couplings:
        raise LatticeError("build_heisenberg needs at least one coupling")
    sp, sm, sz = ladder_matrices(lattice.spin)
    dim = lattice.hilbert_dim
    h = np.zeros((dim, dim))
    for i, j, J in lattice.couplings:
        if J == 0.0:
            continue
        # s.s = SzSz + (S+S- + S-S+)/2 keeps everything real
        h += J * site_product({i: sz, j: sz}, lattice)
        h += 0.5 * J * site_product({i: sp, j: sm}, lattice)
        h += 0.5 * J * site_product({i: sm, j: sp}, lattice)
    return h


def chain_couplings(n: int, J: float, boundary: str) -> tuple[tuple[int, int, float], ...]:
    if boundary not in BOUNDARIES:
        raise LatticeError(f"boundary must be one of {BOUNDARIES}, got {boundary!r}")
    bonds = [(i, i + 1, J) for i in range(n - 1)]
    if boundary == "periodic" and n > 2:
        bonds.append((0, n - 1, J))
    return tuple(bonds)


def chain_lattice(n: int, spin: SpinLength, J: float = 1.0, boundary: str = "periodic",
                  max_dim: int = DEFAULT_MAX_DIM) -> LatticeSpec:
    if n < 2:
        raise LatticeError(f"an xxx chain needs at least 2 sites, got {n}")
    return LatticeSpec(n, spin, chain_couplings(n, J, boundary), max_dim)


def build_xxx_chain(n: int, spin: SpinLength, J: float = 1.0, boundary: str = "periodic") -> np.ndarray:
    """Nearest-neighbour isotropic chain, with the (n-1, 0) bond when periodic.

    For n = 2 the periodic and open chains coincide (a single bond).
    """
    return build_heisenberg(chain_lattice(n, spin, J, boundary))


def dimer_lattice(n_dimers: int, J: float = 1.0, pauli_convention: bool = True,
                  max_dim: int = DEFAULT_MAX_DIM) -> LatticeSpec:
    """Spin-1/2 lattice of uncoupled pairs (2j, 2j+1); couplings in spin-operator units."""
    if n_dimers < 1:
        raise LatticeError(f"n_dimers must be at least 1, got {n_dimers}")
    scale = 4.0 if pauli_convention else 1.0
    couplings = tuple((2 * k, 2 * k + 1, scale * J) for k in range(n_dimers))
    return LatticeSpec(2 * n_dimers, SpinLength(1), couplings, max_dim)


def build_dimer_chain(n_dimers: int, J: float = 1.0, B: float = 0.0,
                      pauli_convention: bool = True) -> np.ndarray:
    """H = J sum_j sigma^{2j} . sigma^{2j+1} + B sum_j sigma_z^j.

    With ``pauli_convention`` the operators are Pauli matrices (sigma = 2s);
    otherwise the same expression is read with spin operators.
    """
    lattice = dimer_lattice(n_dimers, J, pauli_convention)
    h = build_heisenberg(lattice) if J != 0.0 else np.zeros((lattice.hilbert_dim,) * 2)
    field_scale = 2.0 if pauli_convention else 1.0
    return add_zeeman(h, lattice, "z", field_scale * B)


def add_zeeman(H: np.ndarray, lattice: LatticeSpec, axis: str, B: float) -> np.ndarray:
    """Return H + B * M_axis with M_axis in spin-operator units."""
    H = np.asarray(H)
    if H.shape != (lattice.hilbert_dim, lattice.hilbert_dim):
        raise LatticeError(f"Hamiltonian shape {H.shape} does not match lattice dimension")
    if axis not in AXES:
        raise LatticeError(f"axis must be one of {AXES}, got {axis!r}")
    if B == 0.0:
        return H.copy()
    if axis == "z":
        out = H.copy()
        out[np.diag_indices_from(out)] += B * magnetic_numbers(lattice)
        return out
    local = spin_component(lattice.spin, axis)
    out = H.astype(np.result_type(H, local), copy=True)
    for i in range(lattice.n_sites):
        out += B * site_product({i: local}, lattice)
    return out


@dataclass(frozen=True)
class ModelSpec:
    """Declarative model description; the CLI config deserializes into this.

    ``B`` is the uniform field along ``field_axis``. For the dimer chain it
    multiplies sigma_z when ``pauli_convention`` is set, as in the dimer
    Hamiltonian; for the other kinds it multiplies the spin operator.
    ``couplings`` is only read for ``heisenberg_general``.
    """

    kind: str
    n_sites: int
    two_s: int = 1
    boundary: str = "periodic"
    J: float = 1.0
    B: float = 0.0
    field_axis: str = "z"
    pauli_convention: bool = True
    couplings: tuple[tuple[int, int, float], ...] = ()
    max_dim: int = field(default=DEFAULT_MAX_DIM, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise LatticeError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.field_axis not in AXES:
            raise LatticeError(f"field_axis must be one of {AXES}, got {self.field_axis!r}")
        if self.kind == "dimer_chain":
            if self.n_sites % 2 or self.n_sites < 2:
                raise LatticeError("dimer_chain requires an even number of sites")
            if self.two_s != 1:
                raise LatticeError("dimer_chain requires spin 1/2")
        if self.kind == "xxx_chain":
            if self.n_sites < 2:
                raise LatticeError("xxx_chain requires n_sites >= 2")
            if self.boundary not in BOUNDARIES:
                raise LatticeError(f"boundary must be one of {BOUNDARIES}")
        object.__setattr__(
            self, "couplings", tuple((int(i), int(j), float(J)) for i, j, J in self.couplings)
        )
        # validates geometry and dimension cap eagerly
        self.lattice

    @property
    def spin(self) -> SpinLength:
        return SpinLength(self.two_s)

    @property
    def n_dimers(self) -> int:
        return self.n_sites // 2

    @property
    def lattice(self) -> LatticeSpec:
        """Lattice whose couplings reproduce the exchange part in spin-operator units."""
        if self.kind == "xxx_chain":
            return chain_lattice(self.n_sites, self.spin, self.J, self.boundary, self.max_dim)
        if self.kind == "dimer_chain":
            return dimer_lattice(self.n_dimers, self.J, self.pauli_convention, self.max_dim)
        return LatticeSpec(self.n_sites, self.spin, self.couplings, self.max_dim)

    @property
    def zeeman_scale(self) -> float:
        """Factor converting ``B`` into a coefficient of M_axis (spin units)."""
        return 2.0 if (self.kind == "dimer_chain" and self.pauli_convention) else 1.0

    @property
    def isotropic(self) -> bool:
        return self.B == 0.0

    def with_field(self, value: float) -> "ModelSpec":
        return replace(self, B=float(value))


def build_hamiltonian(model: ModelSpec, probe_axis: str | None = None, probe: float = 0.0) -> np.ndarray:
    """Full Hamiltonian of ``model`` plus an optional probe term probe * M_probe_axis."""
    lattice = model.lattice
    if any(J != 0.0 for _, _, J in lattice.couplings):
        h = build_heisenberg(lattice)
    else:
        h = np.zeros((lattice.hilbert_dim,) * 2)
    h = add_zeeman(h, lattice, model.field_axis, model.zeeman_scale * model.B)
    if probe_axis is not None and probe != 0.0:
        h = add_zeeman(h, lattice, probe_axis, probe)
    return h
