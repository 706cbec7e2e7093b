"""Susceptibility entanglement witness, critical temperatures and complementarity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .errors import NoCrossingError
from .models import ModelSpec, build_hamiltonian
from .observables import (
    concurrence_margin,
    magnetization,
    magnetization_vector,
    thermal_reduced_density_matrix,
    thermal_variance,
)
from .spin_algebra import AXES, LatticeSpec, SpinLength
from .states import state_magnetization, total_components, expectation, variance_sum
from .thermal import Spectrum, diagonalize, solve


@dataclass(frozen=True)
class WitnessReport:
    """chi_bar against the separable bound N*s/T; negative margin means entangled."""

    T: float
    chi_bar: float
    bound: float
    margin: float
    entangled: bool


@dataclass(frozen=True)
class ComplementarityPoint:
    P: float
    Q: float
    T: float
    B: float = 0.0

    @property
    def total(self) -> float:
        return self.P + self.Q


def _report(T: float, chi_bar: float, ns: float) -> WitnessReport:
    bound = ns / T
    margin = chi_bar - bound
    return WitnessReport(T=float(T), chi_bar=float(chi_bar), bound=bound, margin=margin, entangled=bool(margin < 0))


def thermal_variance_sum(spec: Spectrum, T: float, lattice: LatticeSpec) -> float:
    return sum(thermal_variance(spec, T, lattice, a) for a in AXES)


def witness_value(spec: Spectrum, T: float, lattice: LatticeSpec) -> WitnessReport:
    if T <= 0:
        raise ValueError(f"witness needs T > 0, got {T}")
    return _report(T, thermal_variance_sum(spec, T, lattice) / T, lattice.total_spin)


def state_witness(state: np.ndarray, lattice: LatticeSpec, T: float = 1.0) -> WitnessReport:
    """Witness for an explicit state, reading its variance sum as T * chi_bar."""
    return _report(T, variance_sum(state, lattice) / T, lattice.total_spin)


def isotropic_criterion(chi_z: float, T: float, n_sites: int, spin: SpinLength) -> bool:
    """chi_z < N s / (3T); pass n_sites=1 for per-site susceptibilities."""
    if T <= 0:
        raise ValueError(f"criterion needs T > 0, got {T}")
    return bool(chi_z < n_sites * spin.s / (3.0 * T))


def isotropic_threshold(T: float, spin: SpinLength) -> float:
    """Per-site threshold s/(3T): 1/(6T) at s = 1/2, 1/(3T) at s = 1."""
    return spin.s / (3.0 * T)


def _bisect(f, lo: float, hi: float, tol: float, what: str) -> float:
    f_lo, f_hi = f(lo), f(hi)
    if np.sign(f_lo) * np.sign(f_hi) > 0:
        raise NoCrossingError(f"no crossing in bracket [{lo}, {hi}] for {what}")
    return bisect(f, lo, hi, xtol=tol)


def critical_temperature(model: ModelSpec, T_lo: float, T_hi: float, tol: float = 1e-4,
                         spectrum: Spectrum | None = None) -> float:
    """Temperature where chi_bar crosses N*s/T, located by bisection.

    Every evaluation reuses one spectrum. The sign test uses T * margin,
    which has the same sign as the margin.
    """
    if not 0 < T_lo < T_hi:
        raise ValueError(f"need 0 < T_lo < T_hi, got [{T_lo}, {T_hi}]")
    lattice = model.lattice
    spec = spectrum if spectrum is not None else solve(model)
    ns = lattice.total_spin
    return _bisect(lambda T: thermal_variance_sum(spec, T, lattice) - ns, T_lo, T_hi, tol,
                   "the susceptibility witness")


def complementarity(source, T: float, lattice: LatticeSpec, B: float = 0.0) -> ComplementarityPoint:
    """P = <M>^2/(Ns)^2 and Q = 1 - T chi_bar/(Ns) for a spectrum (thermal) or explicit state."""
    ns = lattice.total_spin
    if isinstance(source, Spectrum):
        m2 = magnetization_vector(source, T, lattice).squared_norm
        var = thermal_variance_sum(source, T, lattice)
    else:
        comps = total_components(lattice)
        m2 = float(np.sum(state_magnetization(source, lattice, comps) ** 2))
        var = variance_sum(source, lattice, comps)
    return ComplementarityPoint(P=m2 / ns**2, Q=1.0 - var / ns, T=float(T), B=float(B))


def m2_inequality_margin(state: np.ndarray, lattice: LatticeSpec) -> float:
    """<M^2> - ((Ns + 1)/(Ns)) <M>^2, non-negative for every state."""
    comps = total_components(lattice)
    ns = lattice.total_spin
    m_sq = sum(expectation(state, comps[a] @ comps[a]) for a in AXES)
    mean_sq = float(np.sum(state_magnetization(state, lattice, comps) ** 2))
    return m_sq - (ns + 1.0) / ns * mean_sq


def ground_state_crossing(model: ModelSpec, B_lo: float, B_hi: float, tol: float = 1e-9) -> float:
    """Field where the ground-state magnetization along the field axis jumps.

    Each evaluation rebuilds and diagonalizes the model at the trial field
    and reads the T = 0 magnetization (uniform over a degenerate ground
    manifold). Bisection targets the midpoint between the bracket values.
    """
    lattice = model.lattice
    axis = model.field_axis

    def ground_m(B):
        return magnetization(diagonalize(build_hamiltonian(model.with_field(B))), 0.0, lattice, axis)

    mid = 0.5 * (ground_m(B_lo) + ground_m(B_hi))
    return _bisect(lambda B: ground_m(B) - mid, B_lo, B_hi, tol, "the ground-state level crossing")


def concurrence_threshold(spec: Spectrum, lattice: LatticeSpec, i: int, j: int,
                          T_lo: float, T_hi: float, tol: float = 1e-4) -> float:
    """Temperature above which the thermal concurrence of sites (i, j) vanishes."""
    keep = sorted((i, j))
    return _bisect(
        lambda T: concurrence_margin(thermal_reduced_density_matrix(spec, T, lattice, keep)),
        T_lo, T_hi, tol, f"the concurrence of sites {keep}",
    )
