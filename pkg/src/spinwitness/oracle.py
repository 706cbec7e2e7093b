"""Closed-form reference results, written from the analytic spectra only.

Nothing here imports the diagonalization path, so agreement with it is an
independent check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import logsumexp

from .spin_algebra import SpinLength


@dataclass(frozen=True)
class DimerThermo:
    """Thermodynamics of one dimer J sigma.sigma + B (sigma_z^1 + sigma_z^2).

    Magnetizations and variances are in spin-operator units (M = (sigma^1 + sigma^2)/2),
    with N = 2 and s = 1/2 so that N*s = 1.
    """

    T: float
    B: float
    J: float
    logZ: float
    m_z: float
    var_x: float
    var_y: float
    var_z: float
    chi_bar_times_T: float
    P: float
    Q: float

    @property
    def chi_bar(self) -> float:
        return self.chi_bar_times_T / self.T


def dimer_levels(J: float, B: float) -> dict[str, float]:
    """Singlet and triplet (m = +1, 0, -1) energies in the Pauli convention."""
    return {"singlet": -3.0 * J, "plus": J + 2.0 * B, "zero": J, "minus": J - 2.0 * B}


def dimer_closed_form(J: float, B: float, T: float) -> DimerThermo:
    if T <= 0:
        raise ValueError(f"closed form needs T > 0, got {T}")
    levels = dimer_levels(J, B)
    names = list(levels)
    log_w = np.array([-levels[k] / T for k in names])
    logZ = float(logsumexp(log_w))
    p = dict(zip(names, np.exp(log_w - logZ)))
    m_z = p["plus"] - p["minus"]
    var_z = p["plus"] + p["minus"] - m_z**2
    # |1,m>: <M_x^2> = <M_y^2> = (2 - m^2)/2, zero mean; singlet contributes nothing
    var_x = 0.5 * p["plus"] + p["zero"] + 0.5 * p["minus"]
    var_y = var_x
    chi_t = var_x + var_y + var_z
    ns = 1.0
    return DimerThermo(
        T=T, B=B, J=J, logZ=logZ, m_z=m_z, var_x=var_x, var_y=var_y, var_z=var_z,
        chi_bar_times_T=chi_t, P=m_z**2 / ns**2, Q=1.0 - chi_t / ns,
    )


def dimer_crossing_field(J: float) -> float:
    """Field where the singlet (-3J) and |--> (J - 2B) levels cross."""
    return 2.0 * J


def dimer_critical_temperature(J: float = 1.0, lo: float = 0.1, hi: float = 100.0) -> float:
    """Zero-field T where T * chi_bar of one dimer reaches N*s = 1.

    Solved numerically on the closed form; analytically 4J / ln 3.
    """
    return brentq(lambda T: dimer_closed_form(J, 0.0, T).chi_bar_times_T - 1.0, lo * J, hi * J, xtol=1e-14)


def curie_law(spin: SpinLength, T: float) -> float:
    """Free-spin zero-field susceptibility per spin along one axis, s(s+1)/(3T)."""
    s = spin.s
    return s * (s + 1) / (3.0 * T)


def two_level_magnetization(B: float, T: float) -> float:
    """<S_z> for H = B S_z at spin 1/2."""
    if T == 0:
        return -0.5 * np.sign(B)
    return -0.5 * np.tanh(B / (2.0 * T))
