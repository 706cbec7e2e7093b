"""Thermal entanglement witness from magnetic susceptibility, by exact diagonalization."""

from .errors import (
    ConfigError,
    LatticeError,
    NoCrossingError,
    NumericalHealthError,
    ResourceCapError,
    SpinWitnessError,
)
from .models import ModelSpec, build_dimer_chain, build_hamiltonian, build_heisenberg, build_xxx_chain
from .spin_algebra import LatticeSpec, SpinLength, embed, spin_matrices, total_component
from .thermal import Spectrum, diagonalize, solve
from .witness import (
    ComplementarityPoint,
    WitnessReport,
    complementarity,
    critical_temperature,
    witness_value,
)

__version__ = "0.1.0"
