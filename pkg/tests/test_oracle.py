import numpy as np
import pytest

from spinwitness.models import ModelSpec, build_hamiltonian
from spinwitness.observables import magnetization, thermal_variance
from spinwitness.oracle import (
    curie_law,
    dimer_closed_form,
    dimer_critical_temperature,
    dimer_crossing_field,
    dimer_levels,
    two_level_magnetization,
)
from spinwitness.spin_algebra import AXES, SpinLength
from spinwitness.thermal import diagonalize, log_partition_function
from spinwitness.validate import dimer_numeric
from spinwitness.witness import critical_temperature, ground_state_crossing

FIELDS = (0.0, 0.5, 1.5, 2.0, 3.0)
TEMPS = (0.05, 0.1, 0.3, 1.0, 2.0, 5.0)


@pytest.mark.parametrize("B", FIELDS)
@pytest.mark.parametrize("T", TEMPS)
def test_dimer_oracle_matches_diagonalization(B, T):
    exact = dimer_closed_form(1.0, B, T)
    numeric = dimer_numeric(1.0, B, T)
    for key, value in numeric.items():
        assert abs(value - getattr(exact, key)) < 1e-10, key


def test_dimer_levels_match_spectrum():
    for J, B in ((1.0, 0.0), (1.0, 1.3), (0.7, 3.0)):
        spec = diagonalize(build_hamiltonian(ModelSpec("dimer_chain", 2, J=J, B=B)))
        np.testing.assert_allclose(spec.energies, sorted(dimer_levels(J, B).values()), atol=1e-12)


@pytest.mark.parametrize("B, T", [(0.0, 0.5), (1.0, 1.0), (3.0, 0.2)])
def test_three_dimers_are_extensive(B, T):
    model = ModelSpec("dimer_chain", 6, B=B)
    spec = diagonalize(build_hamiltonian(model))
    one = dimer_closed_form(1.0, B, T)
    assert abs(log_partition_function(spec, T) - 3 * one.logZ) < 1e-10
    assert abs(magnetization(spec, T, model.lattice, "z") - 3 * one.m_z) < 1e-10
    for axis in AXES:
        assert abs(thermal_variance(spec, T, model.lattice, axis) - 3 * getattr(one, f"var_{axis}")) < 1e-10


def test_dimer_limits():
    cold = dimer_closed_form(1.0, 0.0, 0.02)
    assert cold.chi_bar_times_T < 1e-12 and cold.P == 0
    assert abs(cold.Q - 1) < 1e-12
    hot = dimer_closed_form(1.0, 0.0, 1e6)
    # free spins: Var per axis = 2 * 1/4
    assert abs(hot.var_z - 0.5) < 1e-5
    saturated = dimer_closed_form(1.0, 10.0, 0.05)
    assert abs(saturated.m_z + 1) < 1e-12
    assert abs(saturated.P - 1) < 1e-12
    assert abs(saturated.Q) < 1e-12


def test_dimer_critical_temperature_closed_form():
    assert abs(dimer_critical_temperature(1.0) - 4 / np.log(3)) < 1e-10
    assert abs(dimer_critical_temperature(2.5) - 10 / np.log(3)) < 1e-9
    model = ModelSpec("dimer_chain", 2)
    assert abs(critical_temperature(model, 1.0, 10.0, 1e-9) - 4 / np.log(3)) < 1e-8


def test_dimer_crossing_field():
    assert dimer_crossing_field(1.0) == 2.0
    model = ModelSpec("dimer_chain", 2)
    assert abs(ground_state_crossing(model, 1.0, 3.0, 1e-10) - 2.0) < 1e-8


@pytest.mark.parametrize("two_s", [1, 2, 3])
def test_curie_law(two_s):
    spin = SpinLength(two_s)
    assert curie_law(spin, 2.0) == pytest.approx(spin.s * (spin.s + 1) / 6)


def test_two_level_magnetization():
    assert two_level_magnetization(0.0, 1.0) == 0.0
    assert two_level_magnetization(1.0, 0) == -0.5
    model = ModelSpec("heisenberg_general", 1, B=0.8, couplings=())
    spec = diagonalize(build_hamiltonian(model))
    assert abs(magnetization(spec, 0.3, model.lattice, "z") - two_level_magnetization(0.8, 0.3)) < 1e-14
