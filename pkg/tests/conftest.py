import time

import numpy as np
import pytest

from spinwitness.models import ModelSpec, build_hamiltonian
from spinwitness.spin_algebra import LatticeSpec, SpinLength
from spinwitness.thermal import diagonalize

HALF, ONE, THREE_HALVES = SpinLength(1), SpinLength(2), SpinLength(3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


class _Timed:
    """Spectrum plus the wall time its diagonalization took."""

    def __init__(self, model):
        self.model = model
        start = time.perf_counter()
        self.spectrum = diagonalize(build_hamiltonian(model))
        self.seconds = time.perf_counter() - start

    @property
    def lattice(self) -> LatticeSpec:
        return self.model.lattice


@pytest.fixture(scope="session")
def chain12():
    """Periodic s=1/2 xxx chain, N=12 (dimension 4096)."""
    return _Timed(ModelSpec("xxx_chain", 12, 1, "periodic"))


@pytest.fixture(scope="session")
def chain8_spin1():
    """Periodic s=1 xxx chain, N=8 (dimension 6561)."""
    return _Timed(ModelSpec("xxx_chain", 8, 2, "periodic"))


@pytest.fixture(scope="session")
def chain8():
    """Periodic s=1/2 xxx chain, N=8 (dimension 256)."""
    return _Timed(ModelSpec("xxx_chain", 8, 1, "periodic"))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
