"""Acceptance criteria 1-10, each at its stated tolerance and runtime budget.

Every test prints one ``ACCEPTANCE <n> PASS|FAIL`` line; the lines are also
collected and repeated in the terminal summary (see conftest.py). Run with

    pytest tests/test_acceptance.py -v

or ``python3 tests/test_acceptance.py``.
"""

import sys
import time

import numpy as np
import pytest

from spinwitness.cli import main
from spinwitness.models import ModelSpec
from spinwitness.observables import derivative_susceptibility, fluctuation_susceptibility
from spinwitness.spin_algebra import (
    AXES,
    LatticeSpec,
    SpinLength,
    embed,
    magnetic_numbers,
    spin_matrices,
    total_component,
)
from spinwitness.sweeps import field_rows, grid_rows, temperature_rows
from spinwitness.validate import check_dimer_oracle, check_m2_inequality, check_separable_bound
from spinwitness.witness import concurrence_threshold, critical_temperature, ground_state_crossing

ACCEPTANCE_LINES: list[str] = []

# Witness T_c of the N=12 chain, shared between criteria 4 and 8.
_SHARED: dict[str, float] = {}


def record(number: int, title: str, ok: bool, detail: str, seconds: float, budget: float | None = None) -> None:
    within = budget is None or seconds < budget
    timing = f"{seconds:.1f}s" + (f" < {budget:.0f}s" if budget is not None else "")
    status = "PASS" if ok and within else "FAIL"
    line = f"ACCEPTANCE {number:>2} {status}  {title}: {detail} [{timing}]"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line
    assert within, f"{line} (runtime budget exceeded)"


def test_01_dimer_oracle_equivalence():
    start = time.perf_counter()
    result = check_dimer_oracle(tol=1e-10)
    record(1, "dimer oracle equivalence",
           result.passed and result.samples == 30,
           f"{result.samples} points, worst abs err {result.worst:.2e} (tol 1e-10)",
           time.perf_counter() - start, 5)


def test_02_dimer_field_sweep():
    start = time.perf_counter()
    model = ModelSpec("dimer_chain", 4, J=1.0)
    rows = field_rows(model, np.linspace(0.0, 4.0, 200), T=0.1)
    q0, p4 = rows[0]["Q"], rows[-1]["P"]
    worst = max(r["P_plus_Q"] for r in rows)
    crossing = ground_state_crossing(model, 1.0, 3.0, tol=1e-10)
    ok = q0 >= 0.99 and p4 >= 0.99 and worst <= 1 + 1e-9 and abs(crossing - 2.0) <= 1e-6
    record(2, "dimer field sweep at T=0.1J", ok,
           f"Q(0)={q0:.6f} P(4J)={p4:.6f} max(P+Q)={worst:.12f} crossing B/J={crossing:.9f}",
           time.perf_counter() - start, 30)


def test_03_dimer_grid():
    start = time.perf_counter()
    model = ModelSpec("dimer_chain", 4, J=1.0)
    rows = grid_rows(model, np.linspace(0.0, 4.0, 100), np.linspace(0.05, 2.0, 100), workers=4)
    worst = max(r["P_plus_Q"] for r in rows)
    record(3, "dimer (B, T) grid 100x100", len(rows) == 10_000 and worst <= 1 + 1e-9,
           f"{len(rows)} points, max(P+Q)={worst:.12f}", time.perf_counter() - start, 120)


def _chain_check(timed, window, threshold_factor):
    tc = critical_temperature(timed.model, 1.0, 3.0, tol=1e-4, spectrum=timed.spectrum)
    # per-site chi below s/(3T) exactly where the witness flags entanglement
    temps = np.linspace(0.1, 3.0, 150)
    rows = temperature_rows(timed.model, temps, spectrum=timed.spectrum)
    mismatches = sum((r["per_site_chi"] < r["per_site_threshold"]) != r["entangled"] for r in rows)
    assert all(abs(r["per_site_threshold"] - threshold_factor / r["T"]) < 1e-15 for r in rows)
    return tc, mismatches, window[0] <= tc <= window[1]


@pytest.mark.slow
def test_04_chain_critical_temperatures(chain12, chain8_spin1):
    start = time.perf_counter()
    tc_half, mis_half, ok_half = _chain_check(chain12, (1.4, 1.8), 1 / 6)
    tc_one, mis_one, ok_one = _chain_check(chain8_spin1, (1.7, 2.3), 1 / 3)
    _SHARED["tc12"] = tc_half
    seconds = time.perf_counter() - start + chain12.seconds + chain8_spin1.seconds
    ok = ok_half and ok_one and mis_half == 0 and mis_one == 0
    record(4, "chain witness crossing", ok,
           f"N=12 s=1/2 T_c={tc_half:.4f}J in [1.4,1.8]; N=8 s=1 T_c={tc_one:.4f}J in [1.7,2.3]; "
           f"curve/flag mismatches {mis_half}+{mis_one}",
           seconds, 600)


def test_05_separable_bound():
    start = time.perf_counter()
    result = check_separable_bound(np.random.SeedSequence(20240611), "acceptance", 10_000)
    record(5, "separability bound", result.passed and result.samples == 40_000,
           f"{result.samples} mixtures over 4 (N,s) cases, min(varsum - Ns)={result.worst:.2e} (tol -1e-9)",
           time.perf_counter() - start, 120)


def test_06_m2_inequality():
    start = time.perf_counter()
    result = check_m2_inequality(np.random.SeedSequence(20240612), "acceptance", 10_000, 1_000)
    record(6, "<M^2> inequality", result.passed and result.samples == 11_000,
           f"{result.samples} states, min margin={result.worst:.4f} (tol -1e-9)",
           time.perf_counter() - start, 60)


def test_07_susceptibility_consistency(chain8):
    start = time.perf_counter()
    worst = 0.0
    for T in (0.5, 1.0, 2.0):
        for axis in ("x", "z"):
            fluct = fluctuation_susceptibility(chain8.spectrum, T, chain8.lattice, axis)
            deriv = derivative_susceptibility(chain8.model, T, axis, step=1e-3)
            worst = max(worst, abs(deriv - fluct) / fluct)
    record(7, "fluctuation vs derivative susceptibility", worst < 1e-4,
           f"N=8 s=1/2, T in {{0.5,1,2}}J, worst rel diff {worst:.2e} (tol 1e-4)",
           time.perf_counter() - start + chain8.seconds, 60)


@pytest.mark.slow
def test_08_concurrence_threshold(chain12):
    start = time.perf_counter()
    t_conc = concurrence_threshold(chain12.spectrum, chain12.lattice, 0, 1, 0.3, 1.5, tol=1e-5)
    tc = _SHARED.get("tc12")
    if tc is None:
        tc = critical_temperature(chain12.model, 1.0, 3.0, tol=1e-4, spectrum=chain12.spectrum)
    ok = abs(t_conc - 0.795) <= 0.2 * 0.795 and tc > t_conc
    record(8, "nearest-neighbour concurrence threshold", ok,
           f"T_C={t_conc:.4f}J (0.795J +/-20%), witness T_c={tc:.4f}J > T_C",
           time.perf_counter() - start + chain12.seconds, 300)


def test_09_spin_algebra():
    start = time.perf_counter()
    worst = {"casimir": 0.0, "commutator": 0.0, "cross_site": 0.0}
    extremes_ok = True
    for two_s in (1, 2, 3):
        spin = SpinLength(two_s)
        s = spin.s
        ops = dict(zip(AXES, spin_matrices(spin)))
        casimir = sum(ops[a] @ ops[a] for a in AXES)
        worst["casimir"] = max(worst["casimir"], np.max(np.abs(casimir - s * (s + 1) * np.eye(spin.dim))))
        for a, b, c in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")):
            comm = ops[a] @ ops[b] - ops[b] @ ops[a]
            worst["commutator"] = max(worst["commutator"], np.max(np.abs(comm - 1j * ops[c])))
        for n in range(1, 5):
            lattice = LatticeSpec(n, spin)
            if n >= 2:
                for a in AXES:
                    for b in AXES:
                        x, y = embed(ops[a], 0, lattice), embed(ops[b], n - 1, lattice)
                        worst["cross_site"] = max(worst["cross_site"], np.max(np.abs(x @ y - y @ x)))
            # total Casimir eigenvalues j(j+1) with j <= Ns
            total = sum(total_component(a, lattice) @ total_component(a, lattice) for a in AXES)
            ev = np.linalg.eigvalsh(total)
            j = (-1 + np.sqrt(1 + 4 * np.clip(ev, 0, None))) / 2
            extremes_ok &= bool(np.all(np.abs(2 * j - np.round(2 * j)) < 1e-8) and j.max() <= n * s + 1e-8)
            mz = magnetic_numbers(lattice)
            values, counts = np.unique(np.round(mz, 9), return_counts=True)
            extremes_ok &= bool(np.allclose(values, np.arange(-n * s, n * s + 0.5, 1.0))
                                and counts[0] == 1 and counts[-1] == 1)
    ok = worst["casimir"] < 1e-12 and worst["commutator"] < 1e-12 and worst["cross_site"] == 0 and extremes_ok
    record(9, "spin algebra properties", ok,
           f"s in {{1/2,1,3/2}}, N<=4: casimir {worst['casimir']:.1e}, commutators {worst['commutator']:.1e}, "
           f"cross-site {worst['cross_site']:.1e}, extremes/multiplets {'ok' if extremes_ok else 'broken'}",
           time.perf_counter() - start, 30)


def test_10_validate_determinism(tmp_path):
    start = time.perf_counter()
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    codes = [main(["validate", "--seed", "1234", "--out", str(p)]) for p in (first, second)]
    identical = first.read_bytes() == second.read_bytes()
    record(10, "validate determinism", identical and codes == [0, 0],
           f"seed 1234, exit codes {codes}, byte-identical={identical}", time.perf_counter() - start)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
