"""Temperature sweeps, field sweeps and (B, T) grids, plus deterministic writers.

Rows are plain dicts whose key order is the column order. Field points are
independent, so they can be spread over a process pool; results come back in
input order, so the worker count never changes the output.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np

from . import thermal
from .models import ModelSpec
from .observables import magnetization_vector, susceptibility_triple
from .thermal import solve
from .witness import complementarity, isotropic_threshold, witness_value

SCHEMA_VERSION = 1

TEMPERATURE_COLUMNS = ("T", "chi_x", "chi_y", "chi_z", "chi_bar", "per_site_chi",
                       "per_site_threshold", "bound", "margin", "entangled")
FIELD_COLUMNS = ("B", "T", "P", "Q", "P_plus_Q", "M_x", "M_y", "M_z")
GRID_COLUMNS = ("B", "T", "P", "Q", "P_plus_Q")


def temperature_rows(model: ModelSpec, temperatures: Iterable[float],
                     spectrum: thermal.Spectrum | None = None) -> list[dict]:
    """One witness row per temperature, all from a single (cached or given) spectrum."""
    lattice = model.lattice
    spec = spectrum if spectrum is not None else solve(model)
    rows = []
    for T in sorted(float(t) for t in temperatures):
        chi = susceptibility_triple(spec, T, lattice)
        report = witness_value(spec, T, lattice)
        rows.append({
            "T": T,
            "chi_x": chi.chi_x,
            "chi_y": chi.chi_y,
            "chi_z": chi.chi_z,
            "chi_bar": chi.chi_bar,
            "per_site_chi": chi.chi_z / lattice.n_sites,
            "per_site_threshold": isotropic_threshold(T, lattice.spin),
            "bound": report.bound,
            "margin": report.margin,
            "entangled": report.entangled,
        })
    return rows


def _field_point(args) -> list[dict]:
    model, B, temperatures, tolerances = args
    if tolerances:
        thermal.set_tolerances(**tolerances)
    point_model = model.with_field(B)
    lattice = point_model.lattice
    spec = solve(point_model)
    rows = []
    for T in temperatures:
        m = magnetization_vector(spec, T, lattice)
        cp = complementarity(spec, T, lattice, B=B)
        rows.append({
            "B": float(B), "T": float(T), "P": cp.P, "Q": cp.Q, "P_plus_Q": cp.total,
            "M_x": m.mx, "M_y": m.my, "M_z": m.mz,
        })
    return rows


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _tolerance_overrides() -> dict:
    return {"degeneracy": thermal.TOLERANCES.degeneracy, "hermiticity": thermal.TOLERANCES.hermiticity}


def field_rows(model: ModelSpec, fields: Iterable[float], T: float, workers: int = 1) -> list[dict]:
    """P, Q and magnetization per field value at fixed temperature."""
    fields = sorted(float(b) for b in fields)
    tol = _tolerance_overrides()
    chunks = _map(_field_point, [(model, B, (float(T),), tol) for B in fields], workers)
    return [row for chunk in chunks for row in chunk]


def grid_rows(model: ModelSpec, fields: Iterable[float], temperatures: Iterable[float],
              workers: int = 1) -> list[dict]:
    """Long-format (B, T) table of P, Q and P + Q; one diagonalization per field."""
    fields = sorted(float(b) for b in fields)
    temps = tuple(sorted(float(t) for t in temperatures))
    tol = _tolerance_overrides()
    chunks = _map(_field_point, [(model, B, temps, tol) for B in fields], workers)
    return [{k: row[k] for k in GRID_COLUMNS} for chunk in chunks for row in chunk]


def format_value(value) -> str:
    """Stable text rendering: 12 significant digits, lowercase booleans."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".12g")
    return str(value)


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        return float(format(float(value), ".12g"))
    if isinstance(value, (int, np.integer)):
        return int(value)
    return value


def render_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in columns])
    return buffer.getvalue()


def render_json(rows: Sequence[dict], columns: Sequence[str], meta: dict | None = None) -> str:
    document = {"schema_version": SCHEMA_VERSION}
    document.update({k: _json_value(v) for k, v in (meta or {}).items()})
    document["columns"] = list(columns)
    document["rows"] = [{c: _json_value(row[c]) for c in columns} for row in rows]
    return json.dumps(document, indent=2) + "\n"


def render(rows: Sequence[dict], columns: Sequence[str], fmt: str, meta: dict | None = None) -> str:
    if fmt == "json":
        return render_json(rows, columns, meta)
    return render_csv(rows, columns)


def model_metadata(model: ModelSpec) -> dict:
    return {
        "kind": model.kind, "n_sites": model.n_sites, "spin": model.spin.s,
        "boundary": model.boundary, "J": model.J, "B": model.B, "field_axis": model.field_axis,
        "pauli_convention": model.pauli_convention,
    }

