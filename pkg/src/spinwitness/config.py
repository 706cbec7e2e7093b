"""Run configuration: INI-style sections of key = value pairs.

One file describes one reproducible run. Recognized sections and keys::

    [model]        kind, n_sites | n_dimers, spin (1/2, 1, 3/2 ...) | two_s,
                   boundary, J, B, field_axis, pauli_convention,
                   couplings (heisenberg_general: "i-j:J, i-j:J, ...")
    [temperature]  lo, hi, points, spacing (linear | log)
    [field]        lo, hi, points, T
    [critical]     T_lo, T_hi, tol
    [output]       path, format (csv | json)
    [run]          seed, workers
    [tolerances]   degeneracy, hermiticity, max_dim

Keys are case-sensitive. Unknown sections or keys are rejected so typos
surface as errors instead of silently falling back to defaults.
"""

from __future__ import annotations

import configparser
import re
import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import ConfigError, LatticeError, ResourceCapError
from .models import ModelSpec
from .spin_algebra import DEFAULT_MAX_DIM
from .thermal import DEGENERACY_TOL, HERMITICITY_TOL

SCHEMA = {
    "model": {"kind", "n_sites", "n_dimers", "spin", "two_s", "boundary", "J", "B",
              "field_axis", "pauli_convention", "couplings"},
    "temperature": {"lo", "hi", "points", "spacing"},
    "field": {"lo", "hi", "points", "T"},
    "critical": {"T_lo", "T_hi", "tol"},
    "output": {"path", "format"},
    "run": {"seed", "workers"},
    "tolerances": {"degeneracy", "hermiticity", "max_dim"},
}

SWEEPS = ("temperature", "field", "grid")


@dataclass(frozen=True)
class TemperatureRange:
    lo: float = 0.05
    hi: float = 3.0
    points: int = 100
    spacing: str = "linear"

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.points)
        return np.linspace(self.lo, self.hi, self.points)


@dataclass(frozen=True)
class FieldRange:
    lo: float = 0.0
    hi: float = 4.0
    points: int = 100
    T: float = 0.1

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)


@dataclass(frozen=True)
class CriticalBracket:
    T_lo: float = 0.5
    T_hi: float = 3.0
    tol: float = 1e-4


@dataclass(frozen=True)
class RunConfig:
    model: ModelSpec
    temperature: TemperatureRange = TemperatureRange()
    field: FieldRange = FieldRange()
    critical: CriticalBracket = CriticalBracket()
    output_path: str | None = None
    output_format: str = "csv"
    seed: int = 0
    workers: int = 1
    tolerances: dict = dataclasses.field(default_factory=lambda: {
        "degeneracy": DEGENERACY_TOL, "hermiticity": HERMITICITY_TOL, "max_dim": DEFAULT_MAX_DIM,
    })
    source: str = "<config>"


class _Reader:
    """Typed access to a parsed config with file:line diagnostics."""

    def __init__(self, parser: configparser.ConfigParser, text: str, source: str):
        self.parser = parser
        self.lines = text.splitlines()
        self.source = source

    def line_of(self, section: str, key: str | None = None) -> int | None:
        in_section = False
        for number, line in enumerate(self.lines, 1):
            stripped = line.strip()
            header = re.fullmatch(r"\[\s*(.+?)\s*\]", stripped)
            if header:
                in_section = header.group(1) == section
                if in_section and key is None:
                    return number
                continue
            if in_section and key is not None and re.match(rf"{re.escape(key)}\s*[=:]", stripped):
                return number
        return None

    def error(self, section: str, key: str | None, message: str) -> ConfigError:
        line = self.line_of(section, key)
        where = f"{self.source}:{line}" if line else self.source
        field_name = f"[{section}] {key}" if key else f"[{section}]"
        return ConfigError(f"{where}: {field_name}: {message}")

    def has(self, section: str, key: str) -> bool:
        return self.parser.has_option(section, key)

    def get(self, section: str, key: str, convert, default=None):
        if not self.has(section, key):
            return default
        raw = self.parser.get(section, key).strip()
        try:
            return convert(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise self.error(section, key, f"cannot parse {raw!r}: {exc}") from None


def _bool(raw: str) -> bool:
    lowered = raw.lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ValueError("expected true/false")


def _spin(raw: str) -> int:
    two_s = Fraction(raw) * 2
    if two_s.denominator != 1 or two_s < 1:
        raise ValueError("spin must be a positive multiple of 1/2")
    return int(two_s)


def _couplings(raw: str) -> tuple[tuple[int, int, float], ...]:
    out = []
    for item in filter(None, (part.strip() for part in raw.split(","))):
        match = re.fullmatch(r"(\d+)\s*-\s*(\d+)\s*:\s*(\S+)", item)
        if not match:
            raise ValueError(f"coupling {item!r} is not of the form i-j:J")
        i, j = sorted((int(match.group(1)), int(match.group(2))))
        out.append((i, j, float(match.group(3))))
    return tuple(out)


def _choice(*options):
    def convert(raw):
        if raw not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return raw
    return convert


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """Parse and validate a configuration; every problem raises ConfigError."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from None
    r = _Reader(parser, text, source)

    for section in parser.sections():
        if section not in SCHEMA:
            raise r.error(section, None, f"unknown section; expected one of {', '.join(SCHEMA)}")
        for key in parser.options(section):
            if key not in SCHEMA[section]:
                raise r.error(section, key, "unknown key")
    if not parser.has_section("model"):
        raise ConfigError(f"{source}: missing [model] section")

    tolerances = {
        "degeneracy": r.get("tolerances", "degeneracy", float, DEGENERACY_TOL),
        "hermiticity": r.get("tolerances", "hermiticity", float, HERMITICITY_TOL),
        "max_dim": r.get("tolerances", "max_dim", int, DEFAULT_MAX_DIM),
    }

    kind = r.get("model", "kind", _choice("heisenberg_general", "xxx_chain", "dimer_chain"))
    if kind is None:
        raise r.error("model", None, "missing key 'kind'")
    n_sites = r.get("model", "n_sites", int)
    n_dimers = r.get("model", "n_dimers", int)
    if kind == "dimer_chain" and n_dimers is not None:
        if n_sites is not None and n_sites != 2 * n_dimers:
            raise r.error("model", "n_dimers", "inconsistent with n_sites")
        n_sites = 2 * n_dimers
    if n_sites is None:
        raise r.error("model", None, "missing key 'n_sites'" + (" or 'n_dimers'" if kind == "dimer_chain" else ""))
    two_s = r.get("model", "two_s", int)
    spin_two_s = r.get("model", "spin", _spin)
    if two_s is not None and spin_two_s is not None and two_s != spin_two_s:
        raise r.error("model", "spin", "inconsistent with two_s")
    two_s = two_s if two_s is not None else (spin_two_s if spin_two_s is not None else 1)

    try:
        model = ModelSpec(
            kind=kind,
            n_sites=n_sites,
            two_s=two_s,
            boundary=r.get("model", "boundary", _choice("open", "periodic"), "periodic"),
            J=r.get("model", "J", float, 1.0),
            B=r.get("model", "B", float, 0.0),
            field_axis=r.get("model", "field_axis", _choice("x", "y", "z"), "z"),
            pauli_convention=r.get("model", "pauli_convention", _bool, True),
            couplings=r.get("model", "couplings", _couplings, ()),
            max_dim=tolerances["max_dim"],
        )
    except ResourceCapError:
        raise
    except LatticeError as exc:
        raise r.error("model", None, str(exc)) from None

    temperature = TemperatureRange(
        lo=r.get("temperature", "lo", float, TemperatureRange.lo),
        hi=r.get("temperature", "hi", float, TemperatureRange.hi),
        points=r.get("temperature", "points", int, TemperatureRange.points),
        spacing=r.get("temperature", "spacing", _choice("linear", "log"), "linear"),
    )
    if not (0 < temperature.lo < temperature.hi):
        raise r.error("temperature", "lo", "need 0 < lo < hi")
    if temperature.points < 2:
        raise r.error("temperature", "points", "need at least 2 points")

    field_range = FieldRange(
        lo=r.get("field", "lo", float, FieldRange.lo),
        hi=r.get("field", "hi", float, FieldRange.hi),
        points=r.get("field", "points", int, FieldRange.points),
        T=r.get("field", "T", float, FieldRange.T),
    )
    if not field_range.lo < field_range.hi:
        raise r.error("field", "lo", "need lo < hi")
    if field_range.points < 2:
        raise r.error("field", "points", "need at least 2 points")
    if field_range.T <= 0:
        raise r.error("field", "T", "temperature must be positive")

    critical = CriticalBracket(
        T_lo=r.get("critical", "T_lo", float, CriticalBracket.T_lo),
        T_hi=r.get("critical", "T_hi", float, CriticalBracket.T_hi),
        tol=r.get("critical", "tol", float, CriticalBracket.tol),
    )
    if not (0 < critical.T_lo < critical.T_hi):
        raise r.error("critical", "T_lo", "need 0 < T_lo < T_hi")
    if critical.tol <= 0:
        raise r.error("critical", "tol", "tolerance must be positive")

    workers = r.get("run", "workers", int, 1)
    if workers < 1:
        raise r.error("run", "workers", "need at least one worker")

    return RunConfig(
        model=model,
        temperature=temperature,
        field=field_range,
        critical=critical,
        output_path=r.get("output", "path", str),
        output_format=r.get("output", "format", _choice("csv", "json"), "csv"),
        seed=r.get("run", "seed", int, 0),
        workers=workers,
        tolerances=tolerances,
        source=source,
    )


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    return parse_config(text, str(path))
