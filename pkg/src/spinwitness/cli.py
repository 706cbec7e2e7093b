"""Command-line driver.

Exit codes: 0 success, 1 validation failure, 2 configuration error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import thermal
from .config import RunConfig, load_config
from .errors import ConfigError, LatticeError, NoCrossingError, ResourceCapError
from .oracle import dimer_critical_temperature
from .sweeps import (
    FIELD_COLUMNS,
    GRID_COLUMNS,
    TEMPERATURE_COLUMNS,
    field_rows,
    grid_rows,
    model_metadata,
    render,
    temperature_rows,
)
from .validate import DEFAULT_COUNTS, render_report, run_validation
from .witness import critical_temperature

log = logging.getLogger("spinwitness")

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_CAP = 0, 1, 2, 3

# Infinite-chain values read off transfer-matrix data; context only.
CHAIN_REFERENCE_TC = {1: 1.6, 2: 2.0}


def _settings(args) -> RunConfig:
    config = load_config(args.config)
    thermal.set_tolerances(config.tolerances["degeneracy"], config.tolerances["hermiticity"])
    return config


def _emit(text: str, args, config: RunConfig | None) -> None:
    out = args.out or (config.output_path if config else None)
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _format(args, config: RunConfig) -> str:
    return args.format or config.output_format


def _workers(args, config: RunConfig) -> int:
    return args.workers if args.workers is not None else config.workers


def cmd_sweep_temperature(args) -> int:
    config = _settings(args)
    rows = temperature_rows(config.model, config.temperature.values())
    meta = {"command": "sweep-temperature", **model_metadata(config.model)}
    _emit(render(rows, TEMPERATURE_COLUMNS, _format(args, config), meta), args, config)
    return EXIT_OK


def cmd_sweep_field(args) -> int:
    config = _settings(args)
    rows = field_rows(config.model, config.field.values(), config.field.T, _workers(args, config))
    meta = {"command": "sweep-field", **model_metadata(config.model)}
    _emit(render(rows, FIELD_COLUMNS, _format(args, config), meta), args, config)
    return EXIT_OK


def cmd_grid(args) -> int:
    config = _settings(args)
    rows = grid_rows(config.model, config.field.values(), config.temperature.values(), _workers(args, config))
    meta = {"command": "grid", **model_metadata(config.model)}
    _emit(render(rows, GRID_COLUMNS, _format(args, config), meta), args, config)
    return EXIT_OK


def critical_temperature_report(config: RunConfig) -> dict:
    model = config.model
    bracket = config.critical
    tc = critical_temperature(model, bracket.T_lo, bracket.T_hi, bracket.tol)
    report = {
        "T_c": tc,
        "bracket": [bracket.T_lo, bracket.T_hi],
        "tol": bracket.tol,
        "n_sites": model.n_sites,
        "spin": model.spin.s,
        "kind": model.kind,
        "boundary": model.boundary if model.kind == "xxx_chain" else None,
        "B": model.B,
    }
    if model.kind == "xxx_chain" and model.B == 0 and model.two_s in CHAIN_REFERENCE_TC:
        report["reference_T_c"] = CHAIN_REFERENCE_TC[model.two_s] * model.J
        report["reference_note"] = "infinite chain (transfer-matrix data); finite N differs"
    elif model.kind == "dimer_chain" and model.B == 0:
        report["reference_T_c"] = dimer_critical_temperature(model.J)
        report["reference_note"] = "closed-form single dimer, 4J/ln 3"
    return report


def cmd_critical_temperature(args) -> int:
    config = _settings(args)
    report = critical_temperature_report(config)
    if _format(args, config) == "json" or (args.out and args.out.endswith(".json")):
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = "".join(f"{k}: {v}\n" for k, v in report.items() if v is not None)
    _emit(text, args, None)
    return EXIT_OK


def cmd_validate(args) -> int:
    counts = {
        "separable": args.separable, "haar": args.haar,
        "density": args.density, "rotation": args.rotation,
    }
    report = run_validation(args.seed, counts, args.bound_offset)
    _emit(render_report(report), args, None)
    for check in report["checks"]:
        if not check["passed"]:
            log.error("check %s failed (worst %s, seed %s)", check["name"], check["worst"], check["seed"])
    return EXIT_OK if report["passed"] else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinwitness",
        description="Susceptibility entanglement witness and complementarity by exact diagonalization.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_workers=False):
        p.add_argument("--config", required=True, help="run configuration (INI)")
        p.add_argument("--out", help="output path (default: [output] path, else stdout)")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--seed", type=int, help="accepted for uniformity; sweeps are deterministic")
        if with_workers:
            p.add_argument("--workers", type=int)
        else:
            p.add_argument("--workers", type=int, help=argparse.SUPPRESS)

    p = sub.add_parser("sweep-temperature", help="witness vs temperature at fixed field")
    common(p)
    p.set_defaults(func=cmd_sweep_temperature)

    p = sub.add_parser("sweep-field", help="P, Q vs field at fixed temperature")
    common(p, with_workers=True)
    p.set_defaults(func=cmd_sweep_field)

    p = sub.add_parser("grid", help="P + Q over the (B, T) grid")
    common(p, with_workers=True)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("critical-temperature", help="witness crossing temperature by bisection")
    common(p)
    p.set_defaults(func=cmd_critical_temperature)

    p = sub.add_parser("validate", help="run the invariant and oracle suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--workers", type=int, help=argparse.SUPPRESS)
    p.add_argument("--separable", type=int, default=DEFAULT_COUNTS["separable"])
    p.add_argument("--haar", type=int, default=DEFAULT_COUNTS["haar"])
    p.add_argument("--density", type=int, default=DEFAULT_COUNTS["density"])
    p.add_argument("--rotation", type=int, default=DEFAULT_COUNTS["rotation"])
    p.add_argument("--bound-offset", type=float, default=0.0,
                   help="shift the separable bound (negative control; must make validation fail)")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceCapError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (LatticeError, NoCrossingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
