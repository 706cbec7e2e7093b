"""Reference heat map of P + Q from a grid CSV.

    spinwitness grid --config configs/dimer_grid.ini
    python3 scripts/plot_complementarity_grid.py dimer_grid.csv out.png

Needs matplotlib (not a package dependency).
"""

import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def main(src: str, dst: str) -> None:
    with open(src, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    B = sorted({float(r["B"]) for r in rows})
    T = sorted({float(r["T"]) for r in rows})
    grid = np.empty((len(T), len(B)))
    for r in rows:
        grid[T.index(float(r["T"])), B.index(float(r["B"]))] = float(r["P_plus_Q"])

    fig, ax = plt.subplots(figsize=(5, 4))
    mesh = ax.pcolormesh(B, T, grid, shading="nearest", vmax=1.0)
    fig.colorbar(mesh, label="P + Q")
    ax.set_xlabel("B / J")
    ax.set_ylabel("T / J")
    fig.tight_layout()
    fig.savefig(dst, dpi=150)


if __name__ == "__main__":
    main(*sys.argv[1:3])
