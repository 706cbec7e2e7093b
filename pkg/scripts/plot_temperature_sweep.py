"""Reference plot for a sweep-temperature CSV: per-site chi_z against s/(3T).

    spinwitness sweep-temperature --config configs/spin_half_chain.ini
    python3 scripts/plot_temperature_sweep.py spin_half_chain.csv out.png

Needs matplotlib (not a package dependency).
"""

import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main(src: str, dst: str) -> None:
    with open(src, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    T = [float(r["T"]) for r in rows]
    chi = [float(r["per_site_chi"]) for r in rows]
    bound = [float(r["per_site_threshold"]) for r in rows]
    flagged = [t for t, r in zip(T, rows) if r["entangled"] == "true"]

    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(T, chi, label=r"$\chi_z / N$")
    ax.plot(T, bound, "--", label=r"$s/(3T)$")
    if flagged:
        ax.axvspan(min(T), max(flagged), color="0.9", label="witness fires")
    ax.set_xlabel("T / J")
    ax.set_ylabel("susceptibility per site")
    ax.set_ylim(0, 1.5 * max(chi))
    ax.legend()
    fig.tight_layout()
    fig.savefig(dst, dpi=150)


if __name__ == "__main__":
    main(*sys.argv[1:3])
