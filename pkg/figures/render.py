#!/usr/bin/env python3
"""Render study CSVs into static figures.

Consumes the versioned CSV contracts only and never imports the tensor
library, so it stays usable on any machine that has the data files. Two
kinds are supported: `gap-scatter` (red gap points over the black 1 - s^2
reference curve, optional fixed fit overlay) and `root-scatter` (equatorial
roots in the complex plane with the s^(-1/2) reference circle).

    python3 figures/render.py --kind gap-scatter --in gaps.csv --out fig.png
    python3 figures/render.py --kind root-scatter --in roots.csv --out fig.png
"""
import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

STUDY_SCHEMA = "# lytensor-study-csv v1"
ROOTS_SCHEMA = "# lytensor-roots-csv v1"
GAP_STUDY = "spectral-gap"

# fixed reference fit for path-graph gap plots; never refit here
FIT_COEFF = 3.03
FIT_POWER = 0.609


def _read_rows(path, expected_schema, required):
    with open(path, newline="") as fh:
        first = fh.readline().rstrip("\n")
        if not first.startswith(expected_schema):
            raise ValueError(
                f"schema mismatch: expected {expected_schema!r}, got {first!r}")
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        missing = [c for c in required if c not in fields]
        if missing:
            raise ValueError(f"missing columns: {missing}")
        return list(reader)


def load_gap_points(path):
    """(s, gap) pairs from a study CSV, skipping cross-validation rows."""
    rows = _read_rows(path, STUDY_SCHEMA, ["study", "s", "metric"])
    return sorted((float(r["s"]), float(r["metric"]))
                  for r in rows if r["study"] == GAP_STUDY)


def load_root_points(path):
    """(s, re, im, modulus, reference) tuples from a roots CSV."""
    rows = _read_rows(path, ROOTS_SCHEMA,
                      ["s", "re", "im", "modulus", "reference"])
    return [(float(r["s"]), float(r["re"]), float(r["im"]),
             float(r["modulus"]), float(r["reference"])) for r in rows]


def render_gap(points, fit_overlay=False):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    grid = np.linspace(0.0, 1.0, 401)
    ax.plot(grid, 1.0 - grid**2, color="black", lw=1.2, label="1 - s^2")
    if fit_overlay:
        ax.plot(grid, FIT_COEFF * grid * (1.0 - grid) ** FIT_POWER,
                color="tab:blue", lw=1.0, ls="--",
                label=f"{FIT_COEFF} s (1-s)^{FIT_POWER}")
    ax.scatter([p[0] for p in points], [p[1] for p in points],
               s=14, color="red", zorder=3, label="gap")
    ax.set_xlabel("s")
    ax.set_ylabel("spectral gap")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(bottom=0.0)
    ax.legend(loc="upper right")
    return fig, ax


def render_roots(rows):
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    for ref in sorted({r[4] for r in rows}):
        ax.add_patch(plt.Circle((0.0, 0.0), ref, fill=False,
                                color="black", lw=1.0))
    ax.scatter([r[1] for r in rows], [r[2] for r in rows],
               s=10, color="red", zorder=3)
    if rows:
        lim = 1.1 * max(max(abs(r[1]), abs(r[2]), r[4]) for r in rows)
    else:
        lim = 1.0
    ax.set_xlim(-lim, lim)
    ax.set_ylim(-lim, lim)
    ax.set_aspect("equal")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    return fig, ax


def main(argv=None):
    ap = argparse.ArgumentParser(
        description="Render study CSVs into static figures.")
    ap.add_argument("--kind", required=True,
                    choices=["gap-scatter", "root-scatter"])
    ap.add_argument("--in", dest="inp", required=True, metavar="CSV")
    ap.add_argument("--out", required=True, metavar="IMAGE")
    ap.add_argument("--fit-overlay", action="store_true",
                    help="overlay the fixed fit 3.03 s (1-s)^0.609 "
                         "(gap-scatter only)")
    args = ap.parse_args(argv)
    try:
        if args.kind == "gap-scatter":
            points = load_gap_points(args.inp)
            fig, _ = render_gap(points, args.fit_overlay)
            count = len(points)
        else:
            rows = load_root_points(args.inp)
            fig, _ = render_roots(rows)
            count = len(rows)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    print(f"{args.kind}: {count} points -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
