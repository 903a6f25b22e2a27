#!/usr/bin/env python3
"""Render a sweep CSV produced by `pionless-qre sweep --format csv` to a PNG.

Rows whose status is not "ok" (for example a method that rejects the swept
point) are skipped with a note. The figure shows T-count on a log scale and,
optionally, total qubits on a twin axis.
"""

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_sweep(path):
    """Parse the sweep CSV into {method: (axis_values, t_counts, qubits)}."""
    with open(path, "r", encoding="utf-8") as handle:
        rows = list(csv.DictReader(line for line in handle if not line.startswith("#")))
    if not rows:
        raise SystemExit(f"{path}: no data rows")
    series = {}
    skipped = 0
    for row in rows:
        if row["status"] != "ok":
            skipped += 1
            continue
        xs, ts, qs = series.setdefault(row["method"], ([], [], []))
        xs.append(float(row["axis"]))
        ts.append(float(row["t_count"]))
        qs.append(int(row["total_qubits"]))
    if skipped:
        print(f"note: skipped {skipped} non-ok row(s)", file=sys.stderr)
    if not series:
        raise SystemExit(f"{path}: every row failed; nothing to plot")
    return series


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv_path", help="sweep CSV from the command-line tool")
    parser.add_argument("-o", "--out", default="sweep.png", help="output PNG path")
    parser.add_argument(
        "--xlabel", default="swept value", help="label for the sweep axis"
    )
    parser.add_argument(
        "--qubits", action="store_true", help="add total qubits on a twin axis"
    )
    args = parser.parse_args(argv)

    series = read_sweep(args.csv_path)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    markers = "osD^v"
    for i, (method, (xs, ts, _)) in enumerate(sorted(series.items())):
        ax.plot(xs, ts, marker=markers[i % len(markers)], label=method)
    ax.set_yscale("log")
    ax.set_xlabel(args.xlabel)
    ax.set_ylabel("T-gate count")
    ax.grid(True, which="both", alpha=0.3)

    if args.qubits:
        twin = ax.twinx()
        for i, (method, (xs, _, qs)) in enumerate(sorted(series.items())):
            twin.plot(xs, qs, linestyle="--", alpha=0.5, color=f"C{i}")
        twin.set_ylabel("total qubits (dashed)")

    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
