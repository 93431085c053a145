#!/usr/bin/env python3
"""Plot one or more cspin CSVs: first column on x, every other column as a
curve.  Usage: plot_csv.py out.png file1.csv [file2.csv ...]"""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], rows[1:]
    cols = list(zip(*[[float(v) for v in row] for row in data]))
    return header, cols


def main():
    if len(sys.argv) < 3:
        sys.exit(__doc__)
    out, files = sys.argv[1], sys.argv[2:]
    fig, axes = plt.subplots(1, len(files), figsize=(5.5 * len(files), 4.0),
                             squeeze=False)
    for ax, path in zip(axes[0], files):
        header, cols = load(path)
        for name, col in zip(header[1:], cols[1:]):
            ax.plot(cols[0], col, label=name, lw=1.0)
        ax.set_xlabel(header[0])
        ax.set_title(path.split("/")[-1])
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
