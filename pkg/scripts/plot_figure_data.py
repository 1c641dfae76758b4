#!/usr/bin/env python3
"""Plot figure-data CSV files produced by the susykdv CLI.

The package itself has no plotting dependency; this recipe needs matplotlib.

Example:
    susykdv soliton --preset fig1 --figure-data /tmp/fig1.csv
    python scripts/plot_figure_data.py /tmp/fig1_t-10.csv /tmp/fig1_t0.csv \
        /tmp/fig1_t10.csv -o fig1.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csv", nargs="+", help="per-slice CSV files from the CLI")
    ap.add_argument("-o", "--output", default="figure.png")
    args = ap.parse_args()

    fig, axes = plt.subplots(1, len(args.csv), figsize=(4.5 * len(args.csv), 3.2),
                             squeeze=False)
    for ax, path in zip(axes[0], args.csv):
        with open(path) as fh:
            comment = fh.readline().strip("# \n")
            header = fh.readline().strip().split(",")
        data = np.loadtxt(path, delimiter=",", skiprows=2)
        ax.plot(data[:, 0], data[:, 1], "-", label=header[1])
        ax.plot(data[:, 0], data[:, 2], "--", label=header[2])
        ax.set_xlabel("x")
        ax.set_title(comment.split()[-1], fontsize=9)
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(args.output)


if __name__ == "__main__":
    main()
