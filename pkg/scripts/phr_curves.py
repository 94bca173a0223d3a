"""PHR-vs-ESR curves for random networks with a fixed vertex count and varying edge counts.

Writes one CSV per edge count to --outdir and, if matplotlib is available and
--plot is given, a PNG with all curves and the y = x reference line. Each
curve averages the paired-design experiment over --seeds.

    python scripts/phr_curves.py --n 20 --m 30 60 100 150 190 --seeds 1-10
"""

import argparse
from pathlib import Path

import numpy as np

from stegnet.detect import phr_curve_experiment

GRID = [i / 20 for i in range(21)]


def seed_range(text):
    lo, _, hi = text.partition("-")
    return range(int(lo), int(hi or lo) + 1)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--m", type=int, nargs="+", default=[30, 60, 100, 150, 190])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seeds", type=seed_range, default=seed_range("1-10"))
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    curves = {}
    for m in args.m:
        runs = [phr_curve_experiment(args.n, m, args.trials, GRID, s) for s in args.seeds]
        mean = np.mean([[phr for _, phr in c.points] for c in runs], axis=0)
        curves[m] = mean
        path = args.outdir / f"phr_n{args.n}_m{m}.csv"
        with path.open("w", newline="\n") as fh:
            fh.write(f"# n={args.n}\n# m={m}\n# trials={args.trials}\n")
            fh.write(f"# seeds={args.seeds.start}-{args.seeds.stop - 1}\n")
            fh.write("esr,phr\n")
            for esr, phr in zip(GRID, mean):
                fh.write(f"{esr:.6f},{phr:.6f}\n")
        print(f"m={m}: phr@0.3={mean[GRID.index(0.3)]:.4f} -> {path}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(5, 4))
        for m, mean in curves.items():
            ax.plot(GRID, mean, marker=".", label=f"m={m}")
        ax.plot([0, 1], [0, 1], "k--", lw=0.8, label="y = x")
        ax.set_xlabel("ESR")
        ax.set_ylabel("PHR")
        ax.set_title(f"n={args.n}")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.outdir / f"phr_n{args.n}.png", dpi=150)


if __name__ == "__main__":
    main()
