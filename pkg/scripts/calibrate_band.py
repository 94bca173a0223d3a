"""Measure how far the PHR curve strays from y = x on complete graphs.

Runs the paired-design curve experiment on K_n for several seeds and prints
the largest |PHR - ESR| seen at any grid point. The acceptance test freezes
its tolerance band from this measurement.

    python scripts/calibrate_band.py --n 20 --trials 2000 --seeds 1-10
"""

import argparse

from stegnet.detect import phr_curve_experiment

GRID = [i / 10 for i in range(11)]


def seed_range(text):
    lo, _, hi = text.partition("-")
    return range(int(lo), int(hi or lo) + 1)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seeds", type=seed_range, default=seed_range("1-10"))
    args = ap.parse_args()

    m = args.n * (args.n - 1) // 2
    worst = 0.0
    for seed in args.seeds:
        curve = phr_curve_experiment(args.n, m, args.trials, GRID, seed)
        dev = max(abs(phr - esr) for esr, phr in curve.points)
        worst = max(worst, dev)
        print(f"seed={seed} max|phr-esr|={dev:.6f}")
    print(f"n={args.n} m={m} trials={args.trials} worst={worst:.6f}")


if __name__ == "__main__":
    main()
