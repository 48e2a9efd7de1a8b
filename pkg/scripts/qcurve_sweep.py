#!/usr/bin/env python3
"""Sweep the closed-form exactly-one density q(n, l, p) over a bias grid.

Emits one CSV row per grid point with the exact rational value and a
decimal rendering, flags the rows that clear 4/9, and finishes with a
stderr summary of the best grid point.  Everything is computed in
Fractions; the decimals are display-only.

    python3 scripts/qcurve_sweep.py --n 7 --l 3 --grid 64
    python3 scripts/qcurve_sweep.py --n 7 --l 3 --points 1/3,3/8 --out sweep.csv
"""

import argparse
import csv
import sys
from fractions import Fraction

from upcube import qcurve
from upcube.cli import dec10, rat

FOUR_NINTHS = Fraction(4, 9)


def parse_args(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=7, help="cube dimension (default 7)")
    ap.add_argument("--l", type=int, default=3, help="threshold level (default 3)")
    ap.add_argument("--grid", type=int, default=64, help="sample at i/K, i=0..K")
    ap.add_argument("--points", help="comma-separated explicit biases, overrides --grid")
    ap.add_argument("--out", help="write CSV here instead of stdout")
    return ap.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    if args.points:
        grid = [Fraction(tok) for tok in args.points.split(",")]
    else:
        grid = [Fraction(i, args.grid) for i in range(args.grid + 1)]

    rows = qcurve(args.n, args.l, grid)
    sink = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(sink)
        writer.writerow(["p", "q", "q_dec", "exceeds_4_9"])
        for p, q in rows:
            writer.writerow([rat(p), rat(q), dec10(q), q > FOUR_NINTHS])
    finally:
        if args.out:
            sink.close()

    best_p, best_q = max(rows, key=lambda r: r[1])
    above = sum(q > FOUR_NINTHS for _, q in rows)
    print(
        f"n={args.n} l={args.l}: best q = {rat(best_q)} ({dec10(best_q)}) at p = {rat(best_p)}; "
        f"{above}/{len(rows)} grid points exceed 4/9",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
