#!/usr/bin/env python3
"""Seeded hill-climb restarts over equal-count upset triples.

Runs local_search once per seed, prints a per-seed table (exact value,
decimal, iterations used), then the winner against the LP ceiling at the
chosen density.  Optionally dumps the winning triple as .upset files.

    python3 scripts/search_restarts.py --n 5 --rho 1/2 --restarts 8 --stop-at 13/32
    python3 scripts/search_restarts.py --n 6 --rho 1/2 --objective min-part --iters 50000
"""

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

from upcube import SearchObjective, local_search, s1_upper_bound, write_upset
from upcube.cli import dec10, rat

KINDS = {"s1": "s1_density", "min-part": "min_part_density"}


def parse_args(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5, help="cube dimension (default 5)")
    ap.add_argument("--rho", type=Fraction, default=Fraction(1, 2),
                    help="common density, must be a multiple of 2^-n (default 1/2)")
    ap.add_argument("--objective", choices=sorted(KINDS), default="s1")
    ap.add_argument("--p", type=Fraction, default=Fraction(1, 2), help="measure bias")
    ap.add_argument("--seed", type=int, default=0, help="first seed (default 0)")
    ap.add_argument("--restarts", type=int, default=8)
    ap.add_argument("--iters", type=int, default=100_000, help="max iterations per restart")
    ap.add_argument("--stop-at", type=Fraction, default=None,
                    help="stop a restart early at this objective value")
    ap.add_argument("--out", help="directory for the winning triple's .upset files")
    return ap.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    objective = SearchObjective(kind=KINDS[args.objective], bias=args.p)

    results = []
    print(f"{'seed':>6} {'value':>14} {'decimal':>14} {'iters':>8} {'secs':>7}")
    for seed in range(args.seed, args.seed + args.restarts):
        t0 = time.perf_counter()
        res = local_search(args.n, args.rho, objective, seed=seed,
                           max_iters=args.iters, stop_at=args.stop_at)
        dt = time.perf_counter() - t0
        results.append(res)
        print(f"{seed:>6} {rat(res.value):>14} {dec10(res.value):>14} "
              f"{res.iterations:>8} {dt:>7.2f}")

    best = max(results, key=lambda r: (r.value, -r.seed))
    total_iters = sum(r.iterations for r in results)
    bound = s1_upper_bound(args.rho)
    print(f"\nbest: seed {best.seed}, value {rat(best.value)} ({dec10(best.value)}) "
          f"after {total_iters} total iterations")
    if args.objective == "s1":
        print(f"LP ceiling at rho={rat(args.rho)}: {rat(bound)} ({dec10(bound)})")

    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        triple = best.triple
        for tag, fam in (("x", triple.x), ("y", triple.y), ("z", triple.z)):
            path = out / f"search_n{args.n}_seed{best.seed}_{tag}.upset"
            write_upset(fam, path)
            print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
