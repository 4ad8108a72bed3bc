#!/usr/bin/env python3
"""Edge-count scaling experiment: how does the spanner grow with n?

Builds spanners over doubling point counts, prints the edge counts, the
normalized ratio edges / (n * log2(n)^3), and the measured stretch, and
optionally writes the rows as JSON.
"""

import argparse
import json

from boxspan.verification import scaling_sweep


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="16,32,64,128,256",
                        help="comma-separated point counts")
    parser.add_argument("--trials", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--m", type=int, default=8, help="obstacles per instance")
    parser.add_argument("--out", default=None, help="optional JSON output path")
    args = parser.parse_args()

    sizes = [int(v) for v in args.sizes.split(",") if v.strip()]
    rows = scaling_sweep(sizes, trials=args.trials, seed=args.seed, m=args.m)

    print(f"{'n':>6} {'median edges':>13} {'edges/(n log2(n)^3)':>20} {'max stretch':>12}")
    for row in rows:
        print(f"{row.n:>6} {row.median_edges:>13.0f} {row.normalized_edges:>20.4f} "
              f"{row.max_stretch:>12.6f}")

    if args.out:
        payload = [{"n": r.n, "m": r.m, "median_edges": r.median_edges,
                    "median_size_sum": r.median_size_sum,
                    "normalized_edges": r.normalized_edges,
                    "max_stretch": r.max_stretch, "runs": r.runs} for r in rows]
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
