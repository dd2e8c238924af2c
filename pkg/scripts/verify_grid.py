"""Brute-force sigma check over a grid of (q, n); prints one summary line per cell."""

import argparse
import time

from qprofile.ffield import parse_field
from qprofile.oracle import verify_sigma


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", nargs="+", default=["2", "3"])
    ap.add_argument("--max-n", type=int, nargs="+", default=[5, 4], help="largest n for each q")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    if len(args.max_n) == 1:
        args.max_n = args.max_n * len(args.q)
    failed = 0
    for q_text, top in zip(args.q, args.max_n):
        ctx = parse_field(q_text)
        for n in range(2, top + 1):
            t0 = time.perf_counter()
            rep = verify_sigma(ctx, n, workers=args.workers)
            dt = time.perf_counter() - t0
            failed += not rep.passed
            print(f"q={ctx.q} n={n}  {len(rep.rows)} partitions  {'ok' if rep.passed else 'MISMATCH'}  {dt:.2f}s")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
