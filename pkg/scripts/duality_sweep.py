"""Check profile/defect duality for random operators on F_q^n, n = 1..N."""

import argparse

from qprofile.ffield import parse_field
from qprofile.oracle import verify_duality


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", default="2")
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    ctx = parse_field(args.q)
    bad = 0
    for n in range(1, args.max_n + 1):
        rep = verify_duality(ctx, n, trials=args.trials, seed=args.seed + n)
        bad += not rep.passed
        print(f"n={n}: {'ok' if rep.passed else 'MISMATCH'}  " + "; ".join(rep.notes))
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
