"""Print the q-Whittaker expansion of p_n next to sigma for each partition."""

import argparse

from qprofile.counting import sigma_poly, whittaker_coefficient
from qprofile.partition import partitions_of


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    for n in range(1, args.max_n + 1):
        print(f"n = {n}")
        for mu in partitions_of(n):
            print(f"  {str(mu):<16} {str(whittaker_coefficient(mu)):<40} sigma: {sigma_poly(mu)}")


if __name__ == "__main__":
    main()
