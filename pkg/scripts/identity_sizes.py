"""Expansion sizes for the three-part identity and the mod-p splitting.

    python scripts/identity_sizes.py --k-max 12
"""
import argparse
import time

from lcverify.cli import prime_power
from lcverify.identity import build_mod_p_decomposition, identity_terms


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-max", type=int, default=12)
    args = ap.parse_args()

    print(f"{'k':>3} {'|P1|':>6} {'|P2|':>6} {'|P3|':>6} {'lhs':>4} {'max |coeff|':>14} {'S terms':>14} {'secs':>7}")
    for k in range(args.k_max + 1):
        t0 = time.perf_counter()
        p1, p2, p3 = identity_terms(k)
        lhs = p1 - p2 - p3
        split = "-"
        pe = prime_power(k + 1)
        if pe is not None:
            split = "/".join(str(len(s)) for s in build_mod_p_decomposition(*pe))
        dt = time.perf_counter() - t0
        print(f"{k:>3} {len(p1):>6} {len(p2):>6} {len(p3):>6} {len(lhs):>4} {p1.max_abs_coefficient():>14} "
              f"{split:>14} {dt:>7.2f}")


if __name__ == "__main__":
    main()
