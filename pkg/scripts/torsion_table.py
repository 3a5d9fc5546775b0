"""Torsion witnesses on ux+vy+wz = 0, tabulated per prime.

    python scripts/torsion_table.py --primes 10 --k-max 20 --oracle-k-max 3
"""
import argparse
import time

from lcverify.binomial import first_primes
from lcverify.torsion import lambda_p, specialize, torsion_witness


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, default=10, help="how many primes, starting at 2")
    ap.add_argument("--k-max", type=int, default=20)
    ap.add_argument("--oracle-k-max", type=int, default=3)
    args = ap.parse_args()

    print(f"{'p':>3} {'lambda terms':>12} {'x^(p-1)y coeff':>15} {'oracle kinds':>28} {'verdict':>8} {'secs':>7}")
    for p in first_primes(args.primes):
        t0 = time.perf_counter()
        rep = torsion_witness(p, args.k_max, args.oracle_k_max)
        dt = time.perf_counter() - t0
        lam = lambda_p(p).representative
        coeff = specialize(lam).coefficient((p - 1, 1))
        certs = rep.rows[-1].witness["certificates"]
        kinds = ",".join(certs[k]["kind"].replace("not_divisible", "nd").replace("no_pivot", "np")
                         for k in sorted(certs, key=int))
        print(f"{p:>3} {len(lam):>12} {coeff:>15} {kinds:>28} {'torsion' if rep.verdict else 'FAIL':>8} {dt:>7.2f}")


if __name__ == "__main__":
    main()
