"""Build and check the membership certificate for a range of q = p^e.

    python scripts/hochster_scan.py --max-q 16 --oracle-max-q 9

Prints one line per q: certificate size, cofactor term counts, residual,
linear-oracle verdict and timings.
"""
import argparse
import time

from lcverify.binomial import first_primes
from lcverify.hochster import build_and_verify_certificate, oracle_membership
from lcverify.zlinalg import NoSolution


def prime_powers(max_q):
    out = []
    for p in first_primes(max_q):
        if p > max_q:
            break
        e = 1
        while p ** e <= max_q:
            out.append((p ** e, p, e))
            e += 1
    return sorted(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-q", type=int, default=16)
    ap.add_argument("--oracle-max-q", type=int, default=9)
    args = ap.parse_args()

    print(f"{'q':>3} {'p':>2} {'e':>2} {'terms c1/c2/c3':>18} {'residual':>9} {'oracle':>8} {'t_cert':>8} {'t_orc':>8}")
    for q, p, e in prime_powers(args.max_q):
        t0 = time.perf_counter()
        cert = build_and_verify_certificate(p, e)
        t_cert = time.perf_counter() - t0
        verdict, t_orc = "-", 0.0
        if q <= args.oracle_max_q:
            t0 = time.perf_counter()
            res = oracle_membership(p, e, max_q=args.oracle_max_q)
            t_orc = time.perf_counter() - t0
            verdict = "refuted" if isinstance(res, NoSolution) else "member"
        sizes = "/".join(str(len(c)) for c in cert.cofactors)
        residual = "0" if cert.residual.is_zero() else "NONZERO"
        print(f"{q:>3} {p:>2} {e:>2} {sizes:>18} {residual:>9} {verdict:>8} {t_cert:>8.3f} {t_orc:>8.3f}")


if __name__ == "__main__":
    main()
