"""Binomial coefficients, p-adic valuations and three binomial-sum identities.

The sums follow the convention that binom(n, i) = 0 whenever i < 0 or n < i,
so summation ranges can be left wide and truncate themselves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable

from .report import VerificationReport, timer


class OutOfRange(ValueError):
    pass


def binom(n: int, k: int) -> int:
    """binom(n, k) for n >= 0, zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binom({n}, {k}): negative top argument")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def cbinom(n: int, k: int) -> int:
    """Summation convention: zero whenever k < 0 or n < k (negative n included)."""
    if k < 0 or n < k:
        return 0
    return math.comb(n, k)


def binom_pascal(n_max: int) -> list[list[int]]:
    """Pascal's triangle rows 0..n_max, used as an independent oracle."""
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append([1] + [prev[i - 1] + prev[i] for i in range(1, n)] + [1])
    return rows


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def first_primes(count: int) -> list[int]:
    out, n = [], 2
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 1
    return out


def legendre(p: int, n: int) -> int:
    """Exponent of p in n!."""
    v = 0
    while n:
        n //= p
        v += n
    return v


def padic_valuation_binom(p: int, n: int, k: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return legendre(p, n) - legendre(p, k) - legendre(p, n - k)


def kummer_carries(p: int, a: int, b: int) -> int:
    """Number of carries when adding a and b in base p."""
    carries = carry = 0
    while a or b or carry:
        s = a % p + b % p + carry
        carry = 1 if s >= p else 0
        carries += carry
        a //= p
        b //= p
    return carries


def padic_valuation_int(p: int, n: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def verify_divisibility_family(p: int, e: int) -> VerificationReport:
    """p | binom(p^e - 1 + r, p^e - 1) for 1 <= r <= p^e - 1, two ways."""
    report = VerificationReport()
    q = p ** e
    bad = []
    with timer() as t:
        for r in range(1, q):
            c = binom(q - 1 + r, q - 1)
            direct = c % p == 0
            val = padic_valuation_binom(p, q - 1 + r, q - 1)
            if not direct or val < 1 or (val >= 1) != direct:
                bad.append({"r": r, "binom": str(c), "valuation": val})
    report.add(f"p | binom(q-1+r, q-1) for p={p}, e={e}, r=1..{q - 1}", "divisibility",
               not bad, {"checked": q - 1, "violations": bad[:5]}, t[0])
    return report


def product_display(p: int, e: int, r: int) -> Fraction:
    """(p^e/r) * prod_{t=1}^{r-1} (p^e/t + 1) as an exact rational."""
    q = p ** e
    out = Fraction(q, r)
    for t in range(1, r):
        out *= Fraction(q, t) + 1
    return out


# The three identities.  LemmaInstance.params is (k, s, m) for 1 and 3, (s, a, k) for 2.


@dataclass(frozen=True)
class LemmaInstance:
    which: int
    params: tuple[int, int, int]

    def __post_init__(self):
        if self.which not in (1, 2, 3):
            raise OutOfRange(f"no identity number {self.which}")
        if any(x < 0 for x in self.params):
            raise OutOfRange(f"negative parameter in {self.params}")
        if self.which == 1:
            k, s, m = self.params
            if not (s > k or k >= s >= k + 1 - m):
                raise OutOfRange(f"identity 1 has no closed form at k={k}, s={s}, m={m}")

    @classmethod
    def in_range(cls, which: int, params: tuple[int, int, int]) -> bool:
        try:
            cls(which, params)
        except OutOfRange:
            return False
        return True


def lemma1_sum(k: int, s: int, m: int) -> int:
    return sum((-1) ** i * cbinom(2 * k + 1, s + i) * cbinom(k + i, k) * cbinom(k + m - i, k)
               for i in range(m + 1))


def lemma1_closed(k: int, s: int, m: int) -> int:
    if s > k:
        return cbinom(m + s - k - 1, m) * cbinom(2 * k + m + 1, m + s)
    if k >= s >= k + 1 - m:
        return 0
    raise OutOfRange(f"identity 1 has no closed form at k={k}, s={s}, m={m}")


def lemma2_sum(s: int, a: int, k: int) -> int:
    return sum((-1) ** j * cbinom(s, j) * cbinom(a + j, k) for j in range(s + 1))


def lemma2_closed(s: int, a: int, k: int) -> int:
    return (-1) ** s * cbinom(a, k - s)


def lemma3_sum(k: int, s: int, m: int) -> int:
    return sum(cbinom(k - i, k - s) * cbinom(k + i, k) * cbinom(k + m - i, m) for i in range(s + 1))


def lemma3_closed(k: int, s: int, m: int) -> int:
    return cbinom(k + m - s, m) * cbinom(2 * k + m + 1, s)


_SUMS = {1: (lemma1_sum, lemma1_closed), 2: (lemma2_sum, lemma2_closed), 3: (lemma3_sum, lemma3_closed)}


def lemma_eval(inst: LemmaInstance) -> tuple[int, int]:
    """(direct summation, closed form) for an in-range instance."""
    direct, closed = _SUMS[inst.which]
    return direct(*inst.params), closed(*inst.params)


def lemma_instances(k_max: int, k_min: int = 1) -> Iterable[LemmaInstance]:
    """Every in-range instance of the acceptance boxes, in a fixed order."""
    for k in range(k_min, k_max + 1):
        for s in range(0, 2 * k + 3):
            for m in range(0, k + 1):
                for which in (1, 3):
                    if LemmaInstance.in_range(which, (k, s, m)):
                        yield LemmaInstance(which, (k, s, m))
        for s in range(0, k + 1):
            for a in range(0, 2 * k + 1):
                yield LemmaInstance(2, (s, a, k))


def verify_lemmas(k_max: int) -> VerificationReport:
    report = VerificationReport()
    for which in (1, 2, 3):
        bad, count, zeros = [], 0, 0
        with timer() as t:
            for inst in lemma_instances(k_max, k_min=0):
                if inst.which != which:
                    continue
                lhs, rhs = lemma_eval(inst)
                count += 1
                zeros += rhs == 0
                if lhs != rhs:
                    bad.append({"params": list(inst.params), "lhs": lhs, "rhs": rhs})
        report.add(f"identity {which}: direct sum = closed form, k <= {k_max}", f"lemma{which}",
                   not bad, {"instances": count, "zero_cases": zeros, "violations": bad[:5]}, t[0])
    return report


# Recurrence certificates, with denominators multiplied through.
#   F, Gnum(., i) = G(., i) * den(., i), den(., i) = (outer + 1 - i).
# The relation G(i+1) - G(i) = R is checked as
#   den(i)*Gnum(i+1) - den(i+1)*Gnum(i) = den(i)*den(i+1)*R  with den(i+1) = outer - i.


def _F1(k, s, m, i):
    return (-1) ** i * cbinom(2 * k + 1, s + i) * cbinom(k + i, k) * cbinom(k + m - i, k)


def _F2(a, k, s, j):
    return (-1) ** j * cbinom(s, j) * cbinom(a + j, k)


def _F3(k, m, s, i):
    return cbinom(k - i, k - s) * cbinom(k + i, k) * cbinom(k + m - i, m)


def certificate_point(which: int, fixed: tuple[int, int], outer: int, i: int) -> bool | None:
    """Check one cleared relation; None if a cleared denominator vanishes.

    ``fixed`` is (k, s) for 1, (k, a) for 2, (k, m) for 3; ``outer`` is the
    recurrence variable (m for 1, s for 2 and 3) and ``i`` the summation index.
    """
    d0, d1 = outer + 1 - i, outer - i
    if d0 == 0 or d1 == 0:
        return None
    if which == 1:
        k, s = fixed
        m = outer
        F = lambda mm, ii: _F1(k, s, mm, ii)
        gnum = lambda ii: ii * (s + ii) * (k + m + 1 - ii) * F(m, ii)
        rhs = (2 * k + m + 2) * (m + s - k) * F(m, i) - (m + 1) * (m + s + 1) * F(m + 1, i)
    elif which == 2:
        k, a = fixed
        s = outer
        F = lambda ss, jj: _F2(a, k, ss, jj)
        gnum = lambda jj: -jj * (a + jj - k) * F(s, jj)
        rhs = (k - s) * F(s, i) + (a - k + s + 1) * F(s + 1, i)
    elif which == 3:
        k, m = fixed
        s = outer
        F = lambda ss, ii: _F3(k, m, ss, ii)
        gnum = lambda ii: ii * (k - s) * (k + m + 1 - ii) * F(s, ii)
        rhs = (k - s) * (2 * k + m - s + 1) * F(s, i) - (s + 1) * (k + m - s) * F(s + 1, i)
    else:
        raise OutOfRange(f"no certificate {which}")
    return d0 * gnum(i + 1) - d1 * gnum(i) == d0 * d1 * rhs


def recurrence_point(which: int, fixed: tuple[int, int], outer: int) -> bool:
    """The first-order recurrence obtained by summing the relation over the inner index."""
    if which == 1:
        k, s = fixed
        m = outer
        H = lambda mm: sum(_F1(k, s, mm, i) for i in range(mm + 1))
        return (2 * k + m + 2) * (m + s - k) * H(m) - (m + 1) * (m + s + 1) * H(m + 1) == 0
    if which == 2:
        k, a = fixed
        s = outer
        H = lambda ss: sum(_F2(a, k, ss, j) for j in range(ss + 1))
        return (k - s) * H(s) + (a - k + s + 1) * H(s + 1) == 0
    if which == 3:
        k, m = fixed
        s = outer
        H = lambda ss: sum(_F3(k, m, ss, i) for i in range(ss + 1))
        return (k - s) * (2 * k + m - s + 1) * H(s) - (s + 1) * (k + m - s) * H(s + 1) == 0
    raise OutOfRange(f"no certificate {which}")


def certificate_box(which: int, k: int) -> Iterable[tuple[tuple[int, int], int, int]]:
    """Integer points (fixed, outer, inner) of the acceptance box for one k."""
    if which == 1:
        for s, m, i in product(range(2 * k + 3), range(k + 3), range(k + 3)):
            yield (k, s), m, i
    elif which == 2:
        for a, s, j in product(range(2 * k + 1), range(2 * k + 3), range(k + 3)):
            yield (k, a), s, j
    elif which == 3:
        for m, s, i in product(range(k + 3), range(2 * k + 3), range(k + 3)):
            yield (k, m), s, i
    else:
        raise OutOfRange(f"no certificate {which}")


def verify_certificate(which: int, k_values: Iterable[int]) -> VerificationReport:
    report = VerificationReport()
    k_values = list(k_values)
    checked = excluded = 0
    bad = []
    rec_bad = []
    with timer() as t:
        for k in k_values:
            outers = set()
            for fixed, outer, i in certificate_box(which, k):
                ok = certificate_point(which, fixed, outer, i)
                if ok is None:
                    excluded += 1
                    continue
                checked += 1
                if not ok:
                    bad.append({"fixed": list(fixed), "outer": outer, "inner": i})
                outers.add((fixed, outer))
            for fixed, outer in sorted(outers):
                if not recurrence_point(which, fixed, outer):
                    rec_bad.append({"fixed": list(fixed), "outer": outer})
    report.add(f"certificate {which}: cleared relation at every box point, k in {k_values[0]}..{k_values[-1]}",
               f"certificate{which}", not bad and not rec_bad,
               {"points": checked, "excluded": excluded, "violations": bad[:5],
                "recurrence_violations": rec_bad[:5]}, t[0])
    return report
