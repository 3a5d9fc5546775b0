"""The three-part binomial identity in Z[A,B,T] and its mod-p splitting.

For k >= 0 the identity reads  P1 - P2 - P3 = 0  with

    P1 = (A+B)^(2k+1) sum_n binom(k,n) T^n sum_i (-1)^(k+i) A^(k-i) B^(k-n+i) w(n,i)
    P2 = A^(2k+1) sum_n binom(k,n) (-1)^n (T+B)^n sum_i (A+B)^(k-i) B^(k-n+i) w(n,i)
    P3 = B^(2k+1) sum_n binom(k,n) (T-A)^n sum_i (A+B)^(k-i) A^(k-n+i) w(n,i)

where w(n,i) = binom(k+i,k) binom(k+n-i,k) and 0 <= i <= n <= k.
"""
from __future__ import annotations

from dataclasses import dataclass

from .binomial import binom, lemma1_closed, lemma1_sum, lemma3_closed
from .polyring import NotDivisible, Polynomial, VarContext, format_poly, sum_polys
from .report import VerificationReport, timer

ABT = VarContext(("A", "B", "T"))
A, B, T = ABT.gens()


@dataclass(frozen=True)
class Perturbation:
    """Add ``delta`` to one binomial factor of one summand (a mutation control).

    ``factor`` 0, 1, 2 selects binom(k,n), binom(k+i,k), binom(k+n-i,k).
    """

    part: int
    n: int
    i: int
    factor: int
    delta: int = 1


def _factors(k: int, n: int, i: int, part: int, perturb: Perturbation | None) -> int:
    f = [binom(k, n), binom(k + i, k), binom(k + n - i, k)]
    if perturb is not None and (perturb.part, perturb.n, perturb.i) == (part, n, i):
        f[perturb.factor] += perturb.delta
    return f[0] * f[1] * f[2]


class _Powers:
    def __init__(self, base: Polynomial):
        self.base = base
        self.cache = {0: base.ctx.one()}

    def __getitem__(self, e: int) -> Polynomial:
        if e not in self.cache:
            self.cache[e] = self.base ** e
        return self.cache[e]


def _mono(a: int, b: int, t: int = 0) -> Polynomial:
    return Polynomial.from_monomial(ABT, (a, b, t))


def identity_parts(k: int, perturb: Perturbation | None = None, n_min: int = 0,
                   divisor: int = 1) -> tuple[Polynomial, Polynomial, Polynomial]:
    """The inner double sums of P1, P2, P3 (without the (A+B)^(2k+1), A^(2k+1), B^(2k+1) prefixes).

    ``n_min`` drops the leading n-range; ``divisor`` divides each w(n,i) exactly.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    apb, tpb, tma = _Powers(A + B), _Powers(T + B), _Powers(T - A)
    s1, s2, s3 = [], [], []
    for n in range(n_min, k + 1):
        in1, in2, in3 = [], [], []
        for i in range(n + 1):
            ws = [_factors(k, n, i, part, perturb) for part in (1, 2, 3)]
            if divisor != 1:
                for w in ws:
                    if w % divisor:
                        raise NotDivisible(divisor, (n, i), w)
                ws = [w // divisor for w in ws]
            in1.append(_mono(k - i, k - n + i).scale((-1) ** (k + i) * ws[0]))
            in2.append(apb[k - i] * _mono(0, k - n + i).scale(ws[1]))
            in3.append(apb[k - i] * _mono(k - n + i, 0).scale(ws[2]))
        s1.append(_mono(0, 0, n) * sum_polys(ABT, in1))
        s2.append(tpb[n] * sum_polys(ABT, in2).scale((-1) ** n))
        s3.append(tma[n] * sum_polys(ABT, in3))
    return sum_polys(ABT, s1), sum_polys(ABT, s2), sum_polys(ABT, s3)


def identity_terms(k: int, perturb: Perturbation | None = None) -> tuple[Polynomial, Polynomial, Polynomial]:
    """P1, P2, P3 with their prefixes; the identity is P1 - P2 - P3 = 0."""
    s1, s2, s3 = identity_parts(k, perturb)
    return (A + B) ** (2 * k + 1) * s1, _mono(2 * k + 1, 0) * s2, _mono(0, 2 * k + 1) * s3


def build_identity_lhs(k: int, perturb: Perturbation | None = None) -> Polynomial:
    p1, p2, p3 = identity_terms(k, perturb)
    return p1 - p2 - p3


def verify_identity(k: int, perturb: Perturbation | None = None) -> VerificationReport:
    report = VerificationReport()
    with timer() as t:
        lhs = build_identity_lhs(k, perturb)
    witness = {"k": k, "terms": len(lhs)}
    if lhs:
        m, c = lhs.leading_term()
        witness["first_nonzero_term"] = format_poly(Polynomial.from_monomial(ABT, m, c))
    tag = " (perturbed)" if perturb else ""
    report.add(f"identity expands to 0 at k={k}{tag}", "identity", lhs.is_zero(), witness, t[0])
    return report


# coefficient-by-coefficient route


def t_coefficient(f: Polynomial, m: int) -> Polynomial:
    """Coefficient of T^m, as a polynomial in A, B (kept in the ABT context)."""
    return Polynomial(ABT, {(a, b, 0): c for (a, b, t), c in f.terms.items() if t == m})


def reduced_parts(k: int, m: int) -> tuple[Polynomial, Polynomial, Polynomial]:
    """The T^m equation after dividing by binom(k,m) (AB)^(k-m)."""
    apb = _Powers(A + B)
    r1 = sum_polys(ABT, (
        _mono(m - i, i).scale((-1) ** (k + i) * binom(k + i, k) * binom(k + m - i, k))
        for i in range(m + 1)))
    r2, r3 = [], []
    for n in range(m, k + 1):
        c = binom(k - m, n - m)
        for i in range(n + 1):
            w = c * binom(k + i, k) * binom(k + n - i, k)
            r2.append(apb[k - i] * _mono(0, i).scale((-1) ** n * w))
            r3.append(apb[k - i] * _mono(i, 0).scale((-1) ** (n - m) * w))
    return (
        apb[2 * k + 1] * r1,
        _mono(k + m + 1, 0) * sum_polys(ABT, r2),
        _mono(0, k + m + 1) * sum_polys(ABT, r3),
    )


def high_case_p2_sum(k: int, m: int, r: int) -> int:
    """The double sum for the A^(k+m+1+r) B^(k-r) coefficient of the second part."""
    return sum((-1) ** n * binom(k - m, n - m) * binom(k - i, r) * binom(k + i, k) * binom(k + n - i, k)
               for n in range(m, k + 1) for i in range(0, k - r + 1))


def high_case_after_lemma2(k: int, m: int, r: int) -> int:
    # inner alternating n-sum replaced by (-1)^k binom(k+m-i, m)
    return sum((-1) ** k * binom(k - i, r) * binom(k + i, k) * binom(k + m - i, m)
               for i in range(0, k - r + 1))


def verify_coefficient_cases(k: int, m: int) -> VerificationReport:
    """Mirror the coefficient-of-T^m argument and compare every coefficient with the lemma values."""
    if not 0 <= m <= k:
        raise ValueError(f"need 0 <= m <= k, got k={k}, m={m}")
    report = VerificationReport()
    bad: list[dict] = []
    with timer() as t:
        full = identity_terms(k)
        red = reduced_parts(k, m)
        scale = _mono(k - m, k - m).scale(binom(k, m))
        for j, (part, r) in enumerate(zip(full, red), start=1):
            if t_coefficient(part, m) != scale * r:
                bad.append({"step": "divide", "part": j})
        r1, r2, r3 = red
        deg = 2 * k + 1 + m
        sign_k = (-1) ** k
        checked = 0
        for beta in range(deg + 1):
            mono = (deg - beta, beta, 0)
            c1, c2, c3 = r1.coefficient(mono), r2.coefficient(mono), r3.coefficient(mono)
            if beta <= k:
                r = k - beta
                want1 = sign_k * lemma1_closed(k, k + 1 + r, m)
                routes2 = (high_case_p2_sum(k, m, r), high_case_after_lemma2(k, m, r),
                           sign_k * lemma3_closed(k, k - r, m))
                ok = (c1 == want1 == sign_k * lemma1_sum(k, k + 1 + r, m)
                      and all(c2 == x for x in routes2) and c3 == 0)
                case = "high"
            elif beta <= k + m:
                r = beta - k - 1
                want1 = sign_k * lemma1_closed(k, k - r, m)
                ok = c1 == want1 == sign_k * lemma1_sum(k, k - r, m) == 0 and c2 == 0 and c3 == 0
                case = "low"
            else:
                r = beta - (k + m + 1)
                mirror = (-1) ** m * sign_k
                want1 = mirror * lemma1_closed(k, k + 1 + r, m)
                want3 = mirror * lemma3_closed(k, k - r, m)
                ok = c1 == want1 and c3 == want3 and c2 == 0
                case = "mirror"
            ok = ok and c1 - c2 - c3 == 0
            checked += 1
            if not ok:
                bad.append({"case": case, "r": r, "coefficients": [c1, c2, c3]})
    report.add(f"T^{m} coefficient cases at k={k}", "coefficient_cases", not bad,
               {"k": k, "m": m, "coefficients": checked, "violations": bad[:5]}, t[0])
    return report


def verify_binom_product(k_max: int) -> VerificationReport:
    report = VerificationReport()
    bad = []
    with timer() as t:
        for k in range(k_max + 1):
            for n in range(k + 1):
                for m in range(n + 1):
                    if binom(k, m) * binom(k - m, n - m) != binom(k, n) * binom(n, m):
                        bad.append([k, n, m])
    report.add(f"binom(k,m)binom(k-m,n-m) = binom(k,n)binom(n,m), k <= {k_max}", "binom_product",
               not bad, {"violations": bad[:5]}, t[0])
    return report


# splitting off n = 0 and dividing by p


@dataclass(frozen=True)
class ModPDecomposition:
    p: int
    k: int
    S1: Polynomial
    S2: Polynomial
    S3: Polynomial

    def __iter__(self):
        return iter((self.S1, self.S2, self.S3))

    def assembled(self) -> Polynomial:
        k = self.k
        return -(A + B) ** (2 * k + 1) * self.S1 + _mono(2 * k + 1, 0) * self.S2 + _mono(0, 2 * k + 1) * self.S3

    def n0_terms(self) -> Polynomial:
        k = self.k
        return ((A + B) ** (k + 1) * (-1) ** k - _mono(k + 1, 0) - _mono(0, k + 1)) * (A * B * (A + B)) ** k

    def target(self) -> Polynomial:
        """(1/p)((A+B)^q + (-A)^q + (-B)^q)((A+B)AB)^k with q = k+1."""
        q = self.k + 1
        return (((A + B) ** q + (-A) ** q + (-B) ** q) * ((A + B) * A * B) ** self.k).exact_div(self.p)


def build_mod_p_decomposition(p: int, e: int | None = None, *, k: int | None = None) -> ModPDecomposition:
    """Split the identity at k = p^e - 1 into n = 0 terms and p times (S1, S2, S3).

    Passing ``k`` directly allows probing other k; the division then raises
    NotDivisible unless every w(n,i) with n >= 1 is a multiple of p.
    """
    if k is None:
        if e is None or e < 1:
            raise ValueError("need e >= 1 or an explicit k")
        k = p ** e - 1
    s1, s2, s3 = identity_parts(k, n_min=1, divisor=p)
    # the sum of the parts carries signs/prefixes; S_j are the plain inner sums
    return ModPDecomposition(p, k, s1, s2, s3)


def verify_decomposition(dec: ModPDecomposition) -> VerificationReport:
    report = VerificationReport()
    with timer() as t:
        assembled = dec.assembled()
        lhs = dec.n0_terms().exact_div(dec.p)
        sign = (-1) ** dec.k
        ok = assembled == lhs and lhs == dec.target().scale(sign) and dec.n0_terms() == assembled.scale(dec.p)
    diff = assembled - lhs
    report.add(f"mod-p decomposition at p={dec.p}, k={dec.k}", "decomposition", ok,
               {"p": dec.p, "k": dec.k, "terms": [len(dec.S1), len(dec.S2), len(dec.S3)],
                "difference": format_poly(diff) if diff else "0"}, t[0])
    return report


# family support: explicit Z-combinations of the bracket generators


def family_combinations(dec: ModPDecomposition) -> list[dict[tuple[int, int], int]]:
    """Integer coefficients on generator pairs (a, c) for each S_j.

    S1 uses T^a A^(k-a) * T^c B^(k-c); S2 uses T^a B^(k-a) * (T+B)^c (A+B)^(k-c);
    S3 uses T^a A^(k-a) * (T-A)^c (A+B)^(k-c).
    """
    k, p = dec.k, dec.p
    combos: list[dict[tuple[int, int], int]] = [{}, {}, {}]

    def put(j, key, c):
        d = combos[j]
        d[key] = d.get(key, 0) + c
        if not d[key]:
            del d[key]

    for n in range(1, k + 1):
        for i in range(n + 1):
            w = binom(k, n) * binom(k + i, k) * binom(k + n - i, k) // p
            put(0, (i, n - i), (-1) ** (k + i) * w)
            for j in range(n - i + 1):
                c = binom(n - i, j) * w
                # (T+B)^(n-i) B^(k-n+i) = sum_j binom(n-i,j) T^j B^(k-j)
                put(1, (j, i), (-1) ** n * c)
                # (T-A)^(n-i) A^(k-n+i) = sum_j binom(n-i,j) (-1)^(n-i-j) T^j A^(k-j)
                put(2, (j, i), (-1) ** (n - i - j) * c)
    return combos


def family_generator(j: int, k: int, a: int, c: int) -> Polynomial:
    if j == 0:
        return _mono(k - a, 0, a) * _mono(0, k - c, c)
    if j == 1:
        return _mono(0, k - a, a) * (T + B) ** c * (A + B) ** (k - c)
    return _mono(k - a, 0, a) * (T - A) ** c * (A + B) ** (k - c)


def verify_family_support(dec: ModPDecomposition) -> VerificationReport:
    report = VerificationReport()
    k = dec.k
    violations = []
    with timer() as t:
        for j, (combo, s) in enumerate(zip(family_combinations(dec), dec)):
            rebuilt = sum_polys(ABT, (family_generator(j, k, a, c).scale(coef) for (a, c), coef in combo.items()))
            if rebuilt != s:
                lt = (rebuilt - s).leading_term()
                violations.append({"family": j + 1,
                                   "witness": format_poly(Polynomial.from_monomial(ABT, *lt))})
    report.add(f"S1, S2, S3 are Z-combinations of their bracket families at p={dec.p}, k={k}",
               "family_support", not violations, {"violations": violations}, t[0])
    return report
