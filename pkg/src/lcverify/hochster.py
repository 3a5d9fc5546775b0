"""Membership certificates for lambda_q (D1 D2 D3)^k in (D1^(q+k), D2^(q+k), D3^(q+k)).

D1, D2, D3 are the 2x2 minors of the generic 2x3 matrix [[u,v,w],[x,y,z]].
Two independent routes produce cofactors c1, c2, c3 for k = q - 1: pulling
the mod-p split of the ABT identity back through A = z/w - x/u,
B = x/u - y/v, T = -x/u, and solving the graded linear system over Z.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .binomial import is_prime, verify_divisibility_family
from .grading import GRADING_DET, UVWXYZ, enumerate_monomials, homogeneous_degree
from .identity import ABT, ModPDecomposition, build_mod_p_decomposition, verify_decomposition, verify_family_support
from .polyring import NegativeExponent, Polynomial, VarContext, format_poly, substitute, sum_polys
from .report import REFUTED, SKIPPED, VerificationReport, timer
from .zlinalg import IntMatrix, NoSolution, solve_diophantine

LAURENT = UVWXYZ.with_laurent()

u, v, w, x, y, z = UVWXYZ.gens()


class NonzeroResidual(ArithmeticError):
    def __init__(self, residual: Polynomial):
        self.residual = residual
        lt = residual.leading_term()
        self.witness = format_poly(Polynomial.from_monomial(residual.ctx, *lt)) if lt else "0"
        super().__init__(f"certificate residual is nonzero, leading term {self.witness}")


class SupportViolation(ValueError):
    def __init__(self, index: int, monomial):
        self.index, self.monomial = index, monomial
        super().__init__(f"c{index} has monomial {monomial} outside its family")


class SizeGuard(ValueError):
    pass


@dataclass(frozen=True)
class DeterminantalData:
    D1: Polynomial
    D2: Polynomial
    D3: Polynomial

    @property
    def minors(self) -> tuple[Polynomial, Polynomial, Polynomial]:
        return self.D1, self.D2, self.D3

    @property
    def matrix(self) -> tuple[tuple[Polynomial, ...], tuple[Polynomial, ...]]:
        return (u, v, w), (x, y, z)


def determinantal_data() -> DeterminantalData:
    return DeterminantalData(v * z - w * y, w * x - u * z, u * y - v * x)


DET = determinantal_data()


def _check_pe(p: int, e: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError(f"e must be positive, got {e}")
    return p ** e


def frobenius_sum(q: int) -> Polynomial:
    return (u * DET.D1) ** q + (v * DET.D2) ** q + (w * DET.D3) ** q


def lambda_q(p: int, e: int) -> Polynomial:
    """((u D1)^q + (v D2)^q + (w D3)^q) / p, exactly."""
    return frobenius_sum(_check_pe(p, e)).exact_div(p)


def syzygy_check() -> VerificationReport:
    report = VerificationReport()
    first = u * DET.D1 + v * DET.D2 + w * DET.D3
    second = x * DET.D1 + y * DET.D2 + z * DET.D3
    report.add("u*D1 + v*D2 + w*D3 = 0", "syzygy", first.is_zero(), {"value": format_poly(first)})
    report.add("x*D1 + y*D2 + z*D3 = 0", "syzygy", second.is_zero(), {"value": format_poly(second)})
    return report


def bridge_images() -> dict[str, Polynomial]:
    """A = z/w - x/u, B = x/u - y/v, T = -x/u in the laurent ring."""
    xu = Polynomial.from_monomial(LAURENT, LAURENT.monomial(x=1, u=-1))
    yv = Polynomial.from_monomial(LAURENT, LAURENT.monomial(y=1, v=-1))
    zw = Polynomial.from_monomial(LAURENT, LAURENT.monomial(z=1, w=-1))
    return {"A": zw - xu, "B": xu - yv, "T": -xu}


def pull_back(f: Polynomial, shift: tuple[int, ...], ctx: VarContext = UVWXYZ) -> Polynomial:
    """Substitute the bridge into an ABT polynomial, multiply by a monomial, clear denominators."""
    g = substitute(f, bridge_images(), LAURENT).shift(shift)
    return g.in_context(ctx)


def bridge_to_three_vars(p: int, e: int) -> VerificationReport:
    q = _check_pe(p, e)
    k = q - 1
    report = VerificationReport()
    with timer() as t:
        dec = ModPDecomposition(p, k, ABT.zero(), ABT.zero(), ABT.zero())
        target = dec.target()
        try:
            pulled = pull_back(target, (q + 2 * k,) * 3 + (0, 0, 0))
            expected = lambda_q(p, e) * (DET.D1 * DET.D2 * DET.D3) ** k
            ok = pulled == expected
            witness = {"q": q, "k": k, "terms": len(expected)}
        except NegativeExponent as exc:
            ok, witness = False, {"q": q, "k": k, "negative_exponent": list(exc.monomial)}
    report.add(f"bridge to Z[A,B,T] at q={q}", "bridge", ok, witness, t[0])
    return report


@dataclass
class MembershipCertificate:
    q: int
    k: int
    cofactors: tuple[Polynomial, Polynomial, Polynomial]
    residual: Polynomial
    provenance: str
    p: int = 0

    @property
    def c1(self) -> Polynomial:
        return self.cofactors[0]

    @property
    def c2(self) -> Polynomial:
        return self.cofactors[1]

    @property
    def c3(self) -> Polynomial:
        return self.cofactors[2]

    def residual_hash(self) -> str:
        return hashlib.sha256(format_poly(self.residual).encode()).hexdigest()

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "k": self.k,
            "generator_power": self.q + self.k,
            "provenance": self.provenance,
            "cofactors": [format_poly(c) for c in self.cofactors],
            "residual": format_poly(self.residual),
            "residual_sha256": self.residual_hash(),
        }


def certificate_residual(lam: Polynomial, cofactors, q: int, k: int) -> Polynomial:
    lhs = lam * (DET.D1 * DET.D2 * DET.D3) ** k
    return lhs - sum_polys(UVWXYZ, (c * d ** (q + k) for c, d in zip(cofactors, DET.minors)))


def cofactor_degrees(q: int, k: int) -> tuple[tuple[int, ...], ...]:
    a, b = q + 2 * k, 2 * k
    return (a, k, k, b), (k, a, k, b), (k, k, a, b)


def family_monomials(q: int, k: int) -> tuple[set, set, set]:
    """u^q [uy,vx]^k [uz,wx]^k and its two rotations, as exponent tuples."""
    def mono(**e):
        return UVWXYZ.monomial(**e)

    def prod(*ms):
        return tuple(sum(c) for c in zip(*ms))

    def fam(lead, s1, s2, t1, t2):
        out = set()
        for i in range(k + 1):
            for j in range(k + 1):
                parts = [lead] + [s1] * i + [s2] * (k - i) + [t1] * j + [t2] * (k - j)
                out.add(prod(*parts))
        return out

    return (
        fam(mono(u=q), mono(u=1, y=1), mono(v=1, x=1), mono(u=1, z=1), mono(w=1, x=1)),
        fam(mono(v=q), mono(v=1, z=1), mono(w=1, y=1), mono(v=1, x=1), mono(u=1, y=1)),
        fam(mono(w=q), mono(w=1, x=1), mono(u=1, z=1), mono(w=1, y=1), mono(v=1, z=1)),
    )


def constructive_cofactors(dec: ModPDecomposition, q: int) -> tuple[Polynomial, Polynomial, Polynomial]:
    k = dec.k
    sign = (-1) ** (k + 1)
    shifts = (
        (q + 2 * k, k, k, 0, 0, 0),
        (k, q + 2 * k, k, 0, 0, 0),
        (k, k, q + 2 * k, 0, 0, 0),
    )
    return tuple(pull_back(s, sh).scale(sign) for s, sh in zip(dec, shifts))


def build_and_verify_certificate(p: int, e: int, *, lam: Polynomial | None = None) -> MembershipCertificate:
    """Constructive certificate for k = q - 1, fully re-verified.

    Raises NonzeroResidual, SupportViolation or NegativeExponent when a step
    fails.  ``lam`` replaces lambda_q (for mutation controls).
    """
    q = _check_pe(p, e)
    k = q - 1
    dec = build_mod_p_decomposition(p, e)
    cofactors = constructive_cofactors(dec, q)
    if lam is None:
        lam = lambda_q(p, e)
    residual = certificate_residual(lam, cofactors, q, k)
    if residual:
        raise NonzeroResidual(residual)
    for i, (c, d, fam) in enumerate(zip(cofactors, cofactor_degrees(q, k), family_monomials(q, k)), start=1):
        if c and homogeneous_degree(GRADING_DET, c) != d:
            raise SupportViolation(i, homogeneous_degree(GRADING_DET, c))
        for m in c.monomials():
            if m not in fam:
                raise SupportViolation(i, m)
    return MembershipCertificate(q, k, cofactors, residual, "constructive", p)


def oracle_membership(p: int, e: int, k: int | None = None, *, target: Polynomial | None = None,
                      max_q: int = 9, force: bool = False) -> MembershipCertificate | NoSolution:
    """Decide the graded membership by an integer linear system, independently of the identity.

    Unknowns are ordered by (generator index, support monomial in descending
    lex order).  ``target`` overrides lambda_q (D1 D2 D3)^k.
    """
    q = _check_pe(p, e)
    if q > max_q and not force:
        raise SizeGuard(f"q={q} exceeds the linear-oracle guard {max_q}")
    if k is None:
        k = q - 1
    if target is None:
        target = lambda_q(p, e) * (DET.D1 * DET.D2 * DET.D3) ** k
    gens = [d ** (q + k) for d in DET.minors]
    system = graded_system(target, gens)
    result = solve_diophantine(system.matrix, system.rhs)
    if isinstance(result, NoSolution):
        return result
    cofactors = system.cofactors(result)
    residual = target - sum_polys(UVWXYZ, (c * g for c, g in zip(cofactors, gens)))
    if residual:
        raise NonzeroResidual(residual)
    return MembershipCertificate(q, k, cofactors, residual, "linear-oracle", p)


@dataclass
class GradedSystem:
    """Columns are expansions of (support monomial) * generator over a common row basis."""

    unknowns: list[tuple[int, tuple[int, ...]]]
    rows: list[tuple[int, ...]]
    matrix: IntMatrix
    rhs: list[int]
    ctx: VarContext = field(default=UVWXYZ)

    def cofactors(self, sol: list[int]) -> tuple[Polynomial, ...]:
        acc: list[dict] = [{} for _ in range(3)]
        for (i, m), c in zip(self.unknowns, sol):
            if c:
                acc[i][m] = c
        return tuple(Polynomial(self.ctx, a) for a in acc)


def graded_system(target: Polynomial, gens: list[Polynomial], grading=GRADING_DET,
                  exclude=None, reduce=None) -> GradedSystem:
    """Integer system for target = sum c_i gens_i with c_i homogeneous of the forced degrees."""
    dt = homogeneous_degree(grading, target)
    unknowns, columns = [], []
    for i, g in enumerate(gens):
        dg = homogeneous_degree(grading, g)
        d = tuple(a - b for a, b in zip(dt, dg))
        for m in enumerate_monomials(grading, d, exclude):
            col = Polynomial.from_monomial(g.ctx, m) * g
            if reduce is not None:
                col = reduce(col)
            unknowns.append((i, m))
            columns.append(col)
    rowset = set(target.terms)
    for col in columns:
        rowset.update(col.terms)
    rows = sorted(rowset, reverse=True)
    index = {m: r for r, m in enumerate(rows)}
    entries = [[0] * len(columns) for _ in rows]
    for j, col in enumerate(columns):
        for m, c in col.terms.items():
            entries[index[m]][j] = c
    rhs = [target.coefficient(m) for m in rows]
    return GradedSystem(unknowns, rows, IntMatrix(len(rows), len(columns), entries), rhs, target.ctx)


def run_hochster(p: int, e: int, *, oracle: bool = True, max_q: int = 16, oracle_max_q: int = 9,
                 force: bool = False) -> VerificationReport:
    """Every check of the construction for one q = p^e, in a fixed order."""
    q = _check_pe(p, e)
    if q > max_q and not force:
        raise SizeGuard(f"q={q} exceeds the construction guard {max_q}")
    k = q - 1
    report = VerificationReport()
    report.extend(syzygy_check())

    with timer() as t:
        lam = lambda_q(p, e)
        deg = homogeneous_degree(GRADING_DET, lam)
        fsum = frobenius_sum(q)
    report.add(f"lambda_q integral at q={q}", "lambda_q", lam.scale(p) == fsum,
               {"terms": len(lam)}, t[0])
    report.add(f"lambda_q homogeneous of degree (q,q,q,q) at q={q}", "lambda_q_degree",
               deg == (q, q, q, q), {"degree": list(deg)})
    pcomb = lam.scale(p) - sum_polys(UVWXYZ, (mono ** q * d ** q for mono, d in zip((u, v, w), DET.minors)))
    report.add(f"p*lambda_q = u^q D1^q + v^q D2^q + w^q D3^q at q={q}", "p_eta_q", pcomb.is_zero(),
               {"cofactors": [f"u^{q}", f"v^{q}", f"w^{q}"]})

    report.extend(verify_divisibility_family(p, e))
    dec = build_mod_p_decomposition(p, e)
    report.extend(verify_decomposition(dec))
    report.extend(verify_family_support(dec))
    report.extend(bridge_to_three_vars(p, e))

    with timer() as t:
        try:
            cert = build_and_verify_certificate(p, e)
            ok, witness = True, {"certificate": cert.to_json(), "summary": "certificate residual = 0"}
        except (NonzeroResidual, SupportViolation, NegativeExponent) as exc:
            cert, ok, witness = None, False, {"error": str(exc)}
    report.add(f"constructive certificate at q={q}: certificate residual = 0", "certificate", ok, witness, t[0])
    if cert is not None:
        degs = [list(homogeneous_degree(GRADING_DET, c)) for c in cert.cofactors if c]
        report.add(f"cofactor degrees at q={q}", "cofactor_degrees",
                   degs == [list(d) for d in cofactor_degrees(q, k)], {"degrees": degs})
        report.add(f"cofactor supports inside the monomial families at q={q}", "cofactor_support", True,
                   {"support_sizes": [len(c) for c in cert.cofactors]})

    agree = None
    if oracle and (q <= oracle_max_q or force):
        with timer() as t:
            res = oracle_membership(p, e, max_q=oracle_max_q, force=force)
        if isinstance(res, NoSolution):
            report.add(f"linear oracle at q={q}", "oracle", False,
                       {"kind": res.kind, "column": res.column}, t[0])
            agree = False
        else:
            report.add(f"linear oracle at q={q}", "oracle", res.residual.is_zero(),
                       {"unknowns": 3 * (k + 1) ** 2, "residual": format_poly(res.residual),
                        "cofactor_terms": [len(c) for c in res.cofactors]}, t[0])
            agree = cert is not None
    elif oracle:
        report.add(f"linear oracle at q={q}", "oracle", SKIPPED, {"reason": f"q > {oracle_max_q}"})

    conjecture_witness = {"q": q, "k": k, "oracle_agrees": agree}
    report.add(f"eta_q = 0 at q={q} (Hochster's conjecture fails for this q)", "eta_q",
               REFUTED if cert is not None and agree is not False else False, conjecture_witness)
    return report
