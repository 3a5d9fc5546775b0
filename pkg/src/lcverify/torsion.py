"""p-torsion witnesses in H^3_(x,y,z) of the hypersurface Z[u,v,w,x,y,z]/(ux+vy+wz).

Elements of the quotient are kept in normal form: no monomial divisible by
wz, using the rewrite wz -> -ux - vy.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .binomial import is_prime
from .grading import GRADING_HYP, UVWXYZ, enumerate_monomials, homogeneous_degree
from .hochster import GradedSystem, graded_system
from .polyring import Polynomial, VarContext, format_poly, substitute, sum_polys
from .report import VerificationReport, timer
from .zlinalg import NoSolution, solve_diophantine

u, v, w, x, y, z = UVWXYZ.gens()
RELATION = u * x + v * y + w * z
WZ = UVWXYZ.monomial(w=1, z=1)
XY = VarContext(("x", "y"))

_W, _Z = UVWXYZ.index("w"), UVWXYZ.index("z")


def normal_form(f: Polynomial) -> Polynomial:
    """Reduce modulo ux + vy + wz.

    A monomial m = m' (wz)^t with wz not dividing m' becomes m' (-ux-vy)^t;
    the result has no wz-divisible monomial, so one pass suffices.
    """
    if f.ctx.names != UVWXYZ.names:
        raise ValueError("normal_form works in Z[u,v,w,x,y,z]")
    neg = -(u * x + v * y)
    powers = {0: UVWXYZ.one()}
    parts = []
    plain = {}
    for m, c in f.terms.items():
        t = min(m[_W], m[_Z])
        if not t:
            plain[m] = c
            continue
        if t not in powers:
            powers[t] = neg ** t
        rest = list(m)
        rest[_W] -= t
        rest[_Z] -= t
        parts.append(powers[t] * Polynomial.from_monomial(UVWXYZ, tuple(rest), c))
    return sum_polys(UVWXYZ, [Polynomial(UVWXYZ, plain)] + parts)


@dataclass(frozen=True)
class HypersurfaceElement:
    representative: Polynomial

    @classmethod
    def of(cls, f: Polynomial) -> HypersurfaceElement:
        return cls(normal_form(f))

    def __add__(self, other: HypersurfaceElement) -> HypersurfaceElement:
        return HypersurfaceElement(self.representative + other.representative)

    def __sub__(self, other: HypersurfaceElement) -> HypersurfaceElement:
        return HypersurfaceElement(self.representative - other.representative)

    def __mul__(self, other: HypersurfaceElement) -> HypersurfaceElement:
        return HypersurfaceElement.of(self.representative * other.representative)

    def is_zero(self) -> bool:
        return self.representative.is_zero()

    def __str__(self) -> str:
        return format_poly(self.representative)


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def lambda_p(p: int) -> HypersurfaceElement:
    """((ux)^p + (vy)^p + (wz)^p)/p in normal form; integral because ux+vy+wz = 0 in R."""
    _check_prime(p)
    return HypersurfaceElement(normal_form((u * x) ** p + (v * y) ** p + (w * z) ** p).exact_div(p))


def verify_p_annihilation(p: int) -> VerificationReport:
    lam = lambda_p(p)
    combo = normal_form(u ** p * x ** p + v ** p * y ** p + w ** p * z ** p)
    diff = lam.representative.scale(p) - combo
    report = VerificationReport()
    report.add(f"p*lambda = u^p x^p + v^p y^p + w^p z^p in R at p={p}", "torsion_annihilation", diff.is_zero(),
               {"cofactors": [f"u^{p}", f"v^{p}", f"w^{p}"], "difference": format_poly(diff)})
    return report


def cofactor_degrees(p: int, k: int) -> tuple[tuple[int, ...], ...]:
    a = p + k
    return (0, a, a, p), (a, 0, a, p), (a, a, 0, p)


def expected_cofactor_monomials(p: int, k: int) -> tuple[tuple[int, ...], ...]:
    m = UVWXYZ.monomial
    return m(u=p, y=k, z=k), m(v=p, z=k, x=k), m(w=p, x=k, y=k)


def cofactor_support(p: int, k: int) -> VerificationReport:
    """Each forced cofactor degree holds exactly one normal-form monomial."""
    report = VerificationReport()
    found, bad = [], []
    gens = (x ** (p + k), y ** (p + k), z ** (p + k))
    xyz_k = (x * y * z) ** k
    tops = ((u * x) ** p, (v * y) ** p, (w * z) ** p)
    for d, want, g, top in zip(cofactor_degrees(p, k), expected_cofactor_monomials(p, k), gens, tops):
        got = enumerate_monomials(GRADING_HYP, d, exclude=WZ)
        found.append([list(m) for m in got])
        if got != [want]:
            bad.append({"degree": list(d), "monomials": [list(m) for m in got]})
        if Polynomial.from_monomial(UVWXYZ, want) * g != xyz_k * top:
            bad.append({"identity": list(want)})
    report.add(f"unique cofactor monomials at p={p}, k={k}", "torsion_uniqueness", not bad,
               {"monomials": found, "violations": bad})
    return report


def cofactor_uniqueness(p: int, k_max: int) -> VerificationReport:
    """Aggregate of cofactor_support over 0 <= k <= k_max, as one row."""
    report = VerificationReport()
    bad = []
    with timer() as t:
        for k in range(k_max + 1):
            sub = cofactor_support(p, k)
            if not sub.passed:
                bad.append({"k": k, **sub.rows[0].witness})
    report.add(f"unique cofactor monomials at p={p}, k=0..{k_max}", "torsion_uniqueness", not bad,
               {"k_max": k_max, "violations": bad[:3]}, t[0])
    return report


def specialization_map() -> dict[str, Polynomial]:
    X, Y = XY.gens()
    one = XY.one()
    return {"u": one, "v": one, "w": one, "x": X, "y": Y, "z": -X - Y}


def specialize(f: Polynomial) -> Polynomial:
    return substitute(f, specialization_map(), XY)


def in_p_xp_yp(g: Polynomial, p: int) -> bool:
    """Membership in (p, x^p, y^p) Z[x,y]: every x^a y^b with a, b < p has coefficient 0 mod p."""
    return all(c % p == 0 for (a, b), c in g.terms.items() if a < p and b < p)


def specialization_nonvanishing(p: int) -> VerificationReport:
    _check_prime(p)
    X, Y = XY.gens()
    g = (X ** p + Y ** p + (X + Y) ** p * (-1) ** p).exact_div(p)
    coeff = g.coefficient((p - 1, 1))
    member = in_p_xp_yp(g, p)
    via_lambda = specialize(lambda_p(p).representative) == g
    report = VerificationReport()
    report.add(f"x^(p-1)y coefficient is (-1)^p and g not in (p,x^p,y^p) at p={p}", "torsion_specialization",
               coeff == (-1) ** p and not member and via_lambda,
               {"coefficient": coeff, "in_ideal": member, "matches_lambda": via_lambda,
                "g": format_poly(g) if len(g) <= 12 else f"{len(g)} terms"})
    return report


@dataclass
class OracleOutcome:
    """Result of the linear membership test in R."""

    system: GradedSystem = field(repr=False)
    solution: list[int] | None = None
    refutation: NoSolution | None = field(default=None, repr=False)

    @property
    def member(self) -> bool:
        return self.solution is not None

    def cofactors(self) -> tuple[Polynomial, ...]:
        return self.system.cofactors(self.solution) if self.solution is not None else ()


def membership_refutation_oracle(p: int, k: int, *, target: Polynomial | None = None,
                                 max_k: int = 20, force: bool = False) -> OracleOutcome:
    """Solve target = c1 x^(p+k) + c2 y^(p+k) + c3 z^(p+k) in R over the integers.

    Defaults to target = lambda (xyz)^k.  Cofactor candidates are all
    normal-form monomials of the forced GRADING_HYP degrees.
    """
    _check_prime(p)
    if k > max_k and not force:
        raise ValueError(f"k={k} exceeds the torsion-oracle guard {max_k}")
    if target is None:
        target = lambda_p(p).representative * (x * y * z) ** k
    target = normal_form(target)
    gens = [x ** (p + k), y ** (p + k), z ** (p + k)]
    system = graded_system(target, gens, GRADING_HYP, exclude=WZ, reduce=normal_form)
    res = solve_diophantine(system.matrix, system.rhs)
    if isinstance(res, NoSolution):
        if not res.verify(system.matrix, system.rhs):
            raise ArithmeticError("refutation certificate failed to verify")
        return OracleOutcome(system, None, res)
    lhs = sum_polys(UVWXYZ, (normal_form(c * g) for c, g in zip(system.cofactors(res), gens)))
    if lhs != target:
        raise ArithmeticError("oracle solution does not reproduce the target")
    return OracleOutcome(system, res, None)


@dataclass
class TorsionWitnessReport(VerificationReport):
    p: int = 0

    @property
    def verdict(self) -> bool:
        """eta is a nonzero p-torsion element, asserted only when every check passed."""
        return bool(self.rows) and all(r.status == "pass" for r in self.rows)


def torsion_witness(p: int, k_max: int = 20, oracle_k_max: int = 3) -> TorsionWitnessReport:
    """Five rows per prime: integrality, annihilation, uniqueness, specialization, oracle."""
    _check_prime(p)
    report = TorsionWitnessReport(p=p)
    with timer() as t:
        raw = normal_form((u * x) ** p + (v * y) ** p + (w * z) ** p)
        integral = all(c % p == 0 for c in raw.terms.values())
        lam = lambda_p(p) if integral else None
    report.add(f"lambda integral in R at p={p}", "torsion_integrality", integral,
               {"terms": len(lam.representative) if lam else None,
                "homogeneous_degree": list(homogeneous_degree(GRADING_HYP, lam.representative)) if lam else None},
               t[0])
    report.extend(verify_p_annihilation(p))
    report.extend(cofactor_uniqueness(p, k_max))
    report.extend(specialization_nonvanishing(p))
    with timer() as t:
        outcomes = {k: membership_refutation_oracle(p, k) for k in range(oracle_k_max + 1)}
    refuted = [k for k, o in outcomes.items() if not o.member]
    report.add(f"lambda (xyz)^k not in (x^(p+k),y^(p+k),z^(p+k))R at p={p}, k=0..{oracle_k_max}", "torsion_oracle",
               len(refuted) == len(outcomes),
               {"refuted_k": refuted,
                "certificates": {str(k): {"kind": o.refutation.kind, "column": o.refutation.column}
                                 for k, o in outcomes.items() if o.refutation is not None}}, t[0])
    return report

