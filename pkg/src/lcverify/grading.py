"""N^4 multigradings on the six-variable ring and enumeration of graded pieces."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .polyring import Monomial, Polynomial, VarContext

MultiDegree = tuple[int, int, int, int]

UVWXYZ = VarContext(("u", "v", "w", "x", "y", "z"))


class NotHomogeneous(ValueError):
    def __init__(self, degrees: dict):
        self.degrees = degrees
        super().__init__(f"polynomial has terms in {len(degrees)} distinct degrees")


class ZeroPolynomial(ValueError):
    pass


class UnboundedSearch(ValueError):
    pass


@dataclass(frozen=True)
class Grading:
    ctx: VarContext
    weights: tuple[MultiDegree, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.weights) != self.ctx.arity:
            raise ValueError("one weight per variable required")
        if any(len(w) != 4 or min(w) < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative 4-vectors")

    @classmethod
    def from_map(cls, ctx: VarContext, weights: dict[str, MultiDegree], name: str = "") -> Grading:
        return cls(ctx, tuple(tuple(weights[n]) for n in ctx.names), name)

    def weight(self, name: str) -> MultiDegree:
        return self.weights[self.ctx.index(name)]


GRADING_DET = Grading.from_map(
    UVWXYZ,
    {
        "u": (1, 0, 0, 0), "v": (0, 1, 0, 0), "w": (0, 0, 1, 0),
        "x": (1, 0, 0, 1), "y": (0, 1, 0, 1), "z": (0, 0, 1, 1),
    },
    "det",
)

GRADING_HYP = Grading.from_map(
    UVWXYZ,
    {
        "u": (0, 1, 1, 1), "v": (1, 0, 1, 1), "w": (1, 1, 0, 1),
        "x": (1, 0, 0, 0), "y": (0, 1, 0, 0), "z": (0, 0, 1, 0),
    },
    "hyp",
)

PRESETS = {"det": GRADING_DET, "hyp": GRADING_HYP}


def degree_of_monomial(g: Grading, m: Monomial) -> MultiDegree:
    if len(m) != g.ctx.arity:
        raise ValueError(f"monomial {m} has wrong arity")
    if any(e < 0 for e in m):
        raise ValueError(f"laurent monomial {m} has no N^4 degree")
    d = [0, 0, 0, 0]
    for e, w in zip(m, g.weights):
        if e:
            for c in range(4):
                d[c] += e * w[c]
    return tuple(d)


def homogeneous_components(g: Grading, f: Polynomial) -> dict[MultiDegree, Polynomial]:
    parts: dict[MultiDegree, dict] = {}
    for m, c in f.terms.items():
        parts.setdefault(degree_of_monomial(g, m), {})[m] = c
    return {d: Polynomial(f.ctx, t) for d, t in sorted(parts.items())}


def homogeneous_degree(g: Grading, f: Polynomial) -> MultiDegree:
    """Common degree of all terms of ``f``; raises NotHomogeneous otherwise."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no degree")
    degrees: dict[MultiDegree, Monomial] = {}
    for m in f.monomials():
        degrees.setdefault(degree_of_monomial(g, m), m)
    if len(degrees) > 1:
        raise NotHomogeneous(degrees)
    return next(iter(degrees))


def is_homogeneous(g: Grading, f: Polynomial) -> bool:
    try:
        homogeneous_degree(g, f)
    except (NotHomogeneous, ZeroPolynomial):
        return False
    return True


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def enumerate_monomials(
    g: Grading,
    d: Iterable[int],
    exclude: Monomial | Iterable[Monomial] | None = None,
) -> list[Monomial]:
    """All monomials of degree ``d``, minus those divisible by an ``exclude`` monomial.

    Depth-first over the variables; each exponent is bounded by the residual
    degree on the coordinates where its weight is positive.  Output is in
    descending lexicographic order, matching polynomial canonical order.
    """
    d = tuple(d)
    if len(d) != 4 or min(d) < 0:
        return []
    if any(not any(w) for w in g.weights):
        raise UnboundedSearch("a variable of weight zero makes the graded piece infinite")
    if exclude is None:
        excl: list[Monomial] = []
    elif exclude and isinstance(next(iter(exclude)), int):
        excl = [tuple(exclude)]
    else:
        excl = [tuple(m) for m in exclude]

    n = g.ctx.arity
    weights = g.weights
    out: list[Monomial] = []
    exps = [0] * n

    def rec(i: int, res: list[int]) -> None:
        if i == n:
            if not any(res):
                m = tuple(exps)
                if not any(_divides(x, m) for x in excl):
                    out.append(m)
            return
        w = weights[i]
        bound = min(res[c] // w[c] for c in range(4) if w[c])
        for e in range(bound, -1, -1):
            exps[i] = e
            rec(i + 1, [res[c] - e * w[c] for c in range(4)])
        exps[i] = 0

    rec(0, list(d))
    return out
