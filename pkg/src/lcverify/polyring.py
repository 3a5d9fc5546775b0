"""Sparse multivariate polynomials with arbitrary-precision integer coefficients.

A polynomial is a map from exponent tuples to nonzero Python ints, tied to a
:class:`VarContext`.  Contexts flagged ``laurent`` allow negative exponents,
which is how denominators such as ``x/u`` are carried around without leaving
integer arithmetic.

Values are immutable once built; every operation returns a new polynomial.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

Monomial = tuple[int, ...]


class ContextMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    """Raised when an exact integer division of coefficients fails."""

    def __init__(self, divisor: int, monomial: Monomial | None = None, coefficient: int | None = None):
        self.divisor = divisor
        self.monomial = monomial
        self.coefficient = coefficient
        super().__init__(f"coefficient {coefficient} at {monomial} is not divisible by {divisor}")


class NegativeExponent(ValueError):
    def __init__(self, monomial: Monomial):
        self.monomial = monomial
        super().__init__(f"negative exponent in {monomial} for a non-laurent context")


@dataclass(frozen=True)
class VarContext:
    names: tuple[str, ...]
    laurent: bool = False

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names or any(not n for n in names):
            raise ValueError("variable names must be nonempty")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def one(self) -> Polynomial:
        return Polynomial.constant(self, 1)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def var(self, name: str) -> Polynomial:
        e = [0] * self.arity
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.var(n) for n in self.names)

    def monomial(self, **exps: int) -> Monomial:
        """Exponent tuple from keyword exponents, e.g. ``ctx.monomial(u=2, y=1)``."""
        e = [0] * self.arity
        for name, k in exps.items():
            e[self.index(name)] = k
        m = tuple(e)
        self.check_monomial(m)
        return m

    def check_monomial(self, m: Monomial) -> None:
        if len(m) != self.arity:
            raise ContextMismatch(f"monomial {m} has arity {len(m)}, context has {self.arity}")
        if not self.laurent and any(e < 0 for e in m):
            raise NegativeExponent(m)

    def with_laurent(self, laurent: bool = True) -> VarContext:
        return VarContext(self.names, laurent)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x + y for x, y in zip(a, b)])


class Polynomial:
    """Immutable sparse polynomial; equality is structural on the canonical form."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: VarContext, terms: Mapping[Monomial, int] | None = None, *, _trusted: bool = False):
        self.ctx = ctx
        if _trusted:
            self._terms = terms
        else:
            clean: dict[Monomial, int] = {}
            for m, c in (terms or {}).items():
                m = tuple(m)
                ctx.check_monomial(m)
                if c:
                    clean[m] = clean.get(m, 0) + int(c)
                    if not clean[m]:
                        del clean[m]
            self._terms = clean
        self._hash = None

    # constructors

    @classmethod
    def constant(cls, ctx: VarContext, c: int) -> Polynomial:
        return cls(ctx, {(0,) * ctx.arity: c} if c else {}, _trusted=True)

    @classmethod
    def from_monomial(cls, ctx: VarContext, m: Monomial, c: int = 1) -> Polynomial:
        ctx.check_monomial(m)
        return cls(ctx, {tuple(m): c} if c else {}, _trusted=True)

    # inspection

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Monomial, int]]:
        """Terms in canonical order: descending lexicographic on exponents."""
        return sorted(self._terms.items(), reverse=True)

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms, reverse=True)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(e >= 0 for m in self._terms for e in m)

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(tuple(m), 0)

    def leading_term(self) -> tuple[Monomial, int] | None:
        if not self._terms:
            return None
        m = max(self._terms)
        return m, self._terms[m]

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def degree_in(self, name: str) -> int:
        i = self.ctx.index(name)
        return max((m[i] for m in self._terms), default=0)

    def max_abs_coefficient(self) -> int:
        return max((abs(c) for c in self._terms.values()), default=0)

    # arithmetic

    def _check(self, other: Polynomial) -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx.names} vs {other.ctx.names}")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ctx, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.ctx, {m: -c for m, c in self._terms.items()}, _trusted=True)

    def __pos__(self) -> Polynomial:
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Monomial, int] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple([x + y for x, y in zip(ma, mb)])
                out[m] = get(m, 0) + ca * cb
        return Polynomial(self.ctx, {m: c for m, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def scale(self, n: int) -> Polynomial:
        if not n:
            return self.ctx.zero()
        return Polynomial(self.ctx, {m: c * n for m, c in self._terms.items()}, _trusted=True)

    def __pow__(self, n: int) -> Polynomial:
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a nonnegative int, got {n!r}")
        if len(self._terms) == 1:
            (m, c), = self._terms.items()
            return Polynomial(self.ctx, {tuple(e * n for e in m): c ** n}, _trusted=True)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, n: int) -> Polynomial:
        if n == 0:
            raise ZeroDivisionError("division of a polynomial by 0")
        out = {}
        for m, c in self._terms.items():
            qt, r = divmod(c, n)
            if r:
                raise NotDivisible(n, m, c)
            out[m] = qt
        return Polynomial(self.ctx, out, _trusted=True)

    def shift(self, m: Monomial) -> Polynomial:
        """Multiply by the monomial ``m`` (which may carry negative exponents)."""
        if len(m) != self.ctx.arity:
            raise ContextMismatch(f"monomial {m} has wrong arity")
        out = {_mono_mul(a, m): c for a, c in self._terms.items()}
        return Polynomial(self.ctx, out, _trusted=True) if self.ctx.laurent else Polynomial(self.ctx, out)

    def in_context(self, ctx: VarContext) -> Polynomial:
        """Reinterpret under a context with the same variable names."""
        if ctx.names != self.ctx.names:
            raise ContextMismatch(f"{self.ctx.names} vs {ctx.names}")
        if not ctx.laurent:
            for m in self._terms:
                if any(e < 0 for e in m):
                    raise NegativeExponent(m)
        return Polynomial(ctx, self._terms, _trusted=True)

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == Polynomial.constant(self.ctx, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx.names == other.ctx.names and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx.names, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


# module-level operations


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f * g


def power(f: Polynomial, n: int) -> Polynomial:
    return f ** n


def divide_by_int(f: Polynomial, n: int) -> Polynomial:
    return f.exact_div(n)


def coefficient_of(f: Polynomial, m: Monomial) -> int:
    if len(m) != f.ctx.arity:
        raise ContextMismatch(f"monomial {m} has wrong arity")
    return f.coefficient(m)


def monomial_shift(f: Polynomial, m: Monomial, ctx: VarContext | None = None) -> Polynomial:
    """Return ``f * m``; with a non-laurent ``ctx`` the result must clear all denominators."""
    g = f.shift(m)
    return g.in_context(ctx) if ctx is not None else g


def substitute(f: Polynomial, images: Mapping[str, Polynomial], target: VarContext | None = None) -> Polynomial:
    """Ring-homomorphic image of ``f`` under ``name -> image``.

    Every variable of ``f``'s context must be mapped.  Negative exponents are
    only allowed on variables whose image is a unit monomial (coefficient +-1).
    """
    missing = [n for n in f.ctx.names if n not in images]
    if missing:
        raise ContextMismatch(f"no image for variables {missing}")
    imgs = [images[n] for n in f.ctx.names]
    if target is None:
        if not imgs:
            raise ContextMismatch("empty substitution")
        target = imgs[0].ctx
    for g in imgs:
        if g.ctx.names != target.names:
            raise ContextMismatch(f"image in context {g.ctx.names}, expected {target.names}")
    cache: dict[tuple[int, int], Polynomial] = {}

    def pw(i: int, e: int) -> Polynomial:
        key = (i, e)
        if key not in cache:
            if e >= 0:
                cache[key] = imgs[i] ** e
            else:
                cache[key] = _invert_unit_monomial(imgs[i], target) ** (-e)
        return cache[key]

    acc: dict[Monomial, int] = {}
    for m, c in f._terms.items():
        t = Polynomial.constant(target, c)
        for i, e in enumerate(m):
            if e:
                t = t * pw(i, e)
        for mm, cc in t._terms.items():
            s = acc.get(mm, 0) + cc
            if s:
                acc[mm] = s
            else:
                acc.pop(mm, None)
    out = Polynomial(target, acc, _trusted=True)
    if not target.laurent:
        out.in_context(target)
    return out


def _invert_unit_monomial(g: Polynomial, ctx: VarContext) -> Polynomial:
    if len(g) != 1:
        raise ValueError(f"cannot invert non-monomial {g}")
    (m, c), = g._terms.items()
    if c not in (1, -1):
        raise ValueError(f"cannot invert monomial with coefficient {c}")
    return Polynomial(ctx, {tuple(-e for e in m): c})


# textual format:  terms  +-c*v1^e1*...*vn^en, coefficient 1 and exponent 1 elided


def format_term(ctx: VarContext, m: Monomial, c: int) -> str:
    factors = []
    for name, e in zip(ctx.names, m):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    a = abs(c)
    if not factors:
        body = str(a)
    elif a == 1:
        body = "*".join(factors)
    else:
        body = f"{a}*" + "*".join(factors)
    return ("-" if c < 0 else "+") + body


def format_poly(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    s = "".join(format_term(f.ctx, m, c) for m, c in f.items())
    return s[1:] if s[0] == "+" else s


_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?$")


def parse_poly(text: str, ctx: VarContext) -> Polynomial:
    """Inverse of :func:`format_poly`; whitespace is tolerated."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    terms: dict[Monomial, int] = {}
    # split at +/- that are not exponent signs (i.e. not directly after '^')
    parts = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur.strip() and not cur.rstrip().endswith("^"):
            parts.append(cur)
            cur = ch
        else:
            cur += ch
    parts.append(cur)
    for part in parts:
        part = part.replace(" ", "")
        if not part:
            raise ValueError(f"malformed polynomial text {text!r}")
        sign = 1
        if part[0] in "+-":
            sign = -1 if part[0] == "-" else 1
            part = part[1:]
        if not part:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = 1
        e = [0] * ctx.arity
        for factor in part.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            mt = _FACTOR.match(factor)
            if not mt:
                raise ValueError(f"malformed factor {factor!r} in {text!r}")
            name, exp = mt.group(1), mt.group(2)
            if name not in ctx.names:
                raise ContextMismatch(f"unknown variable {name!r}")
            e[ctx.index(name)] += int(exp) if exp is not None else 1
        m = tuple(e)
        ctx.check_monomial(m)
        terms[m] = terms.get(m, 0) + sign * coeff
    return Polynomial(ctx, terms)


def sum_polys(ctx: VarContext, polys: Iterable[Polynomial]) -> Polynomial:
    acc: dict[Monomial, int] = {}
    for p in polys:
        for m, c in p._terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
    return Polynomial(ctx, acc, _trusted=True)
