import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import XYZ, XYZ_L, coefficients, polynomials
from lcverify.grading import UVWXYZ
from lcverify.polyring import (ContextMismatch, NegativeExponent, NotDivisible, Polynomial, VarContext,
                               add, coefficient_of, divide_by_int, format_poly, monomial_shift, mul,
                               parse_poly, power, substitute)

u, v, w, x, y, z = UVWXYZ.gens()
D1, D2, D3 = v * z - w * y, w * x - u * z, u * y - v * x


def P(text, ctx=UVWXYZ):
    return parse_poly(text, ctx)


def test_add_examples():
    assert add(x, -x).is_zero()
    assert add(D1, UVWXYZ.zero()) == D1
    assert add(v * z - w * y, w * y - v * z).is_zero()


def test_mul_examples():
    assert mul(u, D1) == P("u*v*z-u*w*y")
    assert mul(D1, UVWXYZ.one()) == D1
    # hand expansion
    assert mul(D1, D2) == P("v*w*x*z - u*v*z^2 - w^2*x*y + u*w*y*z")


def test_pow_examples():
    assert power(D1, 0) == 1
    assert power(D1, 2) == P("v^2*z^2 - 2*v*w*y*z + w^2*y^2")
    for p in (2, 3, 5, 7, 11):
        assert coefficient_of(power(x + y, p), UVWXYZ.monomial(x=p - 1, y=1)) == p


def test_divide_by_int_examples():
    assert divide_by_int(P("2*x+4*y"), 2) == P("x+2*y")
    ux, vy = u * x, v * y
    f = ux ** 2 + vy ** 2 + (-ux - vy) ** 2
    assert divide_by_int(f, 2) == P("u^2*x^2 + v^2*y^2 + u*v*x*y")
    with pytest.raises(NotDivisible):
        divide_by_int(x, 2)
    with pytest.raises(ZeroDivisionError):
        divide_by_int(x, 0)


def test_coefficient_of_examples():
    X, Y = VarContext(("x", "y")).gens()
    assert coefficient_of(X ** 2 + X * Y + Y ** 2, (1, 1)) == 1
    assert coefficient_of(D1, UVWXYZ.monomial(v=1, z=1)) == 1
    assert coefficient_of(UVWXYZ.zero(), UVWXYZ.monomial(u=3)) == 0


def test_substitute_examples():
    L = UVWXYZ.with_laurent()
    ABT = VarContext(("A", "B", "T"))
    A, B, T = ABT.gens()
    xu = Polynomial.from_monomial(L, L.monomial(x=1, u=-1))
    yv = Polynomial.from_monomial(L, L.monomial(y=1, v=-1))
    zw = Polynomial.from_monomial(L, L.monomial(z=1, w=-1))
    img = substitute(A + B, {"A": zw - xu, "B": xu - yv, "T": -xu})
    assert img == zw - yv
    # matches D1 / (vw)
    assert img.shift(L.monomial(v=1, w=1)).in_context(UVWXYZ) == D1

    XY = VarContext(("x", "y"))
    X, Y = XY.gens()
    lam3 = ((u * x) ** 3 + (v * y) ** 3 + (w * z) ** 3)
    g = substitute(lam3, {"u": XY.one(), "v": XY.one(), "w": XY.one(), "x": X, "y": Y, "z": -X - Y})
    assert divide_by_int(g, 3) == -X ** 2 * Y - X * Y ** 2

    ident = {n: g for n, g in zip(UVWXYZ.names, UVWXYZ.gens())}
    assert substitute(D1 * D2 + 7, ident) == D1 * D2 + 7


def test_monomial_shift_examples():
    L = VarContext(("u", "x"), laurent=True)
    f = Polynomial(L, {(-1, 1): 1})
    assert monomial_shift(f, (1, 0)) == Polynomial(L, {(0, 1): 1})
    assert monomial_shift(f, (1, 0), VarContext(("u", "x"))).ctx.laurent is False
    q, k = 3, 2
    one = Polynomial.constant(UVWXYZ.with_laurent(), 1)
    got = monomial_shift(one, (q + 2 * k,) * 3 + (0, 0, 0))
    assert got == (u * v * w).in_context(UVWXYZ.with_laurent()) ** (q + 2 * k)
    g = monomial_shift(Polynomial(L, {(-2, 0): 1}), (1, 0))
    assert g == Polynomial(L, {(-1, 0): 1}) and not g.is_polynomial()
    with pytest.raises(NegativeExponent):
        monomial_shift(Polynomial(L, {(-2, 0): 1}), (1, 0), VarContext(("u", "x")))


def test_context_errors():
    other = VarContext(("a", "b"))
    with pytest.raises(ContextMismatch):
        add(x, other.var("a"))
    with pytest.raises(NegativeExponent):
        Polynomial(XYZ, {(-1, 0, 0): 1})
    with pytest.raises(ValueError):
        VarContext(("x", "x"))
    with pytest.raises(ContextMismatch):
        substitute(x, {"x": x})


def test_textual_format():
    assert format_poly(UVWXYZ.zero()) == "0"
    assert format_poly(D1) == "v*z-w*y"
    assert format_poly(P("-x^2*y + 3 - u")) == "-u-x^2*y+3"
    L = XYZ_L
    f = Polynomial(L, {(-1, 2, 0): -5, (0, 0, 0): 1})
    assert parse_poly(format_poly(f), L) == f
    assert format_poly(f) == "1-5*x^-1*y^2"


def test_matches_sympy_expansion():
    # independent expansion oracle
    su, sv, sw, sx, sy, sz = sympy.symbols("u v w x y z")
    sD = [sv * sz - sw * sy, sw * sx - su * sz, su * sy - sv * sx]
    q = 3
    ours = ((u * D1) ** q + (v * D2) ** q + (w * D3) ** q).exact_div(3) * (D1 * D2 * D3) ** 2
    theirs = sympy.Poly(sympy.expand(((su * sD[0]) ** q + (sv * sD[1]) ** q + (sw * sD[2]) ** q) / 3
                                     * (sD[0] * sD[1] * sD[2]) ** 2), su, sv, sw, sx, sy, sz)
    assert {tuple(m): int(c) for m, c in theirs.terms()} == ours.terms


# ring axioms on randomized inputs

@settings(max_examples=1000)
@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + (-f)).terms == {}


@settings(max_examples=300)
@given(polynomials(max_terms=3, max_exp=2), st.integers(0, 4), st.integers(0, 4))
def test_pow_additive(f, a, b):
    assert f ** (a + b) == (f ** a) * (f ** b)


@settings(max_examples=300)
@given(polynomials(XYZ_L), polynomials(XYZ_L))
def test_laurent_ring_axioms(f, g):
    assert (f * g) * f == f * (g * f)
    assert f * (g - g) == XYZ_L.zero()
    assert all(c != 0 for c in (f * g).terms.values())


@settings(max_examples=300)
@given(polynomials(), coefficients.filter(bool))
def test_divide_inverts_scale(f, n):
    assert divide_by_int(f.scale(n), n) == f


@settings(max_examples=250)
@given(polynomials(max_terms=4, max_exp=2), polynomials(max_terms=4, max_exp=2),
       st.lists(polynomials(max_terms=2, max_exp=1), min_size=3, max_size=3))
def test_substitute_is_homomorphism(f, g, images):
    imgs = dict(zip(XYZ.names, images))
    assert substitute(f * g, imgs) == substitute(f, imgs) * substitute(g, imgs)
    assert substitute(f + g, imgs) == substitute(f, imgs) + substitute(g, imgs)


@settings(max_examples=200)
@given(polynomials(XYZ_L))
def test_format_roundtrip(f):
    text = format_poly(f)
    assert parse_poly(text, XYZ_L) == f
    assert format_poly(parse_poly(text, XYZ_L)) == text


@settings(max_examples=200)
@given(polynomials(max_terms=4, max_exp=2), polynomials(max_terms=4, max_exp=2),
       st.tuples(*[st.integers(-5, 5)] * 3))
def test_mul_matches_evaluation(f, g, point):
    # evaluation at integer points is an independent check on the product
    def ev(p):
        return sum(c * point[0] ** a * point[1] ** b * point[2] ** d for (a, b, d), c in p.terms.items())
    assert ev(f * g) == ev(f) * ev(g)
