import pytest
import sympy

from lcverify.binomial import binom
from lcverify.identity import (ABT, A, B, T, Perturbation, build_identity_lhs, build_mod_p_decomposition,
                               family_combinations, family_generator, identity_terms, t_coefficient,
                               verify_binom_product, verify_coefficient_cases, verify_decomposition,
                               verify_family_support, verify_identity)
from lcverify.polyring import NotDivisible, Polynomial


def sympy_lhs(k):
    a, b, t = sympy.symbols("A B T")
    w = lambda n, i: sympy.binomial(k + i, k) * sympy.binomial(k + n - i, k)
    rng = [(n, i) for n in range(k + 1) for i in range(n + 1)]
    p1 = (a + b) ** (2 * k + 1) * sum(sympy.binomial(k, n) * t ** n * (-1) ** (k + i) * a ** (k - i)
                                      * b ** (k - n + i) * w(n, i) for n, i in rng)
    p2 = a ** (2 * k + 1) * sum(sympy.binomial(k, n) * (-1) ** n * (t + b) ** n * (a + b) ** (k - i)
                                * b ** (k - n + i) * w(n, i) for n, i in rng)
    p3 = b ** (2 * k + 1) * sum(sympy.binomial(k, n) * (t - a) ** n * (a + b) ** (k - i)
                                * a ** (k - n + i) * w(n, i) for n, i in rng)
    return [sympy.Poly(sympy.expand(e), a, b, t) for e in (p1, p2, p3)]


def as_terms(poly):
    return {tuple(m): int(c) for m, c in poly.terms()}


def test_k0_collapses():
    p1, p2, p3 = identity_terms(0)
    assert (p1, p2, p3) == (A + B, A, B)
    assert build_identity_lhs(0).is_zero()


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_parts_match_sympy_expansion(k):
    ours = identity_terms(k)
    theirs = sympy_lhs(k)
    for mine, ref in zip(ours, theirs):
        assert mine.terms == as_terms(ref)


@pytest.mark.parametrize("k", range(0, 9))
def test_identity_vanishes(k):
    assert build_identity_lhs(k).is_zero()


def test_q8_case():
    assert verify_identity(7).passed


def test_perturbed_binomial_fails_with_witness():
    rep = verify_identity(1, Perturbation(part=1, n=1, i=0, factor=0))
    assert not rep.passed
    row = rep.rows[0]
    assert row.status == "fail" and row.witness["first_nonzero_term"]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_every_single_perturbation_is_detected(k):
    for part in (1, 2, 3):
        for n in range(k + 1):
            for i in range(n + 1):
                for factor in range(3):
                    for delta in (1, -1):
                        lhs = build_identity_lhs(k, Perturbation(part, n, i, factor, delta))
                        assert not lhs.is_zero(), (part, n, i, factor, delta)


def test_t_coefficient():
    f = T ** 2 * A + 3 * T * B - A * B
    assert t_coefficient(f, 1) == 3 * B
    assert t_coefficient(f, 0) == -A * B
    assert t_coefficient(f, 5).is_zero()


def test_coefficient_cases_examples():
    assert verify_coefficient_cases(1, 0).passed
    rep = verify_coefficient_cases(2, 1)
    assert rep.passed


@pytest.mark.parametrize("k", range(0, 6))
def test_coefficient_cases_small(k):
    for m in range(k + 1):
        rep = verify_coefficient_cases(k, m)
        assert rep.passed, [r.witness for r in rep.failures]


def test_binom_product():
    assert verify_binom_product(12).passed


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_decomposition(p, e):
    dec = build_mod_p_decomposition(p, e)
    assert dec.k == p ** e - 1
    assert verify_decomposition(dec).passed
    # the n = 0 part equals p times the assembled sum
    assert dec.n0_terms() == dec.assembled().scale(p)
    assert dec.assembled() == dec.target().scale((-1) ** dec.k)
    assert all(isinstance(c, int) for s in dec for c in s.terms.values())


def test_decomposition_needs_prime_power_minus_one():
    with pytest.raises(NotDivisible):
        build_mod_p_decomposition(2, k=2)
    with pytest.raises(NotDivisible):
        build_mod_p_decomposition(3, k=3)


def test_family_examples():
    dec = build_mod_p_decomposition(2, 1)
    combos = family_combinations(dec)
    # S1 only involves n >= 1, so a + c >= 1 for every generator used
    assert combos[0] and all(a + c >= 1 for a, c in combos[0])
    assert verify_family_support(dec).passed
    assert verify_family_support(build_mod_p_decomposition(3, 1)).passed


def test_generic_term_factorization():
    for k in range(4):
        for n in range(k + 1):
            for i in range(n + 1):
                g = family_generator(0, k, i, n - i)
                assert g == Polynomial.from_monomial(ABT, (k - i, k - n + i, n))


def test_family_support_detects_tampering():
    dec = build_mod_p_decomposition(3, 1)
    bad = type(dec)(dec.p, dec.k, dec.S1 + T ** 3, dec.S2, dec.S3)
    rep = verify_family_support(bad)
    assert not rep.passed and rep.rows[0].witness["violations"][0]["family"] == 1


def test_weights_divisible_for_n_positive():
    for p, e in [(2, 3), (3, 2), (7, 1)]:
        k = p ** e - 1
        for n in range(1, k + 1):
            for i in range(n + 1):
                assert binom(k + i, k) * binom(k + n - i, k) % p == 0
