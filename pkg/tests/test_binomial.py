import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lcverify.binomial import (LemmaInstance, OutOfRange, binom, binom_pascal, cbinom,
                               certificate_point, first_primes, is_prime, kummer_carries, lemma_eval,
                               lemma_instances, padic_valuation_binom, padic_valuation_int, product_display,
                               verify_certificate, verify_divisibility_family, verify_lemmas)


def test_binom_examples():
    assert all(binom(n, 0) == 1 for n in range(10))
    assert binom(5, -1) == 0
    assert binom(6, 4) == 15
    assert binom(3, 5) == 0
    with pytest.raises(ValueError):
        binom(-2, 1)
    # the summation convention extends to negative tops
    assert cbinom(-2, 1) == 0 and cbinom(-1, -1) == 0


def test_binom_matches_pascal():
    table = binom_pascal(60)
    for n in range(61):
        for k in range(n + 1):
            assert binom(n, k) == table[n][k] == math.comb(n, k)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_legendre_equals_kummer(p):
    for n in range(501):
        for k in range(n + 1):
            assert padic_valuation_binom(p, n, k) == kummer_carries(p, k, n - k)
    # and both equal the valuation of the number itself, spot-checked
    for n in range(0, 120, 7):
        for k in range(n + 1):
            assert padic_valuation_binom(p, n, k) == padic_valuation_int(p, math.comb(n, k))


def test_valuation_examples():
    assert padic_valuation_binom(2, 2, 1) == 1
    assert padic_valuation_binom(3, 4, 2) == 1
    assert padic_valuation_binom(5, 17, 0) == 0
    with pytest.raises(ValueError):
        padic_valuation_binom(2, 3, 4)


def test_primes():
    assert first_primes(10) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert [n for n in range(30) if is_prime(n)] == first_primes(10)


def test_divisibility_examples():
    assert binom(2, 1) % 2 == 0
    assert [binom(3 + r, 3) for r in (1, 2, 3)] == [4, 10, 20]
    assert [binom(2 + r, 2) for r in (1, 2)] == [3, 6]
    for p, e in [(2, 1), (2, 2), (3, 1)]:
        assert verify_divisibility_family(p, e).passed


def test_divisibility_needs_r_below_q():
    # at r = q the family stops being divisible: binom(2q-1, q-1) is prime to p
    for p, e in [(2, 1), (2, 3), (3, 2), (5, 1)]:
        q = p ** e
        assert binom(2 * q - 1, q - 1) % p != 0


@settings(max_examples=200)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 3), st.data())
def test_product_display(p, e, data):
    q = p ** e
    r = data.draw(st.integers(1, q - 1))
    val = product_display(p, e, r)
    assert val == Fraction(binom(q - 1 + r, q - 1))


def test_lemma_examples():
    assert lemma_eval(LemmaInstance(1, (1, 2, 1))) == (4, 4)
    assert lemma_eval(LemmaInstance(1, (2, 2, 1))) == (0, 0)
    for a in range(6):
        for k in range(4):
            lhs, rhs = lemma_eval(LemmaInstance(2, (0, a, k)))
            assert lhs == rhs == binom(a, k)
    assert lemma_eval(LemmaInstance(2, (1, 3, 2))) == (-3, -3)
    assert lemma_eval(LemmaInstance(3, (2, 1, 1))) == (12, 12)


def test_lemma_range_refusal():
    # s < k+1-m is outside both stated cases
    with pytest.raises(OutOfRange):
        LemmaInstance(1, (3, 1, 1))
    with pytest.raises(OutOfRange):
        LemmaInstance(4, (1, 1, 1))
    with pytest.raises(OutOfRange):
        LemmaInstance(2, (-1, 1, 1))
    assert not LemmaInstance.in_range(1, (3, 0, 2))


def test_lemmas_small_box():
    insts = list(lemma_instances(4))
    assert {i.which for i in insts} == {1, 2, 3}
    for inst in insts:
        lhs, rhs = lemma_eval(inst)
        assert lhs == rhs, inst
    rep = verify_lemmas(4)
    assert rep.passed and len(rep.rows) == 3


def test_certificate_examples():
    for m in range(3):
        for i in range(4):
            assert certificate_point(1, (2, 3), m, i) in (True, None)
    for s in range(3):
        for j in range(4):
            assert certificate_point(2, (2, 4), s, j) in (True, None)
    assert certificate_point(3, (2, 1), 2, 3) is None


def test_certificate_boxes_small():
    for which in (1, 2, 3):
        rep = verify_certificate(which, range(0, 4))
        assert rep.passed, rep.rows[0].witness
        assert rep.rows[0].witness["points"] > 0

