import itertools

import pytest
from hypothesis import given, settings, strategies as st

from lcverify.grading import (GRADING_DET, GRADING_HYP, PRESETS, UVWXYZ, Grading, NotHomogeneous, UnboundedSearch,
                              ZeroPolynomial, degree_of_monomial, enumerate_monomials, homogeneous_components,
                              homogeneous_degree, is_homogeneous)
from lcverify.polyring import Polynomial, sum_polys

u, v, w, x, y, z = UVWXYZ.gens()
mono = UVWXYZ.monomial
six_exps = st.tuples(*[st.integers(0, 4)] * 6)


def test_degree_examples():
    assert degree_of_monomial(GRADING_DET, mono(v=1, z=1)) == (0, 1, 1, 1)
    for p, k in [(2, 1), (3, 4), (7, 0)]:
        assert degree_of_monomial(GRADING_HYP, mono(u=p, y=k, z=k)) == (0, p + k, p + k, p)
    for g in PRESETS.values():
        assert degree_of_monomial(g, mono()) == (0, 0, 0, 0)
    with pytest.raises(ValueError):
        degree_of_monomial(GRADING_DET, (-1, 0, 0, 0, 0, 0))


def test_homogeneous_degree_examples():
    assert homogeneous_degree(GRADING_DET, w * x - u * z) == (1, 0, 1, 1)
    assert homogeneous_degree(GRADING_HYP, u * x + v * y + w * z) == (1, 1, 1, 1)
    with pytest.raises(NotHomogeneous):
        homogeneous_degree(GRADING_DET, u + x)
    with pytest.raises(ZeroPolynomial):
        homogeneous_degree(GRADING_DET, UVWXYZ.zero())
    assert not is_homogeneous(GRADING_DET, u + x)


def test_enumerate_examples():
    assert enumerate_monomials(GRADING_HYP, (0, 3, 3, 2)) == [mono(u=2, y=1, z=1)]
    assert enumerate_monomials(GRADING_DET, (0, 1, 1, 1)) == [mono(v=1, z=1), mono(w=1, y=1)]
    for g in PRESETS.values():
        assert enumerate_monomials(g, (0, 0, 0, 0)) == [mono()]
    assert enumerate_monomials(GRADING_HYP, (2, 2, 2, 2), exclude=mono(w=1, z=1)) == [
        m for m in enumerate_monomials(GRADING_HYP, (2, 2, 2, 2)) if not (m[2] and m[5])]


def test_zero_weight_is_rejected():
    g = Grading(UVWXYZ, ((0, 0, 0, 0),) + GRADING_DET.weights[1:], "bad")
    with pytest.raises(UnboundedSearch):
        enumerate_monomials(g, (1, 1, 1, 1))


@settings(max_examples=300)
@given(six_exps, six_exps, st.sampled_from(list(PRESETS.values())))
def test_degree_is_additive(a, b, g):
    ab = tuple(i + j for i, j in zip(a, b))
    da, db = degree_of_monomial(g, a), degree_of_monomial(g, b)
    assert degree_of_monomial(g, ab) == tuple(i + j for i, j in zip(da, db))


@settings(max_examples=200)
@given(st.dictionaries(six_exps, st.integers(-5, 5).filter(bool), max_size=8),
       st.sampled_from(list(PRESETS.values())))
def test_components_sum_back(terms, g):
    f = Polynomial(UVWXYZ, terms)
    parts = homogeneous_components(g, f)
    assert sum_polys(UVWXYZ, parts.values()) == f
    for d, part in parts.items():
        assert homogeneous_degree(g, part) == d


@pytest.mark.parametrize("g", list(PRESETS.values()), ids=list(PRESETS))
def test_enumeration_matches_bounding_box(g):
    # brute force: every exponent vector in [0, 3]^6, bucketed by degree
    buckets = {}
    for m in itertools.product(range(4), repeat=6):
        buckets.setdefault(degree_of_monomial(g, m), set()).add(m)
    for d in itertools.product(range(4), repeat=4):
        got = enumerate_monomials(g, d)
        assert len(got) == len(set(got))
        assert set(got) == buckets.get(d, set())
        assert got == sorted(got, reverse=True)
