import itertools
from fractions import Fraction

import pytest
from hypothesis import given

from ptlab.gf2 import BoolFn, LinearForm, make_disjunction
from ptlab.patterns import (
    P100, P110, P111, PatternClass, count_ordered_violations, count_triangles,
    has_pattern, pattern_histogram, rejection_probability,
)
from ptlab.properties import enumerate_property, FREE100

from conftest import AND2, bool_fns


def brute_count(f, ones):
    N = f.size
    return sum(f(x) + f(y) + f(x ^ y) == ones for x in range(N) for y in range(N))


def brute_triangles(f):
    tri = set()
    for x, y in itertools.product(range(f.size), repeat=2):
        if f(x) and f(y) and f(x ^ y):
            tri.add(frozenset((x, y, x ^ y)))
    return tri


def test_has_pattern_examples():
    assert has_pattern(AND2, 3, 1, P100)
    ones = BoolFn.ones(2)
    assert has_pattern(ones, 1, 2, P111)
    zeros = BoolFn.zeros(2)
    assert not any(has_pattern(zeros, x, y, p) for x in range(4) for y in range(4) for p in (P100, P110, P111))


def test_pattern_class_parsing():
    assert PatternClass.parse("(1,0,0)") == P100
    assert PatternClass.parse("110") == P110
    assert P111.label == "111" and str(P111) == "(1,1,1)"
    with pytest.raises(ValueError):
        PatternClass(0)
    # order never matters
    assert P100.matches(0, 1, 0) and P100.matches(0, 0, 1)


def test_count_examples():
    assert count_ordered_violations(AND2, P100) == 6
    assert rejection_probability(AND2, P100) == Fraction(3, 8)
    f = make_disjunction([LinearForm(2, 1), LinearForm(2, 2)])
    assert count_ordered_violations(f, P111) == 6
    assert rejection_probability(BoolFn.ones(2), P111) == 1
    assert rejection_probability(BoolFn.zeros(3), P100) == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_free100_members_have_no_violation(n):
    for f in enumerate_property(FREE100, n):
        assert count_ordered_violations(f, P100) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_order_invariance_exhaustive(n):
    N = 1 << n
    for code in range(1 << N):
        f = BoolFn.from_code(n, code)
        for x, y in itertools.product(range(N), repeat=2):
            for p in (P100, P110, P111):
                assert has_pattern(f, x, y, p) == has_pattern(f, y, x, p)


@given(bool_fns(max_n=4))
def test_order_invariance_sampled(f):
    for x in range(f.size):
        for y in range(x, f.size):
            assert has_pattern(f, x, y, P110) == has_pattern(f, y, x, P110)


@given(bool_fns(max_n=4))
def test_counts_match_brute_force(f):
    hist = pattern_histogram(f)
    assert int(hist.sum()) == f.size ** 2
    for p in (P100, P110, P111):
        assert count_ordered_violations(f, p) == brute_count(f, p.ones)


def test_census_examples():
    f = make_disjunction([LinearForm(2, 1), LinearForm(2, 2)])
    c = count_triangles(f)
    assert c.unordered_count == 1
    assert c.per_point == {1: 1, 2: 1, 3: 1}
    g = make_disjunction([LinearForm(3, 1), LinearForm(3, 2)])
    c = count_triangles(g)
    assert c.unordered_count == 4
    assert set(c.per_point.values()) == {2}
    assert count_triangles(BoolFn.zeros(3)).unordered_count == 0
    # degenerate {0,x,x} and {0,0,0} count once each
    assert count_triangles(BoolFn.ones(2)).unordered_count == 5


@given(bool_fns(max_n=4))
def test_census_matches_brute_force(f):
    tri = brute_triangles(f)
    c = count_triangles(f)
    assert c.unordered_count == len(tri)
    for x in range(f.size):
        assert c.per_point.get(x, 0) == sum(x in t for t in tri)
    nondegenerate = [t for t in tri if len(t) == 3]
    if len(nondegenerate) == len(tri):
        assert sum(c.per_point.values()) == 3 * c.unordered_count


@given(bool_fns(max_n=4))
def test_census_removal_consistency(f):
    c = count_triangles(f)
    for x, k in c.per_point.items():
        assert count_triangles(f.flip(x)).unordered_count == c.unordered_count - k


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_two_form_disjunction_census(n):
    N = 1 << n
    for a, b in itertools.permutations(range(1, N), 2):
        c = count_triangles(make_disjunction([LinearForm(n, a), LinearForm(n, b)]))
        assert c.unordered_count == N * N // 16
        assert set(c.per_point.values()) == {N // 4}
