import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ptlab.gf2 import (
    BoolFn, DimensionError, LinearForm, PointF2n, dist, evaluate, format_tt,
    linear_functions, make_disjunction, parse_tt, read_tt, support, weight, write_tt,
)

from conftest import AND2, OR2, bool_fns, brute_dist, fn_pairs


def test_point_index_convention():
    # strings are written x_n ... x_1, so "01" is x_1 = 1, index 1
    p = PointF2n.from_string("01")
    assert p.bits == 1 and str(p) == "01"
    assert (PointF2n(3, 5) + PointF2n(3, 3)).bits == 6
    assert PointF2n(3, 5).dot(PointF2n(3, 7)) == 0
    assert PointF2n(3, 7).weight == 3


def test_point_bounds():
    with pytest.raises(ValueError):
        PointF2n(2, 4)
    with pytest.raises(ValueError):
        PointF2n(0, 0)
    with pytest.raises(ValueError):
        PointF2n(25, 0)


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1),
                                                      st.integers(0, (1 << n) - 1), st.integers(0, (1 << n) - 1))))
def test_point_xor_group(args):
    n, a, b, c = args
    p, q, r = PointF2n(n, a), PointF2n(n, b), PointF2n(n, c)
    assert (p + p).bits == 0
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)


def test_eval_examples():
    assert evaluate(BoolFn.zeros(2), 3) == 0
    assert evaluate(LinearForm(2, 0b01).materialize(), PointF2n(2, 3)) == 1
    assert evaluate(AND2, 3) == 1
    with pytest.raises(DimensionError):
        evaluate(AND2, PointF2n(3, 3))


def test_dist_examples():
    assert dist(AND2, AND2) == 0
    assert dist(AND2, BoolFn.zeros(2)) == Fraction(1, 4)
    assert dist(AND2, OR2) == Fraction(1, 2)
    with pytest.raises(DimensionError):
        dist(AND2, BoolFn.zeros(3))


@given(fn_pairs())
def test_dist_matches_brute_force(pair):
    f, g = pair
    assert dist(f, g) == brute_dist(f, g)
    assert dist(f, g) == dist(g, f)
    assert isinstance(dist(f, g), Fraction)


@given(fn_pairs(), st.integers(0, 1 << 16))
def test_triangle_inequality(pair, code):
    f, g = pair
    h = BoolFn.from_code(f.n, code % (1 << f.size))
    assert dist(f, h) <= dist(f, g) + dist(g, h)


def test_disjunction_examples():
    assert make_disjunction([], 2) == BoolFn.zeros(2)
    f = make_disjunction([LinearForm(2, 1), LinearForm(2, 2)])
    assert f.bitstring() == "0111"
    assert support(f) == frozenset({1, 2, 3})
    assert weight(f) == 3
    assert support(AND2) == frozenset({3}) and weight(AND2) == 1
    assert support(BoolFn.zeros(3)) == frozenset() and weight(BoolFn.zeros(3)) == 0
    with pytest.raises(ValueError):
        make_disjunction([LinearForm(2, 1), LinearForm(3, 1)])
    with pytest.raises(ValueError):
        make_disjunction([])


@pytest.mark.parametrize("n", range(1, 7))
def test_linear_forms_are_additive(n):
    N = 1 << n
    for f in linear_functions(n):
        t = f.table
        for x in range(N):
            assert all(t[x] ^ t[y] == t[x ^ y] for y in range(N))


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(0, (1 << n) - 1), max_size=4))))
def test_disjunction_support_and_kernel(args):
    n, coeffs = args
    forms = [LinearForm(n, a) for a in coeffs]
    f = make_disjunction(forms, n)
    expected = set().union(*(support(g.materialize()) for g in forms)) if forms else set()
    assert support(f) == expected
    zeros = [x for x in range(1 << n) if f(x) == 0]
    zs = set(zeros)
    assert all(x ^ y in zs for x, y in itertools.product(zeros, repeat=2))


@given(bool_fns(max_n=5))
def test_code_and_bitstring_roundtrip(f):
    assert BoolFn.from_code(f.n, f.code) == f
    assert BoolFn.from_bitstring(f.bitstring()) == f
    assert parse_tt(format_tt(f)) == f
    assert hash(BoolFn.from_code(f.n, f.code)) == hash(f)


def test_boolfn_is_immutable():
    f = BoolFn.zeros(2)
    with pytest.raises(ValueError):
        f.table[0] = 1
    with pytest.raises(AttributeError):
        f.n = 3


def test_boolfn_operators():
    assert (AND2 | BoolFn.from_bitstring("0110")) == OR2
    assert (~AND2).bitstring() == "1110"
    assert (AND2 ^ OR2).bitstring() == "0110"
    assert (AND2 & OR2) == AND2
    assert AND2.flip(0).bitstring() == "1001"
    assert BoolFn.from_support(2, [3]) == AND2
    assert BoolFn.from_function(2, lambda x: int(x == 3)) == AND2


def test_tt_io(tmp_path):
    path = tmp_path / "f.tt"
    write_tt(AND2, path)
    assert path.read_text() == "2\n0001\n"
    assert read_tt(path) == AND2
    assert parse_tt("2\n0001") == AND2
    for bad in ["2\n001\n", "2\n0021\n", "x\n0001\n", "", "3\n01\n"]:
        with pytest.raises(ValueError):
            parse_tt(bad)
