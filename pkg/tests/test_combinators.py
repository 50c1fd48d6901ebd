from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ptlab.combinators import (
    DifferenceTester, IntersectionTester, ParseError, UnionTester, difference_tester,
    intersection_tester, linearity_via_intersection, nltf_tester, parse_tester, union_tester,
)
from ptlab.gf2 import BoolFn, linear_functions
from ptlab.properties import (
    FREE100, FREE111, LIN, NLTF, difference, distance_table, members, set_distance,
)
from ptlab.testers import (
    BLRTester, Oracle, RandomSource, ToleranceParams, TolerantLinTester, free100_tester,
    triangle_free_tester,
)

from conftest import bool_fns

QUARTER = Fraction(1, 4)


def far_codes(kind, n, count):
    d = distance_table(kind, n)
    return [int(c) for c in np.flatnonzero(d >= count)]


@pytest.mark.parametrize("n", [2, 3])
def test_union_completeness_exact(n):
    t = union_tester(BLRTester(), triangle_free_tester())
    pool = {g.code: g for prop in (LIN, FREE111) for g in members(prop, n)}
    for f in pool.values():
        for seed in range(100):
            assert t.run(Oracle(f), Fraction(1, 2), RandomSource(seed)).accept


def test_union_accepts_all_ones_via_free100():
    t = union_tester(BLRTester(), free100_tester())
    f = BoolFn.ones(2)
    assert all(t.run(Oracle(f), QUARTER, RandomSource(s)).accept for s in range(200))


def test_union_soundness_n4():
    t = union_tester(BLRTester(), triangle_free_tester())
    far = far_codes("FREE111", 4, 4)
    rng = np.random.default_rng(1)
    for code in rng.choice(far, size=10, replace=False):
        f = BoolFn.from_code(4, int(code))
        acc = sum(t.run(Oracle(f), QUARTER, RandomSource(s)).accept for s in range(300))
        assert acc / 300 <= 1 / 3


def test_union_rejects_two_sided_parts():
    tol = TolerantLinTester(ToleranceParams(Fraction(1, 16), QUARTER))
    with pytest.raises(ValueError):
        UnionTester(BLRTester(), tol)


def test_intersection_schedule_and_budget():
    t = intersection_tester(triangle_free_tester(), free100_tester(), QUARTER)
    assert t.schedule(Fraction(1, 2)) == (Fraction(1, 8), Fraction(1, 8))
    assert t.schedule(Fraction(1, 16)) == (Fraction(1, 16), Fraction(1, 16))
    budgets = [t.budget(Fraction(j, 16)) for j in range(1, 16)]
    assert budgets == sorted(budgets, reverse=True)
    assert t.budget(Fraction(1, 2)) == 3 * (64 * 512 + 256 * 64)


@given(bool_fns(min_n=2, max_n=4), st.integers(0, 2 ** 32))
def test_composed_query_accounting(f, seed):
    for t in (linearity_via_intersection(), union_tester(BLRTester(), free100_tester())):
        v = t.run(Oracle(f), QUARTER, RandomSource(seed))
        assert v.queries_used == sum(p.queries_used for p in v.parts)
        assert v.rounds_run == sum(p.rounds_run for p in v.parts)
        assert v.queries_used <= t.budget(QUARTER)


def test_linearity_intersection_matches_blr():
    t = linearity_via_intersection()
    for f in linear_functions(4):
        for s in range(50):
            assert t.run(Oracle(f), QUARTER, RandomSource(s)).accept
            assert BLRTester().run(Oracle(f), QUARTER, RandomSource(s)).accept
    rng = np.random.default_rng(2)
    for code in rng.choice(far_codes("LIN", 4, 4), size=5, replace=False):
        f = BoolFn.from_code(4, int(code))
        for tester in (t, BLRTester()):
            rej = sum(not tester.run(Oracle(f), QUARTER, RandomSource(s)).accept for s in range(300))
            assert rej / 300 >= 2 / 3


@pytest.mark.parametrize("n", [3, 4])
def test_linearity_side_condition(n):
    assert set_distance(difference(FREE100, LIN, n), difference(FREE111, LIN, n), n) >= QUARTER


def test_difference_validation():
    t = ToleranceParams(Fraction(1, 16), QUARTER)
    tol = TolerantLinTester(t)
    with pytest.raises(ValueError):
        difference_tester(triangle_free_tester(), tol, Fraction(1, 8), t)
    with pytest.raises(ValueError):
        DifferenceTester(triangle_free_tester(), BLRTester(), QUARTER, t)
    d = difference_tester(triangle_free_tester(), tol, QUARTER, t)
    assert not d.one_sided
    assert d.schedule(QUARTER)[0] == Fraction(1, 16)


def test_nltf_tester():
    t = nltf_tester()
    assert t.one_sided and t.describe().startswith("nltf")
    assert t.rounds(QUARTER) == triangle_free_tester().rounds(QUARTER)
    for f in members(NLTF, 3) + members(LIN, 3):
        assert all(t.run(Oracle(f), QUARTER, RandomSource(s)).accept for s in range(20))
    rng = np.random.default_rng(3)
    for code in rng.choice(far_codes("NLTF", 4, 4), size=10, replace=False):
        f = BoolFn.from_code(4, int(code))
        acc = sum(t.run(Oracle(f), QUARTER, RandomSource(s)).accept for s in range(300))
        assert acc / 300 <= 1 / 3


@pytest.mark.parametrize("text,cls,desc", [
    ("blr", BLRTester, "blr:c=4"),
    ("free100:c=128", None, "free100:c=128"),
    ("triangle:rounds=10", None, "free111:rounds=10"),
    ("union(blr, free111)", UnionTester, "union(blr:c=4, free111:c=64)"),
    ("intersect(free111:rounds=200000, free100, eps0=0.25)", IntersectionTester,
     "intersect(free111:rounds=200000, free100:c=256, eps0=1/4)"),
    ("diff(free111, tol-lin:eps1=1/16:eps2=1/4, eps0=1/4, eps1=1/16, eps2=1/4)", DifferenceTester, None),
    ("intersect(union(blr, nltf), free100, eps0=1/4)", IntersectionTester, None),
])
def test_parse_tester(text, cls, desc):
    t = parse_tester(text)
    if cls is not None:
        assert isinstance(t, cls)
    if desc is not None:
        assert t.describe() == desc


@pytest.mark.parametrize("text,pos", [
    ("intersect(blr", 13),
    ("blr:q=3", 4),
    ("nope", 0),
    ("union(blr)", None),
    ("blr)", 3),
    ("", 0),
])
def test_parse_errors(text, pos):
    with pytest.raises(ParseError) as info:
        parse_tester(text)
    if pos is not None:
        assert info.value.pos == pos
