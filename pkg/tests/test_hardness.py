import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ptlab.gf2 import dist
from ptlab.hardness import (
    GF2k, NAMED_MODULI, clmul, field, had_concat, had_distance_check,
    hardness_report, interpolation_agreement, is_irreducible, least_irreducible,
    max_agreement, min_poly_distance, min_poly_distance_enumerated, poly, poly_dist,
    random_poly,
)


def slow_mul(a, b, k, modulus):
    # schoolbook shift-and-add with reduction after every shift
    out = 0
    for i in range(k):
        if b >> i & 1:
            out ^= a
        a <<= 1
        if a >> k & 1:
            a ^= modulus
    return out


def test_moduli():
    assert NAMED_MODULI == {2: 0b111, 3: 0b1011, 4: 0b10011}
    assert least_irreducible(8) == 0b100011011
    for k in range(1, 9):
        m = field(k).modulus
        assert m.bit_length() == k + 1 and is_irreducible(m)
        # lexicographically least for k >= 5
        if k >= 5:
            assert not any(is_irreducible(c) for c in range(1 << k, m))


@pytest.mark.parametrize("k", range(1, 9))
def test_mul_matches_schoolbook(k):
    F = field(k)
    q = F.order
    xs = range(q) if k <= 5 else np.random.default_rng(k).integers(0, q, 40)
    for a in xs:
        for b in xs:
            assert F.mul(int(a), int(b)) == slow_mul(int(a), int(b), k, F.modulus)


@pytest.mark.parametrize("k", range(1, 5))
def test_field_axioms_exhaustive(k):
    F = field(k)
    q = range(F.order)
    for a in q:
        assert F.add(a, a) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in q:
            assert F.mul(a, b) == F.mul(b, a)
            for c in q:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_field_examples():
    F = field(3)
    assert F.mul(0b010, 0b100) == 0b011
    assert F.inv(1) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ValueError):
        GF2k(9)
    assert clmul(0b11, 0b11) == 0b101


@given(st.integers(1, 6), st.lists(st.integers(0, 255), max_size=6))
def test_horner_matches_power_sum(k, coeffs):
    F = field(k)
    coeffs = [c % F.order for c in coeffs][:F.order]
    p = poly(k, coeffs)
    for x in range(F.order):
        acc, xp = 0, 1
        for c in coeffs:
            acc ^= F.mul(c, xp)
            xp = F.mul(xp, x)
        assert p(x) == acc == int(p.values()[x])
    nz = [i for i, c in enumerate(coeffs) if c]
    assert p.degree == (nz[-1] if nz else -1)


def direct_had(g, k):
    F = g.field
    table = []
    for idx in range(1 << (2 * k)):
        x, y = idx & (F.order - 1), idx >> k
        table.append(bin(g(x) & y).count("1") & 1)
    return "".join(map(str, table))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_had_concat_matches_double_loop(k):
    rng = np.random.default_rng(k)
    for g in [poly(k, []), poly(k, [1]), poly(k, [0, 1]), random_poly(k, min(2, (1 << k) - 1), rng)]:
        h = had_concat(g)
        assert h.n == 2 * k
        assert h.bitstring() == direct_had(g, k)
    assert had_concat(poly(3, [])).table.sum() == 0
    # constant 1: the dictator y_1
    h = had_concat(poly(2, [1]))
    assert all(h(x | y << 2) == (y & 1) for x in range(4) for y in range(4))


@pytest.mark.parametrize("k", range(1, 7))
def test_hadamard_codewords_at_half(k):
    q = 1 << k
    ys = np.arange(q)
    for a, b in itertools.combinations(range(q), 2):
        da = np.bitwise_count(a & ys) & 1
        db = np.bitwise_count(b & ys) & 1
        assert int((da != db).sum()) == q // 2


@pytest.mark.parametrize("k", [2, 3, 4])
def test_concat_halving(k):
    rng = np.random.default_rng(10 + k)
    for _ in range(30):
        p = random_poly(k, int(rng.integers(0, 1 << k)), rng)
        g = random_poly(k, int(rng.integers(0, 1 << k)), rng)
        d = had_distance_check(p, g)
        assert d == poly_dist(p, g) / 2 == dist(had_concat(p), had_concat(g))
    p = poly(3, [1, 2, 3])
    assert had_distance_check(p, p) == 0
    # q agrees with p everywhere except x = 5
    q = interpolation_agreement([(x, p(x) ^ (x == 5)) for x in range(8)], 7, field(3))
    assert poly_dist(p, q) == Fraction(1, 8)
    assert had_distance_check(p, q) == Fraction(1, 16)


def test_had_distance_check_cap():
    with pytest.raises(ValueError):
        had_distance_check(poly(7, [1]), poly(7, [2]))


def test_min_poly_distance_examples():
    assert min_poly_distance(3, 4, 3) == Fraction(1, 2)
    assert min_poly_distance(1, 2, 2) == Fraction(1, 2)
    assert min_poly_distance(2, 2, 2) == 0


def brute_min_distance(deg_a, deg_b, k):
    F = field(k)
    q = F.order
    best = q
    for pc in itertools.product(range(q), repeat=deg_a + 1):
        p = poly(k, pc)
        for gc in itertools.product(range(q), repeat=deg_b):
            g = poly(k, list(gc) + [1])
            best = min(best, int((p.values() != g.values()).sum()))
    return Fraction(best, q)


@pytest.mark.parametrize("args", [(0, 1, 2), (1, 2, 2), (0, 2, 2), (1, 1, 2), (0, 1, 3)])
def test_min_poly_distance_vs_brute_force(args):
    assert min_poly_distance_enumerated(*args) == brute_min_distance(*args)


def test_max_agreement_schwartz_zippel():
    rng = np.random.default_rng(0)
    for _ in range(10):
        g = random_poly(3, 4, rng, monic=True)
        assert max_agreement(g, 3) <= 4


def test_interpolation():
    F = field(3)
    p = interpolation_agreement([(3, 6)], 0, F)
    assert p.degree == 0 and p(0) == 6
    rng = np.random.default_rng(7)
    for _ in range(20):
        g = random_poly(3, 4, rng, monic=True)
        for xs in itertools.combinations(range(8), 3):
            p = interpolation_agreement([(x, g(x)) for x in xs], 3, F)
            assert p.degree <= 2
            assert all(p(x) == g(x) for x in xs)
    with pytest.raises(ValueError):
        interpolation_agreement([(1, 2), (1, 3)], 3, F)
    with pytest.raises(ValueError):
        interpolation_agreement([(1, 2), (2, 3), (3, 4)], 1, F)


def test_hardness_report_k3():
    r = hardness_report(3)
    assert r.passed
    assert r.min_poly_distance == Fraction(1, 2)
    assert r.concat_distance == Fraction(1, 4)
    assert r.interpolation_checks == r.interpolation_checks_passed == 20 * 56
