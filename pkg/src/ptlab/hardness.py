"""GF(2^k) polynomials and their Hadamard concatenation as Boolean functions.

Checks the distance facts behind the construction of a property that is
not testable and whose complement is not testable either: low-degree
polynomials are far from degree-2^(k-1) ones, concatenating with the
Hadamard code halves distances exactly, and any 2^(k-1)-1 points of a
polynomial can be matched by one of lower degree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .gf2 import BoolFn, dist, parity

MAX_K = 8
NAMED_MODULI = {2: 0b111, 3: 0b1011, 4: 0b10011}


class ConsistencyError(RuntimeError):
    """An identity that must hold exactly was violated."""


def clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible(m: int) -> bool:
    k = m.bit_length() - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if poly_mod(m, q) == 0:
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(k: int) -> int:
    return next(m for m in range(1 << k, 1 << (k + 1)) if is_irreducible(m))


class GF2k:
    """F_{2^k} with elements as k-bit integers modulo a fixed irreducible."""

    def __init__(self, k: int):
        if not 1 <= k <= MAX_K:
            raise ValueError(f"extension degree must be in [1, {MAX_K}]")
        self.k = k
        self.order = 1 << k
        self.modulus = NAMED_MODULI.get(k) or least_irreducible(k)
        q = self.order
        table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                table[a, b] = table[b, a] = poly_mod(clmul(a, b), self.modulus)
        table.flags.writeable = False
        self.mul_table = table
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(table[a] == 1)[0])
        inv.flags.writeable = False
        self.inv_table = inv

    def __repr__(self) -> str:
        return f"GF2k(k={self.k}, modulus={self.modulus:#b})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF2k) and other.k == self.k and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash((self.k, self.modulus))

    def check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element of GF(2^{self.k})")
        return a

    def add(self, a: int, b: int) -> int:
        return self.check(a) ^ self.check(b)

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[self.check(a), self.check(b)])

    def inv(self, a: int) -> int:
        if self.check(a) == 0:
            raise ZeroDivisionError("zero has no inverse")
        return int(self.inv_table[a])

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)


@lru_cache(maxsize=None)
def field(k: int) -> GF2k:
    return GF2k(k)


@dataclass(frozen=True)
class PolyOverF2k:
    """Coefficients low degree first, trailing zeros stripped."""

    field: GF2k
    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = [self.field.check(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) > self.field.order:
            raise ValueError(f"degree must be at most 2^k - 1 = {self.field.order - 1}")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = self.field.mul(acc, x) ^ c
        return acc

    def values(self) -> np.ndarray:
        """Evaluations at every field element (index = element)."""
        xs = self.field.elements()
        acc = np.zeros_like(xs)
        for c in reversed(self.coeffs):
            acc = self.field.mul_table[acc, xs] ^ c
        return acc

    def __add__(self, other: PolyOverF2k) -> PolyOverF2k:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return PolyOverF2k(self.field, tuple(x ^ y for x, y in zip(a, b)))


def poly(k: int, coeffs: Sequence[int]) -> PolyOverF2k:
    return PolyOverF2k(field(k), tuple(coeffs))


def poly_dist(p: PolyOverF2k, g: PolyOverF2k) -> Fraction:
    if p.field != g.field:
        raise ValueError("polynomials over different fields")
    return Fraction(int(np.count_nonzero(p.values() != g.values())), p.field.order)


def random_poly(k: int, degree: int, rng: np.random.Generator, monic: bool = False) -> PolyOverF2k:
    """Uniform polynomial of degree exactly ``degree`` (leading 1 if monic)."""
    F = field(k)
    coeffs = list(rng.integers(0, F.order, size=degree))
    lead = 1 if monic else int(rng.integers(1, F.order))
    return PolyOverF2k(F, tuple(int(c) for c in coeffs) + (lead,))


# ---------------------------------------------------------------------------
# Hadamard concatenation


def had_table(values: np.ndarray, k: int) -> np.ndarray:
    """Truth table of (x, y) -> values[x] . y with x in the low k bits."""
    idx = np.arange(1 << (2 * k), dtype=np.int64)
    x = idx & ((1 << k) - 1)
    y = idx >> k
    return parity(values[x] & y)


def had_concat(g: PolyOverF2k) -> BoolFn:
    k = g.field.k
    return BoolFn(2 * k, had_table(g.values(), k))


def had_distance_check(p: PolyOverF2k, g: PolyOverF2k) -> Fraction:
    """Exact dist(Had o p, Had o g); raises unless it equals dist(p, g) / 2."""
    if p.field != g.field:
        raise ValueError("polynomials over different fields")
    if p.field.k > 6:
        raise ValueError("concatenation distance check capped at k <= 6")
    d = dist(had_concat(p), had_concat(g))
    if d != poly_dist(p, g) / 2:
        raise ConsistencyError(f"concatenated distance {d} != {poly_dist(p, g)}/2")
    return d


# ---------------------------------------------------------------------------
# minimum distance between degree classes


def _all_poly_values(F: GF2k, max_deg: int) -> np.ndarray:
    """Value tables of every polynomial of degree <= max_deg, one per row."""
    q = F.order
    xs = F.elements()
    powers = np.ones((max_deg + 1, q), dtype=np.int64)
    for d in range(1, max_deg + 1):
        powers[d] = F.mul_table[powers[d - 1], xs]
    vals = np.zeros((1, q), dtype=np.int64)
    for d in range(max_deg + 1):
        terms = F.mul_table[np.arange(q)[:, None], powers[d][None, :]]  # c * x^d
        vals = (vals[:, None, :] ^ terms[None, :, :]).reshape(-1, q)
    return vals


def _monic_values(F: GF2k, degree: int) -> np.ndarray:
    q = F.order
    xs = F.elements()
    lead = np.ones(q, dtype=np.int64)
    for _ in range(degree):
        lead = F.mul_table[lead, xs]
    if degree == 0:
        return lead[None, :]
    return _all_poly_values(F, degree - 1) ^ lead[None, :]


PAIRWISE_CAP = 1 << 26


def min_poly_distance_enumerated(deg_a: int, deg_b: int, k: int) -> Fraction:
    """min dist(p, g) over all p with deg <= deg_a and monic g with deg = deg_b.

    Restricting g to monic loses nothing: dist(p, c g) = dist(p/c, g).
    """
    F = field(k)
    if deg_a < 0 or deg_b < 0 or max(deg_a, deg_b) >= F.order:
        raise ValueError("degrees must lie in [0, 2^k - 1]")
    count_p = F.order ** (deg_a + 1)
    count_g = F.order ** deg_b
    if count_p * count_g > PAIRWISE_CAP:
        raise ValueError(f"pairwise enumeration of {count_p} x {count_g} polynomials is infeasible")
    P = _all_poly_values(F, deg_a)
    G = _monic_values(F, deg_b)
    best = F.order
    chunk = max(1, (1 << 22) // (P.shape[0] * F.order))
    for start in range(0, G.shape[0], chunk):
        block = G[start:start + chunk]
        disagree = (block[:, None, :] != P[None, :, :]).sum(axis=2)
        best = min(best, int(disagree.min()))
    return Fraction(best, F.order)


def max_agreement(g: PolyOverF2k, max_deg: int) -> int:
    """Most points on which some polynomial of degree <= max_deg agrees with g.

    Any such polynomial agreeing on >= max_deg + 1 points is the interpolant
    of those points, so trying every (max_deg + 1)-subset is exhaustive.
    """
    F = g.field
    if max_deg + 1 >= F.order:
        return F.order
    gv = g.values()
    best = 0
    for xs in itertools.combinations(range(F.order), max_deg + 1):
        p = interpolation_agreement([(x, int(gv[x])) for x in xs], max_deg, F)
        best = max(best, int(np.count_nonzero(p.values() == gv)))
    return best


def min_poly_distance(deg_a: int, deg_b: int, k: int, samples: int = 4,
                      seed: int = 0) -> Fraction:
    """Exact for k <= 3; for k = 4 certified on ``samples`` random monic g."""
    F = field(k)
    try:
        return min_poly_distance_enumerated(deg_a, deg_b, k)
    except ValueError:
        if k > 4:
            raise
    rng = np.random.default_rng(seed)
    best = F.order
    for _ in range(samples):
        g = random_poly(k, deg_b, rng, monic=True)
        best = min(best, F.order - max_agreement(g, deg_a))
    return Fraction(best, F.order)


# ---------------------------------------------------------------------------
# interpolation


def _mul_linear(F: GF2k, coeffs: list[int], a: int) -> list[int]:
    """coeffs * (x + a)."""
    out = [0] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i + 1] ^= c
        out[i] ^= F.mul(c, a)
    return out


def interpolation_agreement(points: Iterable[tuple[int, int]], max_deg: int,
                            F: Optional[GF2k] = None, k: Optional[int] = None) -> PolyOverF2k:
    """Lagrange interpolant of degree <= max_deg through the given points."""
    if F is None:
        if k is None:
            raise ValueError("need a field or an extension degree")
        F = field(k)
    pts = [(F.check(a), F.check(b)) for a, b in points]
    xs = [a for a, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("repeated abscissae")
    if len(pts) > max_deg + 1:
        raise ValueError(f"{len(pts)} points need degree {len(pts) - 1} > {max_deg}")
    total = [0] * max(1, len(pts))
    for i, (ai, bi) in enumerate(pts):
        basis, denom = [1], 1
        for j, (aj, _) in enumerate(pts):
            if j != i:
                basis = _mul_linear(F, basis, aj)
                denom = F.mul(denom, ai ^ aj)
        scale = F.mul(bi, F.inv(denom))
        for d, c in enumerate(basis):
            total[d] ^= F.mul(c, scale)
    return PolyOverF2k(F, tuple(total))


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class HardnessReport:
    k: int
    min_poly_distance: Fraction
    concat_distance: Fraction
    halving_pairs_checked: int
    interpolation_checks: int
    interpolation_checks_passed: int

    @property
    def passed(self) -> bool:
        return (self.min_poly_distance >= Fraction(1, 2)
                and self.concat_distance >= Fraction(1, 4)
                and self.interpolation_checks == self.interpolation_checks_passed)


def hardness_report(k: int = 3, polys: int = 20, seed: int = 0) -> HardnessReport:
    """Distance and indistinguishability facts at extension degree k."""
    F = field(k)
    low, high = (1 << (k - 1)) - 1, 1 << (k - 1)
    rng = np.random.default_rng(seed)
    mpd = min_poly_distance(low, high, k, seed=seed)

    concat = None
    pairs = checks = passed = 0
    for _ in range(polys):
        g = random_poly(k, high, rng)
        gv = g.values()
        # nearest low-degree polynomial: the best interpolant of low + 1 points
        if low + 1 <= F.order and F.order <= 8:
            candidates = [interpolation_agreement([(x, int(gv[x])) for x in xs], low, F)
                          for xs in itertools.combinations(range(F.order), low + 1)]
        else:
            candidates = [random_poly(k, low, rng) for _ in range(8)]
        for p in candidates:
            d = had_distance_check(p, g)
            pairs += 1
            concat = d if concat is None else min(concat, d)
        for xs in itertools.combinations(range(F.order), low):
            checks += 1
            p = interpolation_agreement([(x, int(gv[x])) for x in xs], low, F)
            pv = p.values()
            if p.degree <= low and all(pv[x] == gv[x] for x in xs):
                passed += 1
    return HardnessReport(k, mpd, concat if concat is not None else Fraction(0), pairs, checks, passed)
