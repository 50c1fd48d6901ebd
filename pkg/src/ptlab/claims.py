"""Exhaustive checks of the quantitative claims, one function per claim id.

Each check returns a ClaimResult; ``passed`` is False with a witness on the
first counterexample found.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .gf2 import BoolFn, LinearForm, make_disjunction
from .hardness import hardness_report
from .patterns import P100, count_triangles
from .properties import (
    FREE100,
    FULL_SCAN_MAX_DIM,
    LIN,
    NLTF,
    difference,
    distance_table,
    distance_to_free111_hitting,
    function_bits,
    is_pattern_free,
    pattern_count_table,
    scan_codes,
    set_distance,
)
from .testers import self_correct


@dataclass
class ClaimResult:
    claim: str
    n: Optional[int]
    passed: bool
    checked: int
    details: dict = field(default_factory=dict)
    witness: Optional[str] = None


class ClaimCapError(ValueError):
    pass


def _require(n: int, lo: int, hi: int, claim: str) -> None:
    if not lo <= n <= hi:
        raise ClaimCapError(f"{claim} is checked for {lo} <= n <= {hi}, got n={n}")


def eps_grid(n: int) -> list[Fraction]:
    """Multiples of 2^-n up to 1/2; at n = 3 this is {1/8, 1/4, 3/8, 1/2}."""
    return [Fraction(j, 1 << n) for j in range(1, (1 << (n - 1)) + 1)]


def triangle_census(n: int = 4) -> ClaimResult:
    """Two distinct nontrivial forms: N^2/16 triangles, N/4 through each point,
    and (n <= 4) distance exactly 1/4 to triangle-freeness."""
    _require(n, 2, 5, "triangle-census")
    N = 1 << n
    checked, distances = 0, set()
    for a, b in itertools.permutations(range(1, N), 2):
        f = make_disjunction([LinearForm(n, a), LinearForm(n, b)])
        census = count_triangles(f)
        checked += 1
        bad = census.unordered_count != N * N // 16 or set(census.per_point.values()) != {N // 4}
        if bad:
            return ClaimResult("triangle-census", n, False, checked,
                               {"count": census.unordered_count, "per_point": dict(census.per_point)},
                               witness=f.bitstring())
        if n <= 4:
            d = distance_to_free111_hitting(f).value
            distances.add(d)
            if d < Fraction(1, 4):
                return ClaimResult("triangle-census", n, False, checked, {"distance": d},
                                   witness=f.bitstring())
    details = {"triangles": N * N // 16, "per_point": N // 4}
    if distances:
        details["free111_distances"] = sorted(distances)
        details["distance_equals_quarter"] = distances == {Fraction(1, 4)}
    return ClaimResult("triangle-census", n, True, checked, details)


def lemma_distance(n: int = 3) -> ClaimResult:
    """FREE100 minus LIN is 1/4-far from NLTF."""
    _require(n, 2, FULL_SCAN_MAX_DIM, "lemma-distance")
    left = difference(FREE100, LIN, n)
    value = set_distance(left, NLTF, n)
    return ClaimResult("lemma-distance", n, value >= Fraction(1, 4), len(left.members),
                       {"set_distance": value, "bound": Fraction(1, 4)})


def thin_strip(n: int = 3) -> ClaimResult:
    """dist(f, FREE111) >= dist(f, NLTF) - 2^-n for every f."""
    _require(n, 2, FULL_SCAN_MAX_DIM, "thin-strip")
    d111 = distance_table("FREE111", n)
    dnltf = distance_table("NLTF", n)
    bad = np.flatnonzero(d111 < dnltf - 1)
    slack = int((d111 - dnltf).min())
    details = {"min_gap": Fraction(slack, 1 << n), "strip": Fraction(1, 1 << n)}
    if bad.size:
        return ClaimResult("thin-strip", n, False, d111.size, details,
                           witness=BoolFn.from_code(n, int(bad[0])).bitstring())
    return ClaimResult("thin-strip", n, True, d111.size, details)


def free100_soundness(n: int = 3, sample: Optional[int] = None, seed: int = 0) -> ClaimResult:
    """Exact single-round rejection >= eps^2/128 whenever dist(f, FREE100) >= eps.

    All functions, or ``sample`` uniformly drawn ones.
    """
    _require(n, 1, FULL_SCAN_MAX_DIM, "free100-soundness")
    counts = pattern_count_table(n)[:, 1]
    dists = distance_table("FREE100", n)
    codes = np.arange(counts.size)
    if sample is not None:
        codes = np.random.default_rng(seed).integers(0, counts.size, size=sample)
    pairs = 1 << (2 * n)
    checked = 0
    worst = None
    for eps in eps_grid(n):
        far = codes[dists[codes] * eps.denominator >= eps.numerator * (1 << n)]
        checked += far.size
        if not far.size:
            continue
        # R >= eps^2/128  <=>  128 * count * den^2 >= num^2 * 4^n
        lhs = 128 * counts[far] * eps.denominator ** 2
        rhs = eps.numerator ** 2 * pairs
        ratio = Fraction(int(counts[far].min()), pairs) / (eps * eps / 128)
        worst = ratio if worst is None else min(worst, ratio)
        bad = far[lhs < rhs]
        if bad.size:
            return ClaimResult("free100-soundness", n, False, checked, {"eps": eps},
                               witness=BoolFn.from_code(n, int(bad[0])).bitstring())
    return ClaimResult("free100-soundness", n, True, checked,
                       {"grid": eps_grid(n), "min_rejection_over_bound": worst,
                        "sampled": sample})


def self_correct_chain(n: int = 3) -> ClaimResult:
    """Whenever R < eps^2/128: either dist(f, all-ones) < 63eps/64, or the
    corrected g is clash-free, within eps/32 of f and (1,0,0)-free."""
    _require(n, 1, FULL_SCAN_MAX_DIM, "self-correct-chain")
    counts = pattern_count_table(n)[:, 1]
    dists = distance_table("FREE100", n)
    bits = function_bits(n)
    N, pairs = 1 << n, 1 << (2 * n)
    checked = ones_branch = corrected = 0
    for eps in eps_grid(n):
        low = np.flatnonzero(128 * counts * eps.denominator ** 2 < eps.numerator ** 2 * pairs)
        for code in low:
            checked += 1
            f = BoolFn(n, bits[code])
            mu0 = Fraction(int(N - bits[code].sum()), N)
            witness = f.bitstring()
            if mu0 < Fraction(63, 64) * eps:
                ones_branch += 1
                ok = Fraction(int(dists[code]), N) < eps
            else:
                corrected += 1
                sc = self_correct(f, eps)
                ok = (not sc.clash and sc.distance < eps / 32
                      and is_pattern_free(sc.g, P100)
                      and Fraction(int(dists[code]), N) < eps)
            if not ok:
                return ClaimResult("self-correct-chain", n, False, checked, {"eps": eps}, witness)
    return ClaimResult("self-correct-chain", n, True, checked,
                       {"all_ones_branch": ones_branch, "corrected_branch": corrected})


def monotone(n: int = 3) -> ClaimResult:
    """supp(f) in supp(g) implies dist(f, FREE111) <= dist(g, FREE111).

    Checked on every covering pair (g = f plus one point), which implies all
    pairs by transitivity; at n <= 3 also on every comparable pair directly.
    """
    _require(n, 1, FULL_SCAN_MAX_DIM, "monotone")
    d = distance_table("FREE111", n)
    codes = np.arange(d.size, dtype=np.int64)
    checked = 0
    for x in range(1 << n):
        lower = codes[(codes >> x) & 1 == 0]
        upper = lower | (1 << x)
        checked += lower.size
        bad = lower[d[lower] > d[upper]]
        if bad.size:
            return ClaimResult("monotone", n, False, checked,
                               witness=BoolFn.from_code(n, int(bad[0])).bitstring())
    if n <= 3:
        for g in range(d.size):
            sub = g
            while True:
                checked += 1
                if d[sub] > d[g]:
                    return ClaimResult("monotone", n, False, checked,
                                       witness=BoolFn.from_code(n, sub).bitstring())
                if sub == 0:
                    break
                sub = (sub - 1) & g
    return ClaimResult("monotone", n, True, checked)


def lin_decomposition(n: int = 3) -> ClaimResult:
    """LIN = FREE111 intersect FREE100, function by function."""
    _require(n, 1, FULL_SCAN_MAX_DIM, "lin-decomposition")
    counts = pattern_count_table(n)
    both = np.flatnonzero((counts[:, 3] == 0) & (counts[:, 1] == 0))
    lin = scan_codes("LIN", n)
    ok = np.array_equal(np.sort(both), np.sort(lin))
    details = {"lin": int(lin.size), "free111_and_free100": int(both.size)}
    if not ok:
        diff = np.setxor1d(both, lin)
        return ClaimResult("lin-decomposition", n, False, counts.shape[0], details,
                           witness=BoolFn.from_code(n, int(diff[0])).bitstring())
    return ClaimResult("lin-decomposition", n, True, counts.shape[0], details)


def hardness_k3(n: Optional[int] = None) -> ClaimResult:
    r = hardness_report(3)
    return ClaimResult("hardness-k3", None, r.passed, r.halving_pairs_checked + r.interpolation_checks, {
        "k": r.k,
        "min_poly_distance": r.min_poly_distance,
        "concat_distance": r.concat_distance,
        "halving_pairs_checked": r.halving_pairs_checked,
        "interpolation_checks": r.interpolation_checks,
        "interpolation_checks_passed": r.interpolation_checks_passed,
    })


CLAIMS: dict[str, tuple[Callable[..., ClaimResult], Optional[int]]] = {
    "triangle-census": (triangle_census, 4),
    "lemma-distance": (lemma_distance, 3),
    "thin-strip": (thin_strip, 3),
    "free100-soundness": (free100_soundness, 3),
    "self-correct-chain": (self_correct_chain, 3),
    "monotone": (monotone, 3),
    "lin-decomposition": (lin_decomposition, 3),
    "hardness-k3": (hardness_k3, None),
}


def verify(claim: str, n: Optional[int] = None) -> ClaimResult:
    if claim not in CLAIMS:
        raise KeyError(f"unknown claim {claim!r}; expected one of {', '.join(CLAIMS)}")
    fn, default_n = CLAIMS[claim]
    return fn(default_n if n is None else n)
