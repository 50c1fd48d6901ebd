"""Exact pattern counting over triples (f(x), f(y), f(x+y)).

Patterns are multisets, so a pattern is determined by how many of the three
values are 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .gf2 import BoolFn, DimensionError, Point, point_index

MAX_PAIR_SCAN_DIM = 12


@dataclass(frozen=True)
class PatternClass:
    ones: int

    def __post_init__(self):
        if self.ones not in (1, 2, 3):
            raise ValueError(f"pattern must contain 1, 2 or 3 ones, got {self.ones}")

    @property
    def label(self) -> str:
        return "".join("1" if i < self.ones else "0" for i in range(3))

    def __str__(self) -> str:
        return "(" + ",".join(self.label) + ")"

    @classmethod
    def parse(cls, text: str) -> PatternClass:
        bits = [c for c in text if c in "01"]
        if len(bits) != 3:
            raise ValueError(f"cannot parse pattern {text!r}")
        return cls(bits.count("1"))

    def matches(self, a: int, b: int, c: int) -> bool:
        return a + b + c == self.ones


P100 = PatternClass(1)
P110 = PatternClass(2)
P111 = PatternClass(3)


def has_pattern(f: BoolFn, x: Point, y: Point, p: PatternClass) -> bool:
    xi, yi = point_index(f.n, x), point_index(f.n, y)
    return p.matches(f(xi), f(yi), f(xi ^ yi))


def ones_count_matrix(f: BoolFn, rows: np.ndarray) -> np.ndarray:
    """For each x in ``rows`` and every y, the number of ones in (f(x), f(y), f(x+y))."""
    t = f.table.astype(np.int8)
    y = np.arange(f.size)
    return t[rows][:, None] + t[None, :] + t[rows[:, None] ^ y[None, :]]


def pattern_histogram(f: BoolFn) -> np.ndarray:
    """Counts of ordered pairs (x, y) by number of ones, index 0..3."""
    if f.n > MAX_PAIR_SCAN_DIM:
        raise DimensionError(f"pair scan capped at n <= {MAX_PAIR_SCAN_DIM}")
    hist = np.zeros(4, dtype=np.int64)
    chunk = max(1, (1 << 22) >> f.n)
    for start in range(0, f.size, chunk):
        rows = np.arange(start, min(start + chunk, f.size))
        hist += np.bincount(ones_count_matrix(f, rows).ravel(), minlength=4)
    return hist


def count_ordered_violations(f: BoolFn, p: PatternClass) -> int:
    return int(pattern_histogram(f)[p.ones])


def rejection_probability(f: BoolFn, p: PatternClass) -> Fraction:
    return Fraction(count_ordered_violations(f, p), f.size * f.size)


def parity_violation_probability(f: BoolFn) -> Fraction:
    """Single-round BLR rejection probability: an odd number of ones in the triple."""
    hist = pattern_histogram(f)
    return Fraction(int(hist[1] + hist[3]), f.size * f.size)


@dataclass(frozen=True)
class TriangleCensus:
    """Unordered triangles {x, y, x+y} with f = 1 on all three points.

    Degenerate triples {0, x, x} and {0, 0, 0} (only possible when f(0) = 1)
    are counted once each and credit only their distinct points.
    """

    unordered_count: int
    per_point: Mapping[int, int] = field(default_factory=dict)


def count_triangles(f: BoolFn) -> TriangleCensus:
    if f.n > MAX_PAIR_SCAN_DIM:
        raise DimensionError(f"triangle census capped at n <= {MAX_PAIR_SCAN_DIM}")
    t = f.table
    supp = np.flatnonzero(t)
    per_point = np.zeros(f.size, dtype=np.int64)
    total = 0

    # distinct triples, each listed once as x < y < x^y
    nz = supp[supp > 0]
    chunk = max(1, (1 << 22) // max(1, nz.size))
    for start in range(0, nz.size, chunk):
        xs = nz[start:start + chunk]
        x = np.repeat(xs, nz.size)
        y = np.tile(nz, xs.size)
        z = x ^ y
        keep = (x < y) & (y < z) & (t[z] == 1)
        x, y, z = x[keep], y[keep], z[keep]
        total += x.size
        for pts in (x, y, z):
            per_point += np.bincount(pts, minlength=f.size)

    if t[0]:
        total += 1 + nz.size
        per_point[0] += 1 + nz.size
        per_point[nz] += 1

    return TriangleCensus(
        unordered_count=int(total),
        per_point={int(i): int(per_point[i]) for i in np.flatnonzero(per_point)},
    )
