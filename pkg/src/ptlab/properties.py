"""Named properties with exact membership, enumeration and distance oracles.

Everything here is brute force and exact; it is the ground truth the
randomized testers are checked against.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional

import numpy as np

from .gf2 import BoolFn, DimensionError, LinearForm, dist, linear_functions, weight
from .patterns import P100, P110, P111, PatternClass, pattern_histogram

FULL_SCAN_MAX_DIM = 4
STRUCTURED_MAX_DIM = 8
HITTING_MAX_WEIGHT = 20

_PATTERN_OF = {"FREE100": P100, "FREE110": P110, "FREE111": P111}
_KINDS = ("LIN", "FREE100", "FREE110", "FREE111", "NLTF", "ALL1", "EXPLICIT")


class EnumerationCapError(ValueError):
    """Raised when an exact method would exceed its documented size cap."""


@dataclass(frozen=True)
class PropertyId:
    kind: str
    members: Optional[frozenset] = None
    name: Optional[str] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown property kind {self.kind!r}")
        if (self.kind == "EXPLICIT") != (self.members is not None):
            raise ValueError("EXPLICIT properties (and only they) carry a member set")

    @classmethod
    def explicit(cls, members: Iterable[BoolFn], name: str | None = None) -> PropertyId:
        return cls("EXPLICIT", frozenset(members), name)

    @classmethod
    def parse(cls, text: str) -> PropertyId:
        key = text.strip().upper().replace("-", "").replace("_", "")
        aliases = {"TRIANGLEFREE": "FREE111", "ALLONES": "ALL1"}
        key = aliases.get(key, key)
        if key not in _KINDS or key == "EXPLICIT":
            raise ValueError(f"unknown property {text!r}; expected one of lin, free100, free110, free111, nltf, all1")
        return cls(key)

    def __str__(self) -> str:
        if self.kind == "EXPLICIT":
            return self.name or f"EXPLICIT[{len(self.members)}]"
        return self.kind


LIN = PropertyId("LIN")
FREE100 = PropertyId("FREE100")
FREE110 = PropertyId("FREE110")
FREE111 = PropertyId("FREE111")
NLTF = PropertyId("NLTF")
ALL1 = PropertyId("ALL1")


@dataclass(frozen=True)
class DistanceResult:
    value: Fraction
    witness: Optional[BoolFn] = None
    method: str = ""


# ---------------------------------------------------------------------------
# membership


def linear_coefficients(f: BoolFn) -> int:
    """The only candidate a with f = a.x: read off f at the unit vectors."""
    return sum(int(f.table[1 << j]) << j for j in range(f.n))


def is_linear(f: BoolFn) -> bool:
    return f == LinearForm(f.n, linear_coefficients(f)).materialize()


def is_pattern_free(f: BoolFn, p: PatternClass) -> bool:
    return pattern_histogram(f)[p.ones] == 0


def membership(prop: PropertyId, f: BoolFn) -> bool:
    kind = prop.kind
    if kind == "LIN":
        return is_linear(f)
    if kind in _PATTERN_OF:
        return is_pattern_free(f, _PATTERN_OF[kind])
    if kind == "NLTF":
        return is_pattern_free(f, P111) and not is_linear(f)
    if kind == "ALL1":
        return bool(f.table.all())
    return f in prop.members


# ---------------------------------------------------------------------------
# full function-space scans at n <= 4, functions encoded by BoolFn.code


@lru_cache(maxsize=None)
def function_bits(n: int) -> np.ndarray:
    """Row c holds the truth table of the function with code c."""
    if n > FULL_SCAN_MAX_DIM:
        raise EnumerationCapError(f"full function-space scan capped at n <= {FULL_SCAN_MAX_DIM}")
    size = 1 << n
    codes = np.arange(1 << size, dtype=np.uint32)
    return ((codes[:, None] >> np.arange(size, dtype=np.uint32)) & 1).astype(np.uint8)


@lru_cache(maxsize=None)
def pattern_count_table(n: int) -> np.ndarray:
    """Row c: ordered pairs (x, y) by number of ones in the triple, for the function with code c."""
    bits = function_bits(n)
    size = 1 << n
    counts = np.zeros((bits.shape[0], 4), dtype=np.int64)
    for x in range(size):
        for y in range(size):
            s = bits[:, x] + bits[:, y] + bits[:, x ^ y]
            for k in range(4):
                counts[:, k] += s == k
    counts.flags.writeable = False
    return counts


def _pattern_free_mask(n: int, ones: int) -> np.ndarray:
    return pattern_count_table(n)[:, ones] == 0


@lru_cache(maxsize=None)
def _linear_codes(n: int) -> frozenset:
    return frozenset(g.code for g in linear_functions(n))


@lru_cache(maxsize=None)
def scan_codes(kind: str, n: int) -> np.ndarray:
    """Sorted codes of every member of a non-explicit property at n <= 4."""
    if kind == "ALL1":
        return np.array([(1 << (1 << n)) - 1], dtype=np.uint32)
    if kind == "LIN":
        return np.array(sorted(_linear_codes(n)), dtype=np.uint32)
    if kind in _PATTERN_OF:
        mask = _pattern_free_mask(n, _PATTERN_OF[kind].ones)
        return np.flatnonzero(mask).astype(np.uint32)
    if kind == "NLTF":
        free = np.flatnonzero(_pattern_free_mask(n, 3)).astype(np.uint32)
        lin = np.array(sorted(_linear_codes(n)), dtype=np.uint32)
        return np.setdiff1d(free, lin)
    raise ValueError(f"no scan for {kind}")


# ---------------------------------------------------------------------------
# subspaces of F_2^n


def subspaces_by_closure(n: int) -> list[frozenset]:
    """All subsets containing 0 and closed under xor, found by testing every subset."""
    if n > FULL_SCAN_MAX_DIM:
        raise EnumerationCapError(f"closure enumeration capped at n <= {FULL_SCAN_MAX_DIM}")
    size = 1 << n
    rest = np.arange(1 << (size - 1), dtype=np.uint32)
    # bit 0 of every candidate set is the zero vector
    sets = np.ones((rest.size, size), dtype=bool)
    sets[:, 1:] = ((rest[:, None] >> np.arange(size - 1, dtype=np.uint32)) & 1).astype(bool)
    closed = np.ones(rest.size, dtype=bool)
    for x in range(1, size):
        for y in range(x + 1, size):
            closed &= ~(sets[:, x] & sets[:, y] & ~sets[:, x ^ y])
    return [frozenset(np.flatnonzero(row).tolist()) for row in sets[closed]]


def _rref_bases(n: int, k: int) -> Iterator[tuple[int, ...]]:
    # pivot = leading (highest) bit of each row; rows are zero on the other pivots
    for pivots in itertools.combinations(range(n - 1, -1, -1), k):
        free_slots = []
        for i, p in enumerate(pivots):
            for bit in range(p):
                if bit not in pivots:
                    free_slots.append((i, bit))
        for fill in range(1 << len(free_slots)):
            rows = [1 << p for p in pivots]
            for j, (i, bit) in enumerate(free_slots):
                if (fill >> j) & 1:
                    rows[i] |= 1 << bit
            yield tuple(rows)


def span(basis: tuple[int, ...]) -> np.ndarray:
    vecs = np.zeros(1, dtype=np.int64)
    for b in basis:
        vecs = np.concatenate([vecs, vecs ^ b])
    return vecs


def subspaces_by_basis(n: int) -> Iterator[np.ndarray]:
    """Every subspace once, via its unique reduced row-echelon basis."""
    if n > STRUCTURED_MAX_DIM:
        raise EnumerationCapError(f"subspace enumeration capped at n <= {STRUCTURED_MAX_DIM}")
    for k in range(n + 1):
        for basis in _rref_bases(n, k):
            yield span(basis)


def subspace_count(n: int) -> int:
    """Sum of Gaussian binomial coefficients [n choose k]_2."""
    total = 0
    for k in range(n + 1):
        num = den = 1
        for i in range(k):
            num *= (1 << (n - i)) - 1
            den *= (1 << (i + 1)) - 1
        total += num // den
    return total


# ---------------------------------------------------------------------------
# enumeration


def enumerate_property(prop: PropertyId, n: int) -> Iterator[BoolFn]:
    if n < 1:
        raise DimensionError("properties are defined for n >= 1")
    kind = prop.kind
    if kind == "EXPLICIT":
        yield from sorted((g for g in prop.members if g.n == n), key=lambda g: g.code)
    elif kind == "ALL1":
        yield BoolFn.ones(n)
    elif kind == "LIN":
        if n > STRUCTURED_MAX_DIM:
            raise EnumerationCapError(f"LIN enumeration capped at n <= {STRUCTURED_MAX_DIM}")
        yield from linear_functions(n)
    elif kind == "FREE100":
        if n > STRUCTURED_MAX_DIM:
            raise EnumerationCapError(f"FREE100 enumeration capped at n <= {STRUCTURED_MAX_DIM}")
        size = 1 << n
        if n <= FULL_SCAN_MAX_DIM:
            spaces = (np.fromiter(s, dtype=np.int64) for s in subspaces_by_closure(n))
        else:
            spaces = subspaces_by_basis(n)
        for space in spaces:
            table = np.ones(size, dtype=np.uint8)
            table[space] = 0
            yield BoolFn(n, table)
        yield BoolFn.ones(n)
    else:
        if n > FULL_SCAN_MAX_DIM:
            raise EnumerationCapError(f"{kind} enumeration needs a full scan, capped at n <= {FULL_SCAN_MAX_DIM}")
        bits = function_bits(n)
        for code in scan_codes(kind, n):
            yield BoolFn(n, bits[code])


def members(prop: PropertyId, n: int) -> list[BoolFn]:
    return list(enumerate_property(prop, n))


def difference(a: PropertyId, b: PropertyId, n: int) -> PropertyId:
    """EXPLICIT(a \\ b) at dimension n."""
    return PropertyId.explicit(
        (g for g in enumerate_property(a, n) if not membership(b, g)),
        name=f"{a}\\{b}",
    )


# ---------------------------------------------------------------------------
# distances


def _nearest(f: BoolFn, candidates: Iterable[BoolFn], method: str) -> DistanceResult:
    best_count, best = None, None
    batch: list[BoolFn] = []

    def flush():
        nonlocal best_count, best
        if not batch:
            return
        tables = np.stack([g.table for g in batch])
        counts = np.count_nonzero(tables != f.table, axis=1)
        m = int(counts.min())
        tied = [batch[i] for i in np.flatnonzero(counts == m)]
        cand = min(tied, key=lambda g: g.code)
        if best_count is None or m < best_count or (m == best_count and cand.code < best.code):
            best_count, best = m, cand
        batch.clear()

    for g in candidates:
        if g.n != f.n:
            continue
        batch.append(g)
        if len(batch) >= 4096:
            flush()
    flush()
    if best is None:
        raise ValueError("property has no members at this dimension")
    return DistanceResult(Fraction(best_count, f.size), best, method)


def _nearest_code(f: BoolFn, codes: np.ndarray, method: str) -> DistanceResult:
    if codes.size == 0:
        raise ValueError("property has no members at this dimension")
    counts = np.bitwise_count(codes ^ np.uint32(f.code))
    m = int(counts.min())
    code = int(codes[np.flatnonzero(counts == m)].min())
    return DistanceResult(Fraction(m, f.size), BoolFn.from_code(f.n, code), method)


def walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform over F_2^n (integer arithmetic)."""
    a = np.array(values, dtype=np.int64)
    h = 1
    while h < a.size:
        a = a.reshape(-1, 2, h)
        a = np.stack([a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]], axis=1).reshape(-1)
        h *= 2
    return a


def distance_to_lin(f: BoolFn) -> DistanceResult:
    # disagreements with a.x equal (N - W(a)) / 2 for W the transform of (-1)^f
    w = walsh_hadamard(1 - 2 * f.table.astype(np.int64))
    disagree = (f.size - w) // 2
    m = int(disagree.min())
    witness = min((LinearForm(f.n, int(a)).materialize() for a in np.flatnonzero(disagree == m)),
                  key=lambda g: g.code)
    return DistanceResult(Fraction(m, f.size), witness, "walsh-hadamard")


def distance_to(prop: PropertyId, f: BoolFn) -> DistanceResult:
    kind, n = prop.kind, f.n
    if kind == "LIN":
        return distance_to_lin(f)
    if kind == "ALL1":
        ones = BoolFn.ones(n)
        return DistanceResult(dist(f, ones), ones, "direct")
    if kind == "EXPLICIT":
        return _nearest(f, prop.members, "explicit")
    if kind == "FREE100":
        if n <= FULL_SCAN_MAX_DIM:
            return _nearest_code(f, scan_codes(kind, n), "scan")
        return _nearest(f, enumerate_property(prop, n), "subspace-enumeration")
    if kind == "NLTF" and n == 1:
        raise ValueError("NLTF is empty at n = 1")
    if n <= FULL_SCAN_MAX_DIM:
        return _nearest_code(f, scan_codes(kind, n), "scan")
    if kind == "FREE111" and weight(f) <= HITTING_MAX_WEIGHT:
        return distance_to_free111_hitting(f)
    if kind == "NLTF" and weight(f) <= HITTING_MAX_WEIGHT:
        return distance_to_nltf_hitting(f)
    raise EnumerationCapError(f"no exact method for dist(f, {prop}) at n={n}, weight={weight(f)}")


# ---------------------------------------------------------------------------
# triangle-freeness as a hitting-set problem over the support


def triangle_edges(f: BoolFn) -> list[int]:
    """Distinct-point sets of every triangle in f, as bitmasks over point indices."""
    supp = np.flatnonzero(f.table)
    t = f.table
    edges = set()
    if t[0]:
        edges.add(1)  # {0, 0, 0}: only deleting 0 kills it
        edges.update(1 | (1 << int(x)) for x in supp if x)
    nz = [int(x) for x in supp if x]
    for i, x in enumerate(nz):
        for y in nz[i + 1:]:
            z = x ^ y
            if z > y and t[z]:
                edges.add((1 << x) | (1 << y) | (1 << z))
    # supersets of another edge are hit automatically
    ordered = sorted(edges, key=lambda e: e.bit_count())
    minimal = []
    for e in ordered:
        if not any(m & e == m for m in minimal):
            minimal.append(e)
    return minimal


def _bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def minimum_hitting_sets(edges: list[int]) -> tuple[int, set[int]]:
    """Size of a minimum hitting set and every hitting set of that size."""

    def search(chosen: int, budget: int, out: Optional[set]) -> bool:
        for e in edges:
            if not e & chosen:
                break
        else:
            if out is not None:
                out.add(chosen)
            return True
        if budget == 0:
            return False
        found = False
        for v in _bits_of(e):
            if search(chosen | (1 << v), budget - 1, out):
                found = True
                if out is None:
                    return True
        return found

    k = 0
    while not search(0, k, None):
        k += 1
    solutions: set[int] = set()
    search(0, k, solutions)
    return k, {s for s in solutions if s.bit_count() == k}


def distance_to_free111_hitting(f: BoolFn) -> DistanceResult:
    """Exact dist(f, FREE111) by deleting a minimum set of support points.

    Searching deletions only is enough: for any triangle-free g, g AND f is
    triangle-free and no farther from f.
    """
    if weight(f) > HITTING_MAX_WEIGHT:
        raise EnumerationCapError(f"hitting-set search capped at weight <= {HITTING_MAX_WEIGHT}")
    k, solutions = minimum_hitting_sets(triangle_edges(f))
    code = f.code
    best = min(code & ~s for s in solutions)
    return DistanceResult(Fraction(k, f.size), BoolFn.from_code(f.n, best), "hitting-set")


def distance_to_nltf_hitting(f: BoolFn) -> DistanceResult:
    """dist(f, NLTF) from the minimum triangle-deletion sets.

    Every member of FREE111 at the optimal distance is a deletion of f, so if
    one of those is non-linear it is optimal; otherwise the answer sits one
    point further out (the linear optimum is 1/N from some NLTF member).
    """
    if f.n < 2:
        raise ValueError("NLTF is empty at n = 1")
    if weight(f) > HITTING_MAX_WEIGHT:
        raise EnumerationCapError(f"hitting-set search capped at weight <= {HITTING_MAX_WEIGHT}")
    k, solutions = minimum_hitting_sets(triangle_edges(f))
    code = f.code
    nonlinear = [c for c in (code & ~s for s in solutions)
                 if not is_linear(BoolFn.from_code(f.n, c))]
    if nonlinear:
        return DistanceResult(Fraction(k, f.size), BoolFn.from_code(f.n, min(nonlinear)), "hitting-set")
    return DistanceResult(Fraction(k + 1, f.size), None, "hitting-set+strip")


@lru_cache(maxsize=None)
def distance_table(kind: str, n: int) -> np.ndarray:
    """Disagreement count to the nearest member, for every function code at n <= 4."""
    size = 1 << (1 << n)
    codes = np.arange(size, dtype=np.uint32)
    targets = scan_codes(kind, n)
    if targets.size == 0:
        raise ValueError(f"{kind} is empty at n = {n}")
    best = np.full(size, 1 << n, dtype=np.int64)
    for t in targets:
        np.minimum(best, np.bitwise_count(codes ^ t), out=best)
    best.flags.writeable = False
    return best


def set_distance(a: PropertyId, b: PropertyId, n: int) -> Fraction:
    """Exact min over f in a, g in b of dist(f, g)."""
    if n <= FULL_SCAN_MAX_DIM:
        ca, cb = _codes_at(a, n), _codes_at(b, n)
        if ca.size == 0 or cb.size == 0:
            raise ValueError("empty property at this dimension")
        best = min(int(np.bitwise_count(cb ^ c).min()) for c in ca)
        return Fraction(best, 1 << n)
    left = members(a, n)
    if not left:
        raise ValueError("empty property at this dimension")
    right = members(b, n)
    return min(_nearest(f, right, "pairwise").value for f in left)


def _codes_at(prop: PropertyId, n: int) -> np.ndarray:
    if prop.kind == "EXPLICIT":
        return np.array(sorted(g.code for g in prop.members if g.n == n), dtype=np.uint32)
    if prop.kind == "FREE100":
        return np.array(sorted(g.code for g in enumerate_property(prop, n)), dtype=np.uint32)
    return scan_codes(prop.kind, n)
