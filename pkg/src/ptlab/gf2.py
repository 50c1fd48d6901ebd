"""Points of F_2^n and truth tables of Boolean functions on them.

Point index convention: bit j of the integer index holds coordinate x_{j+1},
so xor of points is integer xor.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence, Union

import numpy as np

MAX_DIM = 24


class DimensionError(ValueError):
    pass


def _check_dim(n: int) -> None:
    if not 1 <= n <= MAX_DIM:
        raise DimensionError(f"dimension must be in [1, {MAX_DIM}], got {n}")


def parity(values: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(values) & 1).astype(np.uint8)


@dataclass(frozen=True)
class PointF2n:
    n: int
    bits: int

    def __post_init__(self):
        _check_dim(self.n)
        if not 0 <= self.bits < (1 << self.n):
            raise DimensionError(f"point {self.bits} outside F_2^{self.n}")

    def __add__(self, other: PointF2n) -> PointF2n:
        if other.n != self.n:
            raise DimensionError("cannot add points of different dimension")
        return PointF2n(self.n, self.bits ^ other.bits)

    def dot(self, other: PointF2n) -> int:
        if other.n != self.n:
            raise DimensionError("cannot take inner product across dimensions")
        return (self.bits & other.bits).bit_count() & 1

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    @classmethod
    def from_string(cls, s: str) -> PointF2n:
        """Parse ``"x_n ... x_1"`` written most significant coordinate first."""
        return cls(len(s), int(s, 2))

    def __str__(self) -> str:
        return format(self.bits, f"0{self.n}b")


Point = Union[PointF2n, int]


def point_index(n: int, x: Point) -> int:
    if isinstance(x, PointF2n):
        if x.n != n:
            raise DimensionError(f"point of dimension {x.n} used with function of dimension {n}")
        return x.bits
    x = int(x)
    if not 0 <= x < (1 << n):
        raise DimensionError(f"point {x} outside F_2^{n}")
    return x


class BoolFn:
    """Immutable truth table of a function F_2^n -> {0,1}."""

    __slots__ = ("n", "table", "_hash")

    def __init__(self, n: int, table: Iterable[int]):
        _check_dim(n)
        arr = np.array(table, dtype=np.uint8).reshape(-1)
        if arr.size != 1 << n:
            raise DimensionError(f"table length {arr.size} != 2^{n}")
        if arr.size and arr.max() > 1:
            raise ValueError("truth table entries must be 0 or 1")
        arr.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "table", arr)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("BoolFn is immutable")

    @property
    def size(self) -> int:
        return 1 << self.n

    def __call__(self, x: Point) -> int:
        return int(self.table[point_index(self.n, x)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoolFn):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.n, self.table.tobytes())))
        return self._hash

    def __repr__(self) -> str:
        if self.n <= 6:
            return f"BoolFn(n={self.n}, '{self.bitstring()}')"
        return f"BoolFn(n={self.n}, weight={weight(self)})"

    def bitstring(self) -> str:
        """Table entries in index order (index 0 first), as used by .tt files."""
        return "".join("1" if b else "0" for b in self.table)

    @property
    def code(self) -> int:
        """Integer whose bit i is f(i). Orders witnesses deterministically."""
        return int.from_bytes(np.packbits(self.table, bitorder="little").tobytes(), "little")

    def __invert__(self) -> BoolFn:
        return BoolFn(self.n, 1 - self.table)

    def __and__(self, other: BoolFn) -> BoolFn:
        _same_dim(self, other)
        return BoolFn(self.n, self.table & other.table)

    def __or__(self, other: BoolFn) -> BoolFn:
        _same_dim(self, other)
        return BoolFn(self.n, self.table | other.table)

    def __xor__(self, other: BoolFn) -> BoolFn:
        _same_dim(self, other)
        return BoolFn(self.n, self.table ^ other.table)

    def flip(self, *points: Point) -> BoolFn:
        t = self.table.copy()
        for x in points:
            t[point_index(self.n, x)] ^= 1
        return BoolFn(self.n, t)

    @classmethod
    def zeros(cls, n: int) -> BoolFn:
        return cls(n, np.zeros(1 << n, dtype=np.uint8))

    @classmethod
    def ones(cls, n: int) -> BoolFn:
        return cls(n, np.ones(1 << n, dtype=np.uint8))

    @classmethod
    def from_code(cls, n: int, code: int) -> BoolFn:
        _check_dim(n)
        size = 1 << n
        if not 0 <= code < (1 << size):
            raise ValueError(f"code {code} does not describe a function on F_2^{n}")
        buf = np.frombuffer(code.to_bytes((size + 7) // 8, "little"), dtype=np.uint8)
        return cls(n, np.unpackbits(buf, bitorder="little")[:size])

    @classmethod
    def from_bitstring(cls, s: str) -> BoolFn:
        s = s.strip()
        n = len(s).bit_length() - 1
        if len(s) != 1 << n:
            raise DimensionError(f"table length {len(s)} is not a power of two")
        if set(s) - {"0", "1"}:
            raise ValueError("truth table must contain only 0 and 1")
        return cls(n, [c == "1" for c in s])

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], int]) -> BoolFn:
        return cls(n, [fn(i) & 1 for i in range(1 << n)])

    @classmethod
    def from_support(cls, n: int, points: Iterable[Point]) -> BoolFn:
        t = np.zeros(1 << n, dtype=np.uint8)
        for x in points:
            t[point_index(n, x)] = 1
        return cls(n, t)


def _same_dim(f: BoolFn, g: BoolFn) -> None:
    if f.n != g.n:
        raise DimensionError(f"dimension mismatch: {f.n} vs {g.n}")


@dataclass(frozen=True)
class LinearForm:
    """x -> a.x mod 2."""

    n: int
    a: int

    def __post_init__(self):
        _check_dim(self.n)
        a = self.a.bits if isinstance(self.a, PointF2n) else int(self.a)
        if not 0 <= a < (1 << self.n):
            raise DimensionError(f"coefficient {a} outside F_2^{self.n}")
        object.__setattr__(self, "a", a)

    def __call__(self, x: Point) -> int:
        return (self.a & point_index(self.n, x)).bit_count() & 1

    def materialize(self) -> BoolFn:
        idx = np.arange(1 << self.n, dtype=np.uint32)
        return BoolFn(self.n, parity(idx & self.a))


def evaluate(f: BoolFn, x: Point) -> int:
    return f(x)


def dist(f: BoolFn, g: BoolFn) -> Fraction:
    _same_dim(f, g)
    return Fraction(int(np.count_nonzero(f.table != g.table)), f.size)


def support(f: BoolFn) -> frozenset:
    return frozenset(int(i) for i in np.flatnonzero(f.table))


def weight(f: BoolFn) -> int:
    return int(np.count_nonzero(f.table))


def make_disjunction(forms: Sequence[LinearForm], n: int | None = None) -> BoolFn:
    """OR of linear forms; the empty disjunction is the zero function (needs ``n``)."""
    forms = list(forms)
    if not forms:
        if n is None:
            raise ValueError("dimension required for an empty disjunction")
        return BoolFn.zeros(n)
    dims = {form.n for form in forms}
    if len(dims) != 1 or (n is not None and dims != {n}):
        raise DimensionError(f"mixed dimensions in disjunction: {sorted(dims)}")
    table = np.zeros(1 << forms[0].n, dtype=np.uint8)
    for form in forms:
        table |= form.materialize().table
    return BoolFn(forms[0].n, table)


def linear_functions(n: int) -> list[BoolFn]:
    return [LinearForm(n, a).materialize() for a in range(1 << n)]


def read_tt(path: str | Path) -> BoolFn:
    return parse_tt(Path(path).read_text())


def parse_tt(text: str) -> BoolFn:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if len(lines) != 2:
        raise ValueError(".tt input must have exactly two lines: n and the table")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"bad dimension line {lines[0]!r}") from None
    f = BoolFn.from_bitstring(lines[1])
    if f.n != n:
        raise DimensionError(f"header says n={n} but table has length {f.size}")
    return f


def format_tt(f: BoolFn) -> str:
    return f"{f.n}\n{f.bitstring()}\n"


def write_tt(f: BoolFn, path: str | Path) -> None:
    Path(path).write_text(format_tt(f))
