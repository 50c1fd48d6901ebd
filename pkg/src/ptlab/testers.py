"""Randomized, query-counted testers for Boolean functions over F_2^n."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .gf2 import BoolFn, DimensionError, point_index
from .patterns import P100, P110, P111, PatternClass
from .properties import LIN, PropertyId, walsh_hadamard

Rational = Union[Fraction, int, float, str]

SEED_BITS = 64
FIRST_BATCH = 32
MAX_BATCH = 1 << 14


def as_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def check_eps(eps: Rational) -> Fraction:
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise ValueError(f"distance parameter must lie in (0, 1), got {eps}")
    return eps


class RandomSource:
    """Seeded stream of uniform points; same seed and call sequence, same draws."""

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed < (1 << SEED_BITS):
            raise ValueError(f"seed must be an unsigned {SEED_BITS}-bit integer")
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def points(self, n: int, size: int) -> np.ndarray:
        return self._gen.integers(0, 1 << n, size=size, dtype=np.int64)


class Oracle:
    """Query access to a truth table with exact accounting."""

    def __init__(self, target: BoolFn, log: bool = False):
        self.target = target
        self.queries_used = 0
        self.query_log: Optional[list[int]] = [] if log else None

    @property
    def n(self) -> int:
        return self.target.n

    def __call__(self, x) -> int:
        i = point_index(self.target.n, x)
        self.queries_used += 1
        if self.query_log is not None:
            self.query_log.append(i)
        return int(self.target.table[i])

    def query_batch(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        if xs.size and (xs.min() < 0 or xs.max() >= self.target.size):
            raise DimensionError(f"query outside F_2^{self.target.n}")
        self.queries_used += int(xs.size)
        if self.query_log is not None:
            self.query_log.extend(int(x) for x in xs.ravel())
        return self.target.table[xs]

    def reset(self) -> None:
        self.queries_used = 0
        if self.query_log is not None:
            self.query_log.clear()


@dataclass(frozen=True)
class Verdict:
    accept: bool
    rounds_run: int
    queries_used: int
    seed: int
    parts: tuple = field(default=(), compare=False)

    def to_dict(self) -> dict:
        return {"accept": self.accept, "rounds": self.rounds_run,
                "queries": self.queries_used, "seed": self.seed}


@dataclass(frozen=True)
class ToleranceParams:
    eps1: Fraction
    eps2: Fraction

    def __post_init__(self):
        e1, e2 = as_fraction(self.eps1), as_fraction(self.eps2)
        if not 0 < e1 < e2 < 1:
            raise ValueError(f"need 0 < eps1 < eps2 < 1, got {e1}, {e2}")
        object.__setattr__(self, "eps1", e1)
        object.__setattr__(self, "eps2", e2)

    @property
    def threshold(self) -> Fraction:
        return (self.eps1 + self.eps2) / 2


def run_three_query_rounds(oracle: Oracle, rounds: int, rng: RandomSource,
                           reject_ones: tuple[int, ...]) -> tuple[bool, int]:
    """Repeat the (x, y, x+y) check; reject when the number of ones is in ``reject_ones``.

    Rounds are issued in growing batches and the run stops after the first
    batch containing a rejecting round, so rounds_run counts whole batches.
    """
    n = oracle.n
    done, batch = 0, FIRST_BATCH
    reject_table = np.zeros(4, dtype=bool)
    reject_table[list(reject_ones)] = True
    while done < rounds:
        m = min(batch, rounds - done)
        x = rng.points(n, m)
        y = rng.points(n, m)
        vals = oracle.query_batch(np.concatenate([x, y, x ^ y])).reshape(3, m)
        done += m
        if reject_table[vals.sum(axis=0)].any():
            return True, done
        batch = min(batch * 2, MAX_BATCH)
    return False, done


class Tester:
    """Base class: a tester maps (oracle, eps, random source) to a Verdict."""

    name = "tester"
    one_sided = True

    def rounds(self, eps: Rational) -> int:
        raise NotImplementedError

    def budget(self, eps: Rational) -> int:
        return 3 * self.rounds(eps)

    def run(self, oracle: Oracle, eps: Rational, rng: RandomSource) -> Verdict:
        raise NotImplementedError

    def describe(self) -> str:
        return self.name


@dataclass
class PatternFreeTester(Tester):
    """Repeat the 3-query pattern check ceil(c / eps**power) times, or a fixed count."""

    pattern: PatternClass
    c: int
    power: int
    fixed_rounds: Optional[int] = None
    name: str = "pattern-free"

    def rounds(self, eps: Rational) -> int:
        if self.fixed_rounds is not None:
            return self.fixed_rounds
        eps = check_eps(eps)
        return math.ceil(self.c / eps ** self.power)

    def run(self, oracle: Oracle, eps: Rational, rng: RandomSource) -> Verdict:
        rounds = self.rounds(eps)
        if rounds < 1:
            raise ValueError("rounds must be at least 1")
        before = oracle.queries_used
        rejected, done = run_three_query_rounds(oracle, rounds, rng, (self.pattern.ones,))
        return Verdict(not rejected, done, oracle.queries_used - before, rng.seed)

    def describe(self) -> str:
        if self.fixed_rounds is not None:
            return f"{self.name}:rounds={self.fixed_rounds}"
        return f"{self.name}:c={self.c}"


@dataclass
class BLRTester(Tester):
    c: int = 4
    fixed_rounds: Optional[int] = None
    name: str = "blr"

    def rounds(self, eps: Rational) -> int:
        if self.fixed_rounds is not None:
            return self.fixed_rounds
        return math.ceil(self.c / check_eps(eps))

    def run(self, oracle: Oracle, eps: Rational, rng: RandomSource) -> Verdict:
        rounds = self.rounds(eps)
        before = oracle.queries_used
        # f(x) + f(y) != f(x+y) iff the triple holds an odd number of ones
        rejected, done = run_three_query_rounds(oracle, rounds, rng, (1, 3))
        return Verdict(not rejected, done, oracle.queries_used - before, rng.seed)

    def describe(self) -> str:
        if self.fixed_rounds is not None:
            return f"{self.name}:rounds={self.fixed_rounds}"
        return f"{self.name}:c={self.c}"


def free100_tester(c: int = 256, rounds: Optional[int] = None) -> PatternFreeTester:
    return PatternFreeTester(P100, c, 2, rounds, name="free100")


def free110_tester(c: int = 256, rounds: Optional[int] = None) -> PatternFreeTester:
    # complementing f swaps (1,0,0) and (1,1,0), so the same schedule applies
    return PatternFreeTester(P110, c, 2, rounds, name="free110")


def triangle_free_tester(c: int = 64, rounds: Optional[int] = None) -> PatternFreeTester:
    """Heuristic ceil(c/eps^3) schedule; the proven bound is tower-type."""
    return PatternFreeTester(P111, c, 3, rounds, name="free111")


def blr_test(o: Oracle, eps: Rational, r: RandomSource, c: int = 4) -> Verdict:
    return BLRTester(c).run(o, eps, r)


def pattern_free_test(o: Oracle, p: PatternClass, rounds: int, r: RandomSource) -> Verdict:
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    return PatternFreeTester(p, 1, 0, rounds).run(o, Fraction(1, 2), r)


def free100_test(o: Oracle, eps: Rational, r: RandomSource, c: int = 256) -> Verdict:
    return free100_tester(c).run(o, eps, r)


# ---------------------------------------------------------------------------
# self-correction


def xor_convolution(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(a * b)(x) = sum_y a(y) b(x + y), exactly."""
    wa = walsh_hadamard(a)
    wb = walsh_hadamard(b)
    return walsh_hadamard(wa * wb) // a.size


@dataclass(frozen=True)
class SelfCorrection:
    g: BoolFn
    eps: Fraction
    count00: np.ndarray
    count10: np.ndarray
    clash_points: tuple[int, ...]
    distance: Fraction

    @property
    def clash(self) -> bool:
        return bool(self.clash_points)

    def p00(self, x: int) -> Fraction:
        return Fraction(int(self.count00[x]), self.g.size)

    def p10(self, x: int) -> Fraction:
        return Fraction(int(self.count10[x]), self.g.size)


SELF_CORRECT_MAX_DIM = 12


def self_correct(f: BoolFn, eps: Rational) -> SelfCorrection:
    """Threshold correction g of f.

    g(x) = 0 if Pr_y[(f(y), f(x+y)) = (0,0)] >= eps/4, else 1 if
    Pr_y[(f(y), f(x+y)) = (1,0)] >= eps/4, else f(x). Points meeting both
    thresholds are reported as clashes (and take the first branch).
    """
    eps = check_eps(eps)
    if f.n > SELF_CORRECT_MAX_DIM:
        raise DimensionError(f"exact self-correction capped at n <= {SELF_CORRECT_MAX_DIM}")
    one = f.table.astype(np.int64)
    zero = 1 - one
    c00 = xor_convolution(zero, zero)
    c10 = xor_convolution(one, zero)
    # count/N >= eps/4  <=>  4 * count * den >= num * N
    lhs_scale = 4 * eps.denominator
    rhs = eps.numerator * f.size
    hit00 = c00 * lhs_scale >= rhs
    hit10 = c10 * lhs_scale >= rhs
    g = np.where(hit00, 0, np.where(hit10, 1, f.table)).astype(np.uint8)
    gfn = BoolFn(f.n, g)
    return SelfCorrection(
        g=gfn, eps=eps, count00=c00, count10=c10,
        clash_points=tuple(int(x) for x in np.flatnonzero(hit00 & hit10)),
        distance=Fraction(int(np.count_nonzero(g != f.table)), f.size),
    )


# ---------------------------------------------------------------------------
# distance estimation and tolerant testing

DEFAULT_ESTIMATE_SAMPLES = 512
MIN_TOLERANCE_GAP = Fraction(1, 8)


def estimate_distance(o: Oracle, prop: PropertyId, samples: int, r: RandomSource) -> Fraction:
    """Empirical distance to the nearest linear function on a uniform sample.

    Queries ``samples`` uniform points once each, then minimizes the empirical
    disagreement over all 2^n linear forms in one Walsh-Hadamard pass.
    """
    if prop != LIN:
        raise ValueError(f"distance estimation only supports LIN, got {prop}")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    xs = r.points(o.n, samples)
    vals = o.query_batch(xs).astype(np.int64)
    signed = np.zeros(1 << o.n, dtype=np.int64)
    np.add.at(signed, xs, 1 - 2 * vals)
    disagree = (samples - walsh_hadamard(signed)) // 2
    return Fraction(int(disagree.min()), samples)


@dataclass
class TolerantLinTester(Tester):
    """Accept iff the estimated distance to LIN falls below (eps1 + eps2) / 2."""

    tolerance: ToleranceParams
    samples: int = DEFAULT_ESTIMATE_SAMPLES
    name: str = "tol-lin"
    one_sided = False

    def __post_init__(self):
        if self.tolerance.eps2 - self.tolerance.eps1 < MIN_TOLERANCE_GAP:
            raise ValueError(f"tolerance gap must be at least {MIN_TOLERANCE_GAP}")

    def rounds(self, eps: Rational = None) -> int:
        return 1

    def budget(self, eps: Rational = None) -> int:
        return self.samples

    def run(self, oracle: Oracle, eps: Rational, rng: RandomSource) -> Verdict:
        before = oracle.queries_used
        estimate = estimate_distance(oracle, LIN, self.samples, rng)
        accept = estimate < self.tolerance.threshold
        return Verdict(accept, 1, oracle.queries_used - before, rng.seed)

    def describe(self) -> str:
        t = self.tolerance
        return f"{self.name}:eps1={t.eps1}:eps2={t.eps2}:samples={self.samples}"


def tolerant_lin_test(o: Oracle, t: ToleranceParams, r: RandomSource,
                      samples: int = DEFAULT_ESTIMATE_SAMPLES) -> Verdict:
    return TolerantLinTester(t, samples).run(o, None, r)

