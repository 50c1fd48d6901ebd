"""Set-theoretic tester constructions: union, intersection, set difference.

Side conditions (how far apart the parts are) are never checked here; they
are the caller's obligation and can be discharged with ``ptlab verify``.
"""
from __future__ import annotations

import re
from dataclasses import replace
from fractions import Fraction
from typing import Optional

from .testers import (
    BLRTester,
    Oracle,
    PatternFreeTester,
    RandomSource,
    Rational,
    Tester,
    ToleranceParams,
    TolerantLinTester,
    Verdict,
    check_eps,
    free100_tester,
    free110_tester,
    triangle_free_tester,
)


class ComposedTester(Tester):
    parts: tuple[Tester, ...] = ()
    repeats: int = 1

    def schedule(self, eps: Rational) -> tuple:
        """Effective distance parameter handed to each part."""
        return tuple(eps for _ in self.parts)

    def rounds(self, eps: Rational) -> int:
        return sum(self.repeats * p.rounds(e) for p, e in zip(self.parts, self.schedule(eps)))

    def budget(self, eps: Rational) -> int:
        return sum(self.repeats * p.budget(e) for p, e in zip(self.parts, self.schedule(eps)))

    def _run_parts(self, oracle: Oracle, eps: Rational, rng: RandomSource) -> list[list[Verdict]]:
        runs = []
        for part, e in zip(self.parts, self.schedule(eps)):
            runs.append([part.run(oracle, e, rng) for _ in range(self.repeats)])
        return runs

    def _combine(self, accept: bool, runs: list[list[Verdict]], rng: RandomSource) -> Verdict:
        flat = tuple(v for rs in runs for v in rs)
        return Verdict(
            accept=accept,
            rounds_run=sum(v.rounds_run for v in flat),
            queries_used=sum(v.queries_used for v in flat),
            seed=rng.seed,
            parts=flat,
        )


class UnionTester(ComposedTester):
    """Accepts iff some part, amplified by two independent runs, accepts.

    A one-sided part that accepts a far input w.p. <= 1/3 accepts both runs
    w.p. <= 1/9 <= 1/6, which is what the union bound needs.
    """

    one_sided = True

    def __init__(self, t1: Tester, t2: Tester, repeats: int = 2):
        for t in (t1, t2):
            if not t.one_sided:
                raise ValueError(f"union needs one-sided parts; {t.describe()} is two-sided")
        self.parts = (t1, t2)
        self.repeats = repeats
        self.name = "union"

    def run(self, oracle: Oracle, eps: Rational, rng: RandomSource) -> Verdict:
        runs = self._run_parts(oracle, eps, rng)
        return self._combine(any(all(v.accept for v in rs) for rs in runs), runs, rng)

    def describe(self) -> str:
        return f"union({self.parts[0].describe()}, {self.parts[1].describe()})"


class IntersectionTester(ComposedTester):
    """Runs both parts at min(eps, eps0/2) and accepts iff both accept."""

    def __init__(self, t1: Tester, t2: Tester, eps0: Rational):
        self.parts = (t1, t2)
        self.eps0 = check_eps(eps0)
        self.one_sided = t1.one_sided and t2.one_sided
        self.name = "intersect"

    def schedule(self, eps: Rational) -> tuple:
        e = min(check_eps(eps), self.eps0 / 2)
        return (e, e)

    def run(self, oracle: Oracle, eps: Rational, rng: RandomSource) -> Verdict:
        runs = self._run_parts(oracle, eps, rng)
        return self._combine(all(rs[0].accept for rs in runs), runs, rng)

    def describe(self) -> str:
        return f"intersect({self.parts[0].describe()}, {self.parts[1].describe()}, eps0={self.eps0})"


class DifferenceTester(ComposedTester):
    """Tester for P1 \\ P2 from a tester of P1 and a tolerant tester of P2.

    Accepts iff T1 (run at min(eps, eps1)) accepts and the tolerant tester
    rejects. Two-sided: members are accepted with probability >= 2/3 only.
    """

    one_sided = False

    def __init__(self, t1: Tester, tol2: TolerantLinTester, eps0: Rational, t: ToleranceParams):
        eps0 = check_eps(eps0)
        # members sit >= eps0 from P2, so eps2 <= eps0 is all completeness needs
        if not t.eps1 < t.eps2 <= eps0:
            raise ValueError(f"need eps1 < eps2 <= eps0, got {t.eps1}, {t.eps2}, {eps0}")
        if not isinstance(tol2, TolerantLinTester):
            raise ValueError("second part of a difference must be a tolerant tester")
        if tol2.tolerance != t:
            tol2 = TolerantLinTester(t, tol2.samples)
        self.parts = (t1, tol2)
        self.eps0 = eps0
        self.tolerance = t
        self.name = "diff"

    def schedule(self, eps: Rational) -> tuple:
        return (min(check_eps(eps), self.tolerance.eps1), None)

    def run(self, oracle: Oracle, eps: Rational, rng: RandomSource) -> Verdict:
        runs = self._run_parts(oracle, eps, rng)
        return self._combine(runs[0][0].accept and not runs[1][0].accept, runs, rng)

    def describe(self) -> str:
        t = self.tolerance
        return (f"diff({self.parts[0].describe()}, {self.parts[1].describe()}, "
                f"eps0={self.eps0}, eps1={t.eps1}, eps2={t.eps2})")


def union_tester(t1: Tester, t2: Tester) -> UnionTester:
    return UnionTester(t1, t2)


def intersection_tester(t1: Tester, t2: Tester, eps0: Rational) -> IntersectionTester:
    return IntersectionTester(t1, t2, eps0)


def difference_tester(t1: Tester, tol2: TolerantLinTester, eps0: Rational,
                      t: ToleranceParams) -> DifferenceTester:
    return DifferenceTester(t1, tol2, eps0, t)


def passthrough_difference(t1: PatternFreeTester, name: str) -> PatternFreeTester:
    """Tester for P1 \\ P2 that is just T1 under a new name.

    Sound whenever P2 lies within the 2^-n strip of P1 \\ P2, so that any
    input eps-far from the difference is (eps - 2^-n)-far from P1.
    """
    return replace(t1, name=name)


def nltf_tester(rounds: Optional[int] = None, c: int = 64) -> PatternFreeTester:
    """The triangle-freeness tester, relabeled.

    Every NLTF member is triangle-free and every linear function is 2^-n
    from NLTF, so nothing beyond the FREE111 check is needed.
    """
    return passthrough_difference(triangle_free_tester(c, rounds), "nltf")


def linearity_via_intersection(eps0: Rational = Fraction(1, 4)) -> IntersectionTester:
    return IntersectionTester(triangle_free_tester(), free100_tester(), eps0)


# ---------------------------------------------------------------------------
# tester expressions:
#   expr    := NAME (":" KEY "=" NUM)* [ "(" arg ("," arg)* ")" ]
#   arg     := expr | KEY "=" NUM
#   NUM     := decimal or fraction, e.g. 0.25 or 1/16


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:/\d+)?|\.\d+)|(?P<name>[A-Za-z_][\w\-]*)|(?P<sym>[():,=]))")

_ATOMIC_OPTIONS = {
    "blr": {"c", "rounds"},
    "free100": {"c", "rounds"},
    "free110": {"c", "rounds"},
    "free111": {"c", "rounds"},
    "triangle": {"c", "rounds"},
    "nltf": {"c", "rounds"},
    "tol-lin": {"eps1", "eps2", "samples"},
}
_COMBINATOR_KEYS = {
    "union": set(),
    "intersect": {"eps0"},
    "diff": {"eps0", "eps1", "eps2"},
}
_ALIASES = {"tolerant-lin": "tol-lin", "tol_lin": "tol-lin", "intersection": "intersect",
            "difference": "diff", "or": "union", "and": "intersect"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip() == "":
                    break
                raise ParseError("unexpected character", text, pos)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self, offset: int = 0):
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else (None, None, len(self.text))

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise ParseError(f"expected {want!r}", self.text, tok[2])
        self.i += 1
        return tok

    def number(self) -> Fraction:
        _, value, pos = self.take("num")
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad number {value!r}", self.text, pos) from None

    def parse(self) -> Tester:
        tester = self.expr()
        if self.peek()[0] is not None:
            raise ParseError("trailing input", self.text, self.peek()[2])
        return tester

    def expr(self) -> Tester:
        _, raw, pos = self.take("name")
        name = _ALIASES.get(raw.lower(), raw.lower())
        options = {}
        while self.peek()[1] == ":":
            self.take("sym", ":")
            _, key, kpos = self.take("name")
            self.take("sym", "=")
            options[key] = (self.number(), kpos)
        if name in _COMBINATOR_KEYS:
            if options:
                raise ParseError(f"{name} takes keyword arguments, not options", self.text, pos)
            return self.combinator(name, pos)
        if name not in _ATOMIC_OPTIONS:
            raise ParseError(f"unknown tester {raw!r}", self.text, pos)
        for key, (_, kpos) in options.items():
            if key not in _ATOMIC_OPTIONS[name]:
                raise ParseError(f"unknown option {key!r} for {name}", self.text, kpos)
        if self.peek()[1] == "(":
            raise ParseError(f"{name} takes no arguments", self.text, self.peek()[2])
        return build_atomic(name, {k: v for k, (v, _) in options.items()})

    def combinator(self, name: str, pos: int) -> Tester:
        self.take("sym", "(")
        parts, kwargs = [], {}
        while True:
            if self.peek()[0] == "name" and self.peek(1)[1] == "=":
                _, key, kpos = self.take("name")
                if key not in _COMBINATOR_KEYS[name]:
                    raise ParseError(f"unknown keyword {key!r} for {name}", self.text, kpos)
                self.take("sym", "=")
                kwargs[key] = self.number()
            else:
                parts.append(self.expr())
            if self.peek()[1] == ",":
                self.take("sym", ",")
                continue
            self.take("sym", ")")
            break
        if len(parts) != 2:
            raise ParseError(f"{name} needs exactly two testers, got {len(parts)}", self.text, pos)
        try:
            return build_combinator(name, parts, kwargs)
        except ValueError as exc:
            raise ParseError(str(exc), self.text, pos) from None


def build_atomic(name: str, options: dict) -> Tester:
    def as_int(key):
        value = options.get(key)
        if value is None:
            return None
        if value.denominator != 1 or value < 1:
            raise ValueError(f"{key} must be a positive integer")
        return int(value)

    rounds, c = as_int("rounds"), as_int("c")
    if name == "blr":
        return BLRTester(c if c is not None else 4, rounds)
    if name == "free100":
        return free100_tester(c if c is not None else 256, rounds)
    if name == "free110":
        return free110_tester(c if c is not None else 256, rounds)
    if name in ("free111", "triangle"):
        return triangle_free_tester(c if c is not None else 64, rounds)
    if name == "nltf":
        return nltf_tester(rounds, c if c is not None else 64)
    if name == "tol-lin":
        t = ToleranceParams(options.get("eps1", Fraction(1, 16)), options.get("eps2", Fraction(1, 4)))
        samples = as_int("samples")
        return TolerantLinTester(t, samples) if samples else TolerantLinTester(t)
    raise ValueError(f"unknown tester {name!r}")


def build_combinator(name: str, parts: list[Tester], kwargs: dict) -> Tester:
    if name == "union":
        return UnionTester(*parts)
    if name == "intersect":
        return IntersectionTester(*parts, kwargs.get("eps0", Fraction(1, 4)))
    if name == "diff":
        tol = parts[1]
        if not isinstance(tol, TolerantLinTester):
            raise ValueError("diff needs a tolerant tester (tol-lin) as its second part")
        t = ToleranceParams(kwargs.get("eps1", tol.tolerance.eps1), kwargs.get("eps2", tol.tolerance.eps2))
        return DifferenceTester(parts[0], tol, kwargs.get("eps0", Fraction(1, 4)), t)
    raise ValueError(f"unknown combinator {name!r}")


def parse_tester(text: str) -> Tester:
    """Build a tester from an expression such as
    ``intersect(free111:rounds=200000, free100, eps0=0.25)``."""
    if not text or not text.strip():
        raise ParseError("empty tester expression", text, 0)
    try:
        return _Parser(text).parse()
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), text, 0) from None


__all__ = [
    "ComposedTester", "UnionTester", "IntersectionTester", "DifferenceTester",
    "union_tester", "intersection_tester", "difference_tester", "nltf_tester",
    "passthrough_difference", "linearity_via_intersection", "parse_tester", "ParseError",
]
