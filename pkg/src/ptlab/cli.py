"""Command-line entry point: ``ptlab <command> ...``.

Output is deterministic given the arguments and seed; wall-time is only
reported with --timing so that repeated runs are byte-identical.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import __version__
from .claims import CLAIMS, ClaimCapError, ClaimResult, verify
from .combinators import ParseError, parse_tester
from .gf2 import BoolFn, LinearForm, format_tt, make_disjunction, read_tt
from .hardness import hardness_report
from .patterns import P100, P110, P111, count_ordered_violations, count_triangles
from .properties import EnumerationCapError, PropertyId, distance_to, enumerate_property
from .testers import Oracle, RandomSource, check_eps

CSV_COLUMNS = {
    "test": ["trial", "accept", "rounds", "queries", "seed"],
    "enumerate": ["index", "n", "table"],
    "distance": ["property", "n", "distance", "decimal", "witness", "method"],
    "census": ["point", "triangles"],
    "verify": ["claim", "n", "status", "checked", "witness"],
}

EPILOG = """CSV columns (fixed order):
  test       trial,accept,rounds,queries,seed
  enumerate  index,n,table
  distance   property,n,distance,decimal,witness,method
  census     point,triangles
  verify     claim,n,status,checked,witness

Exact rationals are printed as "num/den" with a 6-place decimal alongside.
PTLAB_THREADS caps the worker pool used by --trials (default 1).
"""


def rational(value: Fraction) -> dict:
    value = Fraction(value)
    return {"exact": f"{value.numerator}/{value.denominator}", "decimal": f"{float(value):.6f}"}


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, BoolFn):
        return obj.bitstring()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def dump(obj: Any) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"))


def _csv(rows: list[list], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PTLAB_THREADS", "1")))
    except ValueError:
        return 1


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_test(args) -> int:
    tester = parse_tester(args.tester)
    f = read_tt(args.input)
    eps = check_eps(args.epsilon)
    trials = args.trials or 1

    def one(i: int):
        seed = (args.seed + i) % (1 << 64)
        oracle = Oracle(f)
        return i, tester.run(oracle, eps, RandomSource(seed))

    workers = min(_threads(), trials)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(one, range(trials)))
    else:
        results = [one(i) for i in range(trials)]
    results.sort(key=lambda r: r[0])

    out = sys.stdout
    if args.format == "csv":
        rows = [[i, int(v.accept), v.rounds_run, v.queries_used, v.seed] for i, v in results]
        out.write(_csv(rows, CSV_COLUMNS["test"]))
        return 0
    for i, v in results:
        out.write(dump(v.to_dict()) + "\n")
    if args.trials:
        accepted = sum(v.accept for _, v in results)
        out.write(dump({"summary": {
            "tester": tester.describe(),
            "epsilon": eps,
            "trials": trials,
            "accepted": accepted,
            "accept_rate": Fraction(accepted, trials),
            "budget": tester.budget(eps),
        }}) + "\n")
    return 0


def _claim_row(r: ClaimResult) -> list:
    return [r.claim, "" if r.n is None else r.n, "PASS" if r.passed else "FAIL", r.checked, r.witness or ""]


def cmd_verify(args) -> int:
    names = list(CLAIMS) if args.claim == "all" else [args.claim]
    results = []
    for name in names:
        t0 = time.perf_counter()
        n = args.n if CLAIMS[name][1] is not None else None
        r = verify(name, n)
        results.append((r, time.perf_counter() - t0))
    if args.format == "csv":
        sys.stdout.write(_csv([_claim_row(r) for r, _ in results], CSV_COLUMNS["verify"]))
    else:
        for r, wall in results:
            report = {
                "command": "verify",
                "params": {"claim": r.claim, "n": r.n},
                "status": "PASS" if r.passed else "FAIL",
                "passed": r.passed,
                "checked": r.checked,
                "results": r.details,
            }
            if r.witness is not None:
                report["witness"] = r.witness
            if args.timing:
                report["wall_time_s"] = round(wall, 3)
            sys.stdout.write(dump(report) + "\n")
    for r, _ in results:
        sys.stderr.write(f"{'PASS' if r.passed else 'FAIL'}: {r.claim}"
                         + (f" (n={r.n})" if r.n is not None else "")
                         + (f" witness={r.witness}" if r.witness else "") + "\n")
    return 0 if all(r.passed for r, _ in results) else 1


def cmd_distance(args) -> int:
    prop = PropertyId.parse(args.property)
    f = read_tt(args.input)
    res = distance_to(prop, f)
    witness = res.witness.bitstring() if res.witness is not None else None
    if args.format == "csv":
        sys.stdout.write(_csv([[str(prop), f.n, f"{res.value.numerator}/{res.value.denominator}",
                                f"{float(res.value):.6f}", witness or "", res.method]],
                              CSV_COLUMNS["distance"]))
        return 0
    sys.stdout.write(dump({
        "command": "distance",
        "params": {"property": str(prop), "n": f.n},
        "results": {"distance": res.value, "witness": witness, "method": res.method},
    }) + "\n")
    return 0


def cmd_enumerate(args) -> int:
    prop = PropertyId.parse(args.property)
    fns = list(enumerate_property(prop, args.n))
    if args.format == "csv":
        sys.stdout.write(_csv([[i, g.n, g.bitstring()] for i, g in enumerate(fns)], CSV_COLUMNS["enumerate"]))
    elif args.format == "tt":
        sys.stdout.write("".join(format_tt(g) for g in fns))
    else:
        for g in fns:
            sys.stdout.write(dump({"n": g.n, "table": g.bitstring()}) + "\n")
    return 0


def cmd_census(args) -> int:
    f = read_tt(args.input)
    census = count_triangles(f)
    if args.format == "csv":
        sys.stdout.write(_csv(sorted(census.per_point.items()), CSV_COLUMNS["census"]))
        return 0
    ordered = {str(p): count_ordered_violations(f, p) for p in (P100, P110, P111)}
    sys.stdout.write(dump({
        "command": "census",
        "params": {"n": f.n},
        "results": {
            "unordered_count": census.unordered_count,
            "per_point": {str(k): v for k, v in sorted(census.per_point.items())},
            "ordered_pairs": ordered,
            "rejection_probability": {k: Fraction(v, f.size * f.size) for k, v in ordered.items()},
        },
    }) + "\n")
    return 0


def cmd_hardness(args) -> int:
    t0 = time.perf_counter()
    r = hardness_report(args.k, args.polys, args.seed)
    report = {
        "k": r.k,
        "min_poly_distance": r.min_poly_distance,
        "concat_distance": r.concat_distance,
        "halving_pairs_checked": r.halving_pairs_checked,
        "interpolation_checks": r.interpolation_checks,
        "interpolation_checks_passed": r.interpolation_checks_passed,
        "passed": r.passed,
        "seed": args.seed,
    }
    if args.timing:
        report["wall_time_s"] = round(time.perf_counter() - t0, 3)
    sys.stdout.write(dump(report) + "\n")
    return 0 if r.passed else 1


def cmd_make(args) -> int:
    n = args.n
    if args.linear is not None:
        f = LinearForm(n, args.linear).materialize()
    elif args.disjunction is not None:
        forms = [LinearForm(n, int(a, 0)) for a in args.disjunction.split(",") if a.strip()]
        f = make_disjunction(forms, n)
    elif args.support is not None:
        f = BoolFn.from_support(n, [int(x, 0) for x in args.support.split(",") if x.strip()])
    elif args.table is not None:
        f = BoolFn.from_bitstring(args.table)
    elif args.ones:
        f = BoolFn.ones(n)
    else:
        f = BoolFn.zeros(n)
    text = format_tt(f)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptlab", description="Property-testing laboratory for Boolean functions over F_2^n.",
                                     epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"ptlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = {"choices": ["json", "csv"], "default": "json"}

    p = sub.add_parser("test", help="run a tester on a truth table", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--tester", required=True,
                   help='tester expression, e.g. "intersect(free111:rounds=200000, free100, eps0=0.25)"')
    p.add_argument("--input", required=True, help=".tt truth-table file")
    p.add_argument("--epsilon", required=True, type=_fraction, help="distance parameter, e.g. 0.25 or 1/4")
    p.add_argument("--seed", required=True, type=_seed)
    p.add_argument("--trials", type=int, help="independent runs with seeds seed, seed+1, ...")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("verify", help="exhaustively check a claim (exit 0 iff PASS)")
    p.add_argument("claim", choices=list(CLAIMS) + ["all"])
    p.add_argument("--n", type=int, help="dimension (claim-specific default)")
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("distance", help="exact distance from a function to a property")
    p.add_argument("--property", required=True, help="lin, free100, free110, free111, nltf, all1")
    p.add_argument("--input", required=True)
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("enumerate", help="list every member of a property")
    p.add_argument("--property", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv", "tt"], default="json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("census", help="exact triangle census and pattern counts")
    p.add_argument("--input", required=True)
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("hardness", help="GF(2^k) / Hadamard concatenation distance report")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--polys", type=int, default=20)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_hardness)

    p = sub.add_parser("make", help="write a .tt file")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--linear", type=lambda s: int(s, 0), help="coefficient vector a of x -> a.x")
    g.add_argument("--disjunction", help="comma-separated coefficient vectors")
    g.add_argument("--support", help="comma-separated point indices")
    g.add_argument("--table", help="explicit bit string")
    g.add_argument("--ones", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_make)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"ptlab: tester parse error: {exc}", file=sys.stderr)
    except (ValueError, KeyError, OSError, ClaimCapError, EnumerationCapError) as exc:
        print(f"ptlab: error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
