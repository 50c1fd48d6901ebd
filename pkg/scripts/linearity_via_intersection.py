"""Linearity testing two ways at n = 4: BLR versus the intersection of the
triangle-freeness and (1,0,0)-freeness testers.

Reports per-function rejection rates on oracle-certified far functions and
the average number of queries each tester spends.
"""
import argparse
import json
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from ptlab.combinators import linearity_via_intersection
from ptlab.gf2 import BoolFn
from ptlab.properties import distance_table
from ptlab.testers import BLRTester, Oracle, RandomSource


@dataclass
class LinearityConfig:
    n: int = 4
    eps: str = "1/4"
    functions: int = 20
    seeds: int = 500
    seed: int = 0


def run(cfg: LinearityConfig):
    eps = Fraction(cfg.eps)
    N = 1 << cfg.n
    d = distance_table("LIN", cfg.n)
    far = np.flatnonzero(d * eps.denominator >= eps.numerator * N)
    picks = np.random.default_rng(cfg.seed).choice(far, size=min(cfg.functions, far.size), replace=False)
    testers = {"blr": BLRTester(), "intersect": linearity_via_intersection()}
    for code in picks:
        f = BoolFn.from_code(cfg.n, int(code))
        row = {"table": f.bitstring(), "dist_lin": str(Fraction(int(d[code]), N))}
        for name, t in testers.items():
            verdicts = [t.run(Oracle(f), eps, RandomSource(s)) for s in range(cfg.seeds)]
            row[name] = {
                "reject_rate": 1 - sum(v.accept for v in verdicts) / cfg.seeds,
                "mean_queries": float(np.mean([v.queries_used for v in verdicts])),
                "budget": t.budget(eps),
            }
        yield row


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(LinearityConfig()).items():
        ap.add_argument(f"--{name}", type=type(default), default=default)
    cfg = LinearityConfig(**vars(ap.parse_args()))
    print(json.dumps({"config": asdict(cfg)}))
    for row in run(cfg):
        print(json.dumps(row))


if __name__ == "__main__":
    main()
