"""Acceptance rates of the tolerant set-difference tester for NLTF = FREE111 \\ LIN
on three groups of n = 4 functions: members far from LIN, functions close to
LIN, and functions far from NLTF.
"""
import argparse
import json
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from ptlab.combinators import difference_tester
from ptlab.gf2 import BoolFn
from ptlab.properties import NLTF, distance_table, members
from ptlab.testers import Oracle, RandomSource, ToleranceParams, TolerantLinTester, triangle_free_tester


@dataclass
class DifferenceConfig:
    per_group: int = 4
    seeds: int = 1000
    eps1: str = "1/16"
    eps2: str = "1/4"
    eps0: str = "1/4"
    seed: int = 8


def run(cfg: DifferenceConfig):
    n = 4
    tol = ToleranceParams(Fraction(cfg.eps1), Fraction(cfg.eps2))
    eps0 = Fraction(cfg.eps0)
    t = difference_tester(triangle_free_tester(), TolerantLinTester(tol), eps0, tol)
    rng = np.random.default_rng(cfg.seed)
    d_lin, d_nltf = distance_table("LIN", n), distance_table("NLTF", n)
    nltf = np.array([g.code for g in members(NLTF, n)])
    far_count = int(eps0 * 16)
    groups = {
        "members": nltf[d_lin[nltf] >= far_count],
        "close": np.flatnonzero(d_lin <= int(tol.eps1 * 16)),
        "far": np.flatnonzero(d_nltf >= far_count),
    }
    for name, pool in groups.items():
        for code in rng.choice(pool, size=min(cfg.per_group, pool.size), replace=False):
            f = BoolFn.from_code(n, int(code))
            acc = sum(t.run(Oracle(f), eps0, RandomSource(s)).accept for s in range(cfg.seeds))
            yield {"group": name, "table": f.bitstring(), "accept_rate": acc / cfg.seeds}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(DifferenceConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", dest=name, type=type(default), default=default)
    cfg = DifferenceConfig(**vars(ap.parse_args()))
    print(json.dumps({"config": asdict(cfg)}))
    for row in run(cfg):
        print(json.dumps(row))


if __name__ == "__main__":
    main()
