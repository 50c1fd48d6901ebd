"""Exact (1,0,0)-freeness soundness sweep.

For every function at dimension n (n <= 4) and every eps on the 2^-n grid,
compare the exact single-round rejection probability with eps^2/128.
Prints one JSON line per eps with the tightest ratio observed.
"""
import argparse
import json
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from ptlab.gf2 import BoolFn
from ptlab.properties import distance_table, pattern_count_table


@dataclass
class SweepConfig:
    n: int = 4
    sample: int = 0      # 0 = all functions
    seed: int = 0


def sweep(cfg: SweepConfig):
    counts = pattern_count_table(cfg.n)[:, 1]
    dists = distance_table("FREE100", cfg.n)
    codes = np.arange(counts.size)
    if cfg.sample:
        codes = np.random.default_rng(cfg.seed).integers(0, counts.size, size=cfg.sample)
    N, pairs = 1 << cfg.n, 1 << (2 * cfg.n)
    for j in range(1, N // 2 + 1):
        eps = Fraction(j, N)
        far = codes[dists[codes] >= j]
        if not far.size:
            continue
        worst = far[np.argmin(counts[far])]
        rejection = Fraction(int(counts[worst]), pairs)
        yield {
            "eps": str(eps),
            "far_functions": int(far.size),
            "min_rejection": str(rejection),
            "bound": str(eps * eps / 128),
            "ratio": float(rejection / (eps * eps / 128)),
            "holds": rejection >= eps * eps / 128,
            "tightest": BoolFn.from_code(cfg.n, int(worst)).bitstring(),
        }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--sample", type=int, default=0)
    ap.add_argument("--seed", type=int, default=0)
    cfg = SweepConfig(**vars(ap.parse_args()))
    print(json.dumps({"config": asdict(cfg)}))
    for row in sweep(cfg):
        print(json.dumps(row))


if __name__ == "__main__":
    main()
