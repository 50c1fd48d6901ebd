"""GF(2^k) hardness facts for k = 2..4: minimum distance between low- and
high-degree polynomials, the halving under Hadamard concatenation, and
interpolation indistinguishability.
"""
import argparse
import json
from dataclasses import asdict, dataclass

from ptlab.hardness import hardness_report


@dataclass
class HardnessConfig:
    k_min: int = 2
    k_max: int = 4
    polys: int = 20
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(HardnessConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int, default=default)
    cfg = HardnessConfig(**vars(ap.parse_args()))
    for k in range(cfg.k_min, cfg.k_max + 1):
        r = hardness_report(k, cfg.polys, cfg.seed)
        print(json.dumps({
            "k": k,
            "min_poly_distance": str(r.min_poly_distance),
            "concat_distance": str(r.concat_distance),
            "halving_pairs_checked": r.halving_pairs_checked,
            "interpolation_checks_passed": f"{r.interpolation_checks_passed}/{r.interpolation_checks}",
            "passed": r.passed,
        }))


if __name__ == "__main__":
    main()
