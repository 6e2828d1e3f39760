"""Compare the six-minor positivity test with the full twelve-minor test on random samples."""
from __future__ import annotations

import argparse
import json
import random
from collections import Counter
from dataclasses import asdict, dataclass

from clusterfold.coordring import (
    CRITERION_SIX,
    NONTRIVIAL_MINORS,
    criterion_six,
    is_totally_positive,
    minor,
    random_positive_parametrization,
    random_unitriangular,
)


@dataclass
class SamplingConfig:
    seed: int = 20100
    random_samples: int = 1000
    positive_samples: int = 200
    bound: int = 100
    positive_entries_fraction: float = 0.5


def run(cfg: SamplingConfig) -> dict:
    rng = random.Random(cfg.seed)
    stats = Counter()
    failing_minor = Counter()
    for _ in range(cfg.random_samples):
        # half the samples use positive entries so that both outcomes actually occur
        m = random_unitriangular(rng, cfg.bound, positive=rng.random() < cfg.positive_entries_fraction)
        six, full = criterion_six(m), is_totally_positive(m)
        stats["random_tp"] += full
        stats["discrepancies"] += six != full
        if not full and six is False:
            first = next(s for s in CRITERION_SIX if minor(m, s).constant_value() <= 0)
            failing_minor[str(first)] += 1
    for k in range(cfg.positive_samples):
        m = random_positive_parametrization(rng, ("213213", "121321")[k % 2], cfg.bound)
        stats["parametrized_tp"] += is_totally_positive(m)
        stats["discrepancies"] += criterion_six(m) != is_totally_positive(m)
    return {
        "config": asdict(cfg),
        "stats": dict(stats),
        "first_failing_criterion_minor": dict(sorted(failing_minor.items())),
        "minors_checked": [str(s) for s in NONTRIVIAL_MINORS],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=SamplingConfig.seed)
    ap.add_argument("--random-samples", type=int, default=SamplingConfig.random_samples)
    ap.add_argument("--positive-samples", type=int, default=SamplingConfig.positive_samples)
    args = ap.parse_args()
    out = run(SamplingConfig(args.seed, args.random_samples, args.positive_samples))
    print(json.dumps(out, sort_keys=True, indent=2))
    raise SystemExit(1 if out["stats"].get("discrepancies") else 0)


if __name__ == "__main__":
    main()
