#!/usr/bin/env python3
"""Compare the filtration kernel with brute-force enumeration on random laws.

Also reports how varied the sample is (non-zero kernels, filtrations that
keep refining after k = 1, non-field bases), so a run that only exercises
trivial laws is visible.

    python3 scripts/random_oracle.py --count 200 --seed 3
"""

from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from gammalaws.exactfield import GF
from gammalaws.fixtures import random_law
from gammalaws.laws import filtration, kernel, kernel_bruteforce


@dataclass
class Config:
    count: int = 100
    seed: int = 0
    max_dim: int = 4
    max_degree: int = 3
    primes: tuple = (2, 3)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--count", type=int, default=Config.count)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--max-dim", type=int, default=Config.max_dim)
    ap.add_argument("--max-degree", type=int, default=Config.max_degree)
    ap.add_argument("--primes", type=int, nargs="+", default=list(Config.primes))
    args = ap.parse_args(argv)
    cfg = Config(args.count, args.seed, args.max_dim, args.max_degree, tuple(args.primes))

    rng = random.Random(cfg.seed)
    stats = Counter()
    for i in range(cfg.count):
        p = cfg.primes[i % len(cfg.primes)]
        law = random_law(rng, GF(p), cfg.max_dim, cfg.max_degree)
        K = kernel(law)
        if K != kernel_bruteforce(law):
            stats["mismatch"] += 1
            print(f"MISMATCH at law {i}: {law!r}")
        chain = filtration(law)
        stats["nonzero_kernel"] += not K.is_zero()
        stats["refines_after_1"] += len(chain) > 2 and chain[-1] != chain[1]
        stats["nonfield_base"] += law.base.dim > 1
        stats[f"degree_{law.degree}"] += 1
    print(f"seed {cfg.seed}, {cfg.count} laws")
    for key in sorted(stats):
        print(f"  {key:18s} {stats[key]}")
    return 1 if stats["mismatch"] else 0


if __name__ == "__main__":
    raise SystemExit(main())
