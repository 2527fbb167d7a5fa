#!/usr/bin/env python3
"""Run the check catalog over a range of seeds and write a JSON report.

    python3 scripts/run_fixtures.py --seeds 0 1 2 --out fixture_report.json
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from gammalaws.fixtures import fixture_names, run_fixture


@dataclass
class Config:
    seeds: list[int] = field(default_factory=lambda: [0])
    only: list[str] = field(default_factory=list)
    out: str | None = None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--only", nargs="*", default=[])
    ap.add_argument("--out", default=None)
    cfg = Config(**vars(ap.parse_args(argv)))

    names = cfg.only or fixture_names()
    rows = []
    for seed in cfg.seeds:
        for name in names:
            t0 = time.perf_counter()
            res = run_fixture(name, seed)
            rows.append(
                {"name": name, "seed": seed, "passed": res.passed, "seconds": round(time.perf_counter() - t0, 3)}
            )
            print(f"seed {seed:4d}  {res.line()}")
    failed = [r for r in rows if not r["passed"]]
    print(f"{len(rows) - len(failed)}/{len(rows)} passed")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "results": rows}, fh, indent=2, sort_keys=True)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
