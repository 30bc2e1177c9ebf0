"""Query/update timings over a doubling grid of n; writes a CSV and a ratio line.

    python3 scripts/bench_scaling.py --lo 10 --hi 20 --out results/bench.csv
"""
import argparse
import csv
import os
from dataclasses import dataclass

from slabmatrix.cli import BENCH_COLUMNS, bench_rows


@dataclass
class ScalingConfig:
    lo: int = 10
    hi: int = 20
    ops: int = 20000
    updates: int = 2000
    reps: int = 5
    engines: tuple = ("amortized", "worstcase")
    backend: str = "baseline"
    seed: int = 0
    out: str = "results/bench_scaling.csv"


def main():
    p = argparse.ArgumentParser(description=__doc__)
    cfg = ScalingConfig()
    for name in ("lo", "hi", "ops", "updates", "reps", "seed"):
        p.add_argument(f"--{name}", type=int, default=getattr(cfg, name))
    p.add_argument("--backend", default=cfg.backend)
    p.add_argument("--engines", default=",".join(cfg.engines))
    p.add_argument("--out", default=cfg.out)
    a = p.parse_args()
    cfg = ScalingConfig(a.lo, a.hi, a.ops, a.updates, a.reps, tuple(a.engines.split(",")),
                        a.backend, a.seed, a.out)
    ns = [1 << e for e in range(cfg.lo, cfg.hi + 1)]
    rows = bench_rows(ns, cfg.engines, cfg.backend, ops=cfg.ops, updates=cfg.updates,
                      seed=cfg.seed, reps=cfg.reps)
    os.makedirs(os.path.dirname(cfg.out) or ".", exist_ok=True)
    with open(cfg.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS)
        w.writeheader()
        w.writerows(rows)
    for engine in cfg.engines:
        mine = [r for r in rows if r["engine"] == engine]
        if len(mine) >= 2:
            ratio = mine[-1]["mean_ns_query"] / mine[0]["mean_ns_query"]
            print(f"{engine}: query time n={mine[-1]['n']} / n={mine[0]['n']} = {ratio:.2f}"
                  f"  max work/update {max(r['max_work_units_update'] for r in mine)}")
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    main()
