"""Per-update work units of the worst-case engine, with and without handoffs.

Runs one trace at the default epoch (no handoff within the trace for large n)
and one with a short epoch so that several generations are swapped in.

    python3 scripts/deamort_work.py --n 4096 --updates 50000 --epoch 2048
"""
import argparse
import csv
import os
import random
import statistics
from dataclasses import dataclass

from slabmatrix.deamort import WorstCaseConfig, WorstCaseMatrix
from slabmatrix.gen import gen_disjoint_slabs


@dataclass
class WorkConfig:
    n: int = 4096
    k: int = 4096
    updates: int = 50000
    epoch: int | None = 2048
    seed: int = 0
    out: str = "results/deamort_work.csv"


def run(cfg: WorkConfig, epoch):
    K = gen_disjoint_slabs(cfg.n, cfg.k, cfg.seed)
    wc = WorstCaseMatrix(cfg.n, K, WorstCaseConfig(epoch=epoch, record_work=True,
                                                   hash_seed=cfg.seed))
    rng = random.Random(cfg.seed)
    for _ in range(cfg.updates):
        wc.update(rng.randint(1, cfg.n), rng.randint(1, cfg.n))
    return wc


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=WorkConfig.n)
    p.add_argument("--k", type=int, default=WorkConfig.k)
    p.add_argument("--updates", type=int, default=WorkConfig.updates)
    p.add_argument("--epoch", type=int, default=WorkConfig.epoch)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=WorkConfig.out)
    a = p.parse_args()
    cfg = WorkConfig(a.n, a.k, a.updates, a.epoch, a.seed, a.out)
    os.makedirs(os.path.dirname(cfg.out) or ".", exist_ok=True)
    with open(cfg.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["epoch_setting", "update", "work_units"])
        for label, epoch in (("default", None), ("short", cfg.epoch)):
            wc = run(cfg, epoch)
            w.writerows((label, t, u) for t, u in enumerate(wc.work))
            print(f"{label:>8}: L={wc.L} B={wc.budget} handoffs={wc.handoffs} "
                  f"violations={wc.violations} max={wc.max_work} "
                  f"median={statistics.median(wc.work)} "
                  f"mean={statistics.fmean(wc.work):.1f}")
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    main()
