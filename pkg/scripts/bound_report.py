"""Canonical slab counts of witnessed bounded-width matrices.

For each (n, d) it reports the largest |R| next to d(2n-2)+1 and the
corner count next to f_d (n+2), then fits |R| against n per d.

    python3 scripts/bound_report.py --ns 64,128,256,512,1024 --ds 1,2 --seeds 20
"""
import argparse
import csv
import os
from dataclasses import dataclass

import numpy as np

from slabmatrix.gen import gen_bounded_width
from slabmatrix.oracle import (count_corners, f_d_constant, naive_canonical,
                               verify_contraction_width)


@dataclass
class BoundConfig:
    ns: tuple = (64, 128, 256, 512, 1024)
    ds: tuple = (1, 2)
    seeds: int = 20
    flips_per_step: float = 2.0
    out: str = "results/bound_report.csv"


def run(cfg: BoundConfig) -> list:
    rows = []
    for d in cfg.ds:
        for n in cfg.ns:
            for s in range(cfg.seeds):
                m, seq = gen_bounded_width(n, d, seed=s, flips_per_step=cfg.flips_per_step)
                rows.append({"n": n, "d": d, "seed": s,
                             "width": verify_contraction_width(m, seq),
                             "R": len(naive_canonical(m)), "corners": count_corners(m),
                             "d_2n_2_plus_1": d * (2 * n - 2) + 1,
                             "f_d_n_plus_2": float(f_d_constant(d) * (n + 2))})
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--ns", default="64,128,256,512,1024")
    p.add_argument("--ds", default="1,2")
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--flips", type=float, default=2.0)
    p.add_argument("--out", default=BoundConfig.out)
    a = p.parse_args()
    cfg = BoundConfig(tuple(map(int, a.ns.split(","))), tuple(map(int, a.ds.split(","))),
                      a.seeds, a.flips, a.out)
    rows = run(cfg)
    os.makedirs(os.path.dirname(cfg.out) or ".", exist_ok=True)
    with open(cfg.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    print(f"{'d':>2} {'n':>6} {'max w':>6} {'max |R|':>8} {'d(2n-2)+1':>10} {'max corners':>12}")
    for d in cfg.ds:
        xs, ys = [], []
        for n in cfg.ns:
            sel = [r for r in rows if r["n"] == n and r["d"] == d]
            R = max(r["R"] for r in sel)
            xs.append(n)
            ys.append(R)
            print(f"{d:>2} {n:>6} {max(r['width'] for r in sel):>6} {R:>8} "
                  f"{d * (2 * n - 2) + 1:>10} {max(r['corners'] for r in sel):>12}")
        slope, icpt = np.polyfit(xs, ys, 1)
        print(f"   d={d}: max|R| ~ {slope:.3f} n + {icpt:.1f}")
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    main()
