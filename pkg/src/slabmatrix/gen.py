"""Instance generators: disjoint slab sets, bounded-width matrices, traces."""
from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
import numpy as np

from .core import Slab, SlabDecomposition
from .dynmatrix import TraceOp
from .oracle import ContractionSequence, DenseMatrix


@dataclass
class GenConfig:
    n: int
    seed: int = 0
    mode: str = "slabs"          # "slabs" or "width"
    k: int = 16                  # slab count target
    d: int = 1                   # width target
    flips_per_step: float = 1.0  # flip attempts per split step
    fill: float = 0.6            # chance a guillotine cell becomes a slab

    def __post_init__(self):
        if self.mode not in ("slabs", "width"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def run(self):
        if self.mode == "slabs":
            return gen_disjoint_slabs(self.n, self.k, self.seed, self.fill)
        return gen_bounded_width(self.n, self.d, self.seed, self.flips_per_step)


def gen_disjoint_slabs(n: int, k: int, seed: int = 0, fill: float = 0.6) -> SlabDecomposition:
    """At most k disjoint slabs from a random guillotine partition of [1,n]^2."""
    if k < 0:
        raise ValueError("k must be >= 0")
    rng = random.Random(seed)
    if k == 0:
        return SlabDecomposition(n, [])
    done: list = []
    open_: list = [(1, n, 1, n)]
    while open_ and len(done) + len(open_) < k:
        idx = rng.randrange(len(open_))
        a, b, c, d = open_[idx]
        open_[idx] = open_[-1]
        open_.pop()
        rows_ok, cols_ok = b > a, d > c
        if not rows_ok and not cols_ok:
            done.append((a, b, c, d))
            continue
        if rows_ok and (not cols_ok or rng.random() < 0.5):
            m = rng.randint(a, b - 1)
            open_ += [(a, m, c, d), (m + 1, b, c, d)]
        else:
            m = rng.randint(c, d - 1)
            open_ += [(a, b, c, m), (a, b, m + 1, d)]
    cells = done + open_
    cells.sort()
    return SlabDecomposition(n, [Slab(*r) for r in cells if rng.random() < fill])


# -- bounded width --------------------------------------------------------------

class _Axis:
    """Block tree of one axis: alive blocks sorted by their first index."""

    def __init__(self, n: int):
        self.lo = [1]
        self.hi = [n]
        self.parent = [-1]
        self.birth = [0]
        self.alive = [0]      # node ids sorted by lo
        self.los = [1]
        self.intervals: list = [[]]

    def split(self, cut: int, state: int) -> int:
        """Split the block holding cut and cut + 1; returns its 1-based position."""
        pos = bisect_right(self.los, cut) - 1
        node = self.alive[pos]
        kids = []
        for lo, hi in ((self.lo[node], cut), (cut + 1, self.hi[node])):
            self.lo.append(lo)
            self.hi.append(hi)
            self.parent.append(node)
            self.birth.append(state)
            self.intervals.append([])
            kids.append(len(self.lo) - 1)
        self.alive[pos:pos + 1] = kids
        self.los[pos:pos + 1] = [self.lo[kids[0]], cut + 1]
        return pos + 1


def _max_cover(existing: list, start: int, stop: int) -> int:
    pts = [start] + [s for s, _ in existing if start < s < stop]
    return max(sum(1 for s, e in existing if s <= p < e) for p in pts)


def _fits(axis: _Axis, additions: dict, d: int) -> bool:
    for node, new in additions.items():
        pool = axis.intervals[node] + new
        for s, e in new:
            if _max_cover(pool, s, e) > d:
                return False
    return True


class _WidthBuilder:
    def __init__(self, n: int, d: int):
        self.n = n
        self.d = d
        self.rows = _Axis(n)
        self.cols = _Axis(n)
        self.marked: set = set()
        self.flips: list = []
        self.splits: list = []
        self.state = 0

    def split(self, axis: str, cut: int):
        self.state += 1
        ax = self.rows if axis == "row" else self.cols
        self.splits.append((axis, ax.split(cut, self.state)))

    def try_flip(self, r: int, c: int, force: bool = False) -> bool:
        """Flip zone (r, c) of the current state unless a block would exceed d.

        Every coarser zone strictly containing it is marked non-constant;
        marks are upward closed along the ancestor chain, so the walk stops
        at the first zone already marked.
        """
        rows, cols = self.rows, self.cols
        zone = (rows.lo[r], rows.hi[r], cols.lo[c], cols.hi[c])
        cur = max(rows.birth[r], cols.birth[c])
        new = []
        while cur > 0:
            if rows.birth[r] == cur:
                r = rows.parent[r]
            if cols.birth[c] == cur:
                c = cols.parent[c]
            if (r, c) in self.marked:
                break
            start = max(rows.birth[r], cols.birth[c])
            new.append((r, c, start, cur))
            cur = start
        radd: dict = {}
        cadd: dict = {}
        for zr, zc, s, e in new:
            radd.setdefault(zr, []).append((s, e))
            cadd.setdefault(zc, []).append((s, e))
        if not force and not (_fits(rows, radd, self.d) and _fits(cols, cadd, self.d)):
            return False
        for zr, zc, s, e in new:
            self.marked.add((zr, zc))
            rows.intervals[zr].append((s, e))
            cols.intervals[zc].append((s, e))
        self.flips.append(zone)
        return True

    def marked_width(self) -> int:
        w = 0
        for ax in (self.rows, self.cols):
            for iv in ax.intervals:
                if iv:
                    w = max(w, max(_max_cover(iv, s, e) for s, e in iv))
        return w


def _matrix_from_flips(n: int, flips: list) -> DenseMatrix:
    diff = np.zeros((n + 1, n + 1), dtype=np.uint8)
    for a, b, c, d in flips:
        diff[a - 1, c - 1] ^= 1
        diff[b, c - 1] ^= 1
        diff[a - 1, d] ^= 1
        diff[b, d] ^= 1
    acc = np.bitwise_xor.accumulate(np.bitwise_xor.accumulate(diff, axis=0), axis=1)
    return DenseMatrix(n, acc[:n, :n])


def _cuts_from_merges(n: int, merges) -> list:
    """Split order (axis, cut) that undoes a merge sequence in reverse."""
    rows = [[i] for i in range(1, n + 1)]
    cols = [[j] for j in range(1, n + 1)]
    out = []
    for axis, k in merges:
        blocks = rows if axis == "row" else cols
        out.append((axis, blocks[k - 1][-1]))
        blocks[k - 1] = blocks[k - 1] + blocks.pop(k)
    return out[::-1]


def gen_bounded_width(n: int, d: int, seed: int = 0, flips_per_step: float = 1.0,
                      schedule=None, target: DenseMatrix | None = None):
    """Random matrix with a contraction sequence of width <= d.

    The matrix grows by reverse contraction: blocks are split one cut at a
    time and, at every state, a few random zones are flipped unless that
    would give some block more than d non-constant zones at some state.
    ``schedule`` (a ContractionSequence or list of merges) fixes the split
    order; with ``target`` the flips are derived so that the output equals
    target, and ValueError is raised if that needs width above d.
    """
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    rng = random.Random(seed)
    if schedule is not None:
        merges = schedule.steps if isinstance(schedule, ContractionSequence) else list(schedule)
        ContractionSequence(n, merges).check()
        cuts = _cuts_from_merges(n, merges)
    else:
        cuts = [("row", m) for m in range(1, n)] + [("col", m) for m in range(1, n)]
        rng.shuffle(cuts)
    b = _WidthBuilder(n, d)
    if target is not None:
        _flips_for_target(b, target)
        for axis, cut in cuts:
            b.split(axis, cut)
            _flips_for_target(b, target)
        if b.marked_width() > d:
            raise ValueError(f"target needs width {b.marked_width()} > {d} under this schedule")
    else:
        _random_flips(b, rng, flips_per_step)
        for axis, cut in cuts:
            b.split(axis, cut)
            _random_flips(b, rng, flips_per_step)
    seq = ContractionSequence(n, b.splits[::-1])
    return _matrix_from_flips(n, b.flips), seq


def _random_flips(b: _WidthBuilder, rng: random.Random, rate: float):
    tries = int(rate)
    if rng.random() < rate - tries:
        tries += 1
    for _ in range(tries):
        b.try_flip(rng.choice(b.rows.alive), rng.choice(b.cols.alive))


def _flips_for_target(b: _WidthBuilder, target: DenseMatrix):
    # every current zone is constant in the matrix built so far; flip the
    # ones that are constant in target but hold the wrong value
    current = _matrix_from_flips(b.n, b.flips).bits
    t = target.bits
    rows, cols = b.rows, b.cols
    for r in list(rows.alive):
        for c in list(cols.alive):
            ra, rb = rows.lo[r] - 1, rows.hi[r]
            ca, cb = cols.lo[c] - 1, cols.hi[c]
            zone = t[ra:rb, ca:cb]
            v = zone.flat[0]
            if (zone == v).all() and current[ra, ca] != v:
                b.try_flip(r, c, force=True)


# -- traces ---------------------------------------------------------------------

def gen_trace(n: int, ops: int, seed: int = 0, query_ratio: float = 0.5) -> list:
    if ops < 0 or not 0.0 <= query_ratio <= 1.0:
        raise ValueError("need ops >= 0 and query_ratio in [0, 1]")
    rng = random.Random(seed)
    out = []
    for _ in range(ops):
        kind = "Q" if rng.random() < query_ratio else "U"
        out.append(TraceOp(kind, rng.randint(1, n), rng.randint(1, n)))
    return out
