"""Amortized dynamic matrix: a frozen point locator plus a pending-update map.

A cell answers from the pending map if it is there, otherwise from the
locator. Once the map holds ``threshold`` cells, the slab set is rebuilt
from the cached canonical slabs and the pending bits.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .core import (ParseError, Slab, SlabDecomposition, _content_lines, check_cell,
                   check_decomposition, drain)
from .decompose import BATCH, ConsistencyError, DecomposeScratch, decompose_steps
from .oracle import f_d_constant
from .pointloc import BACKENDS, build_steps

NEVER = math.inf


@dataclass(frozen=True)
class TwinWidthConstants:
    d: int

    @property
    def f_d(self) -> Fraction:
        return f_d_constant(self.d)

    def corner_bound(self, n: int) -> Fraction:
        return self.f_d * (n + 2)

    def canonical_bound(self, n: int) -> Fraction:
        return 4 * self.f_d * (n + 2) + 4 * n


@dataclass
class MatrixConfig:
    threshold: float | None = None   # None: max(16, 8n); NEVER disables rebuilds
    hash_seed: int | None = None     # None: random
    backend: str = "baseline"

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.threshold is not None and self.threshold < 1:
            raise ValueError("threshold must be >= 1")

    def resolve_threshold(self, n: int) -> float:
        return max(16, 8 * n) if self.threshold is None else self.threshold

    @classmethod
    def theory_preset(cls, n: int, d: int, **kw) -> "MatrixConfig":
        return cls(threshold=math.ceil(8 * f_d_constant(d) * (n + 2)), **kw)


class PendingUpdateMap:
    """Cell -> bit of flips not yet folded into the locator.

    Keys are packed cells xor a per-instance salt, so the bucket layout
    depends on the seed.
    """

    def __init__(self, n: int, seed: int | None = None):
        self.n = n
        self.seed = random.getrandbits(62) if seed is None else seed
        self._salt = random.Random(self.seed).getrandbits(62)
        self._shift = max(1, (n + 1).bit_length())
        self.data: dict = {}

    def key(self, i: int, j: int) -> int:
        return ((i << self._shift) | j) ^ self._salt

    def unkey(self, k: int):
        k ^= self._salt
        return k >> self._shift, k & ((1 << self._shift) - 1)

    def get(self, i: int, j: int):
        return self.data.get(self.key(i, j))

    def set(self, i: int, j: int, bit: int) -> None:
        self.data[self.key(i, j)] = bit

    def __len__(self):
        return len(self.data)

    def __contains__(self, p):
        return self.key(p[0], p[1]) in self.data

    def items(self):
        for k, v in self.data.items():
            yield self.unkey(k), v

    def clear(self):
        self.data.clear()


def split_around_zeros(slab: Slab, zeros, out: list):
    """Cut the cells ``zeros`` (sorted by row, col) out of ``slab``.

    Rows above and below the affected rows stay whole; each affected row is
    cut into the gaps between its zero columns. Yields one unit per zero
    cell and one per piece.
    """
    a, b, c, d = slab
    top = a
    k = 0
    m = len(zeros)
    while k < m:
        i = zeros[k][0]
        if i > top:
            out.append(Slab(top, i - 1, c, d))
            yield 1
        start = c
        while k < m and zeros[k][0] == i:
            col = zeros[k][1]
            if col > start:
                out.append(Slab(i, i, start, col - 1))
                yield 2
            else:
                yield 1
            start = col + 1
            k += 1
        if start <= d:
            out.append(Slab(i, i, start, d))
            yield 1
        top = i + 1
    if top <= b:
        out.append(Slab(top, b, c, d))
        yield 1


def _radix_by_cell(n: int, cells: list, quantum: int = 1):
    """Stable two-pass bucket sort of (i, j, bit) by (i, j); O(n + q) units."""
    buckets: list = [None] * (n + 2)
    acc = 0
    for pass_key in (1, 0):
        for item in cells:
            k = item[pass_key]
            lst = buckets[k]
            if lst is None:
                buckets[k] = [item]
            else:
                lst.append(item)
            acc += 1
            if acc >= quantum:
                yield acc
                acc = 0
        cells = []
        for k in range(1, n + 1):
            lst = buckets[k]
            if lst is not None:
                cells.extend(lst)
                buckets[k] = None
            acc += 1
            if acc >= quantum:
                yield acc
                acc = 0
    if acc:
        yield acc
    return cells


def pieces_steps(n: int, slabs: list, locator, updates: list, stats: dict | None = None,
                 quantum: int = 1):
    """Slab set K' for the matrix ``slabs`` with ``updates`` [(i, j, bit)] applied.

    0-updates cut their cell out of the containing slab (and are dropped if
    no slab holds the cell); 1-updates outside every slab become 1x1 slabs.
    ``locator`` must be built on ``slabs``. Generator of work units.
    """
    ordered = yield from _radix_by_cell(n, updates, quantum)
    pieces: list = []
    zeros: dict = {}
    acc = 0
    for i, j, bit in ordered:
        sid = locator.locate_index(i, j)
        acc += 1
        if acc >= quantum:
            yield acc
            acc = 0
        if bit:
            if sid < 0:
                pieces.append(Slab(i, i, j, j))
        elif sid >= 0:
            lst = zeros.get(sid)
            if lst is None:
                zeros[sid] = [(i, j)]
            else:
                lst.append((i, j))
    for sid, s in enumerate(slabs):
        hit = zeros.get(sid)
        if hit is None:
            pieces.append(s)
            acc += 1
        else:
            for u in split_around_zeros(s, hit, pieces):
                acc += u
                if acc >= quantum:
                    yield acc
                    acc = 0
            continue
        if acc >= quantum:
            yield acc
            acc = 0
    if acc:
        yield acc
    if stats is not None:
        stats.update(prev_slabs=len(slabs), pending=len(updates), pieces=len(pieces))
    return pieces


def rebuild_steps(n: int, slabs: list, locator, updates: list, scratch: DecomposeScratch,
                  backend: str = "baseline", stats: dict | None = None, quantum: int = 1):
    """Fold ``updates`` into ``slabs``; returns (canonical slabs, new locator)."""
    pieces = yield from pieces_steps(n, slabs, locator, updates, stats, quantum)
    canon = yield from decompose_steps(n, pieces, scratch, quantum)
    loc = yield from build_steps(n, canon.slabs, backend, checked=False, quantum=quantum)
    if stats is not None:
        stats["canonical"] = len(canon)
    return canon.slabs, loc


class AmortizedMatrix:
    def __init__(self, n: int, K=(), config: MatrixConfig | None = None, validate: bool = True):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.config = config or MatrixConfig()
        self.threshold = self.config.resolve_threshold(n)
        self.scratch = DecomposeScratch(n)
        self.pending = PendingUpdateMap(n, self.config.hash_seed)
        slabs = K.slabs if isinstance(K, SlabDecomposition) else [Slab(*s) for s in K]
        if validate:
            check_decomposition(SlabDecomposition(n, slabs))
        canon = drain(decompose_steps(n, slabs, self.scratch, BATCH))
        self.slabs = canon.slabs
        self.locator = drain(build_steps(n, self.slabs, self.config.backend, checked=False,
                                         quantum=BATCH))
        self.rebuilds = 0
        self.last_rebuild: dict = {}

    def query(self, i: int, j: int) -> int:
        check_cell((i, j), self.n)
        v = self.pending.data.get(self.pending.key(i, j))
        if v is not None:
            return v
        return 1 if self.locator.locate_index(i, j) >= 0 else 0

    def update(self, i: int, j: int) -> int:
        """Flip (i, j); returns the work units spent."""
        check_cell((i, j), self.n)
        data = self.pending.data
        k = self.pending.key(i, j)
        v = data.get(k)
        units = 1
        if v is None:
            v = 1 if self.locator.locate_index(i, j) >= 0 else 0
            units += 1
        data[k] = v ^ 1
        if len(data) >= self.threshold:
            units += self.rebuild()
        return units

    def rebuild_job(self, stats=None, quantum: int = BATCH):
        updates = [(i, j, bit) for (i, j), bit in self.pending.items()]
        return rebuild_steps(self.n, self.slabs, self.locator, updates, self.scratch,
                             self.config.backend, stats, quantum)

    def rebuild(self) -> int:
        stats: dict = {}
        job = self.rebuild_job(stats)
        units = 0
        try:
            while True:
                units += next(job)
        except StopIteration as stop:
            self.slabs, self.locator = stop.value
        self.pending.clear()
        self.rebuilds += 1
        stats["units"] = units
        self.last_rebuild = stats
        return units

    def canonical(self) -> SlabDecomposition:
        return SlabDecomposition(self.n, list(self.slabs))

    def to_rows(self) -> list:
        """Dense reconstruction of the represented matrix (tests only)."""
        grid = [[0] * self.n for _ in range(self.n)]
        for a, b, c, d in self.slabs:
            for i in range(a - 1, b):
                grid[i][c - 1:d] = [1] * (d - c + 1)
        for (i, j), bit in self.pending.items():
            grid[i - 1][j - 1] = bit
        return grid


# trace files: one op per line, "U i j" flips, "Q i j" queries ------------------

class TraceOp(NamedTuple):
    kind: str   # "Q" or "U"
    i: int
    j: int


def parse_trace_text(text: str) -> list:
    out = []
    for lineno, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("Q", "U"):
            raise ParseError("trace line must be 'Q i j' or 'U i j'", lineno)
        try:
            out.append(TraceOp(parts[0], int(parts[1]), int(parts[2])))
        except ValueError:
            raise ParseError("non-integer coordinate", lineno) from None
    return out


def format_trace_text(ops) -> str:
    return "".join(f"{op[0]} {op[1]} {op[2]}\n" for op in ops)


def run_trace(engine, ops) -> list:
    """Apply ops in order; returns the bits answered by the queries."""
    out = []
    query, update = engine.query, engine.update
    for kind, i, j in ops:
        if kind == "Q":
            out.append(query(i, j))
        else:
            update(i, j)
    return out


# functional aliases ------------------------------------------------------------

def am_init(n: int, K=(), config: MatrixConfig | None = None) -> AmortizedMatrix:
    return AmortizedMatrix(n, K, config)


def am_query(m: AmortizedMatrix, p) -> int:
    return m.query(p[0], p[1])


def am_update(m: AmortizedMatrix, p) -> None:
    m.update(p[0], p[1])


def am_rebuild(m: AmortizedMatrix) -> None:
    m.rebuild()


__all__ = ["AmortizedMatrix", "MatrixConfig", "PendingUpdateMap", "TwinWidthConstants",
           "NEVER", "ConsistencyError", "pieces_steps", "rebuild_steps", "split_around_zeros",
           "am_init", "am_query", "am_update", "am_rebuild",
           "TraceOp", "parse_trace_text", "format_trace_text", "run_trace"]
