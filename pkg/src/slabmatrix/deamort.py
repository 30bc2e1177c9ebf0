"""Worst-case dynamic matrix via epoch-scheduled background rebuilds.

Updates are grouped into epochs of ``L`` updates. At the start of every even
epoch the active generation is frozen at its current log position and a
successor is built from that snapshot, ``B`` work units per update. Once
built, the successor replays the updates logged since the snapshot, two per
incoming update, and takes over at the start of the next even epoch.

A generation is (canonical slabs, locator, pending map, update log). The
locator is immutable, so the frozen copy is just the log prefix over the
shared locator; the successor rebuilds the frozen pending bits from it.
"""
from __future__ import annotations

import math
import zlib
from array import array
from dataclasses import dataclass

from .core import Slab, SlabDecomposition, check_cell, check_decomposition, drain
from .decompose import BATCH, DecomposeScratch, decompose_steps
from .dynmatrix import PendingUpdateMap, pieces_steps
from .pointloc import BACKENDS, build_steps

PHASES = ("extract", "decompose-sweeps", "locator-build", "replay", "done")


@dataclass
class WorstCaseConfig:
    epoch: int | None = None      # L; None: max(16, 8n), the amortized default threshold
    budget: int | None = None     # B; None: derived from the work estimate per build
    c3: int = 24                  # units per (column + slab) in the work estimate
    safety: int = 2
    hash_seed: int | None = None
    backend: str = "baseline"
    audit: bool = False           # checksum snapshots (costs O(|log|) per freeze)
    record_work: bool = False     # keep per-update work units

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.epoch is not None and self.epoch < 1:
            raise ValueError("epoch length must be >= 1")
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be >= 1")

    def resolve_epoch(self, n: int) -> int:
        return max(16, 8 * n) if self.epoch is None else self.epoch


class Generation:
    __slots__ = ("slabs", "locator", "pending", "log")

    def __init__(self, slabs, locator, pending: PendingUpdateMap):
        self.slabs = slabs
        self.locator = locator
        self.pending = pending
        self.log = array("q")

    def bit(self, i: int, j: int) -> int:
        v = self.pending.data.get(self.pending.key(i, j))
        if v is not None:
            return v
        return 1 if self.locator.locate_index(i, j) >= 0 else 0

    def flip_key(self, k: int, i: int, j: int) -> int:
        data = self.pending.data
        v = data.get(k)
        if v is None:
            v = 1 if self.locator.locate_index(i, j) >= 0 else 0
            data[k] = v ^ 1
            return 2
        data[k] = v ^ 1
        return 1


def snapshot_checksum(gen: Generation, upto: int) -> int:
    return zlib.crc32(gen.log[:upto].tobytes(), id(gen.locator) & 0xFFFFFFFF)


class RebuildStateMachine:
    """Resumable build of a successor generation from a frozen snapshot."""

    def __init__(self, n: int, source: Generation, snap_len: int, scratch: DecomposeScratch,
                 backend: str, seed: int, audit: bool = False):
        self.n = n
        self.source = source
        self.snap_len = snap_len
        self.scratch = scratch
        self.backend = backend
        self.seed = seed
        self.phase = "extract"
        self.cursor = snap_len
        self.target: Generation | None = None
        self.units = 0
        self.checksum = snapshot_checksum(source, snap_len) if audit else None
        self.checksum_ok: bool | None = None
        self._job = self._build()

    def _build(self):
        src = self.source
        log, loc = src.log, src.locator
        unkey = src.pending.unkey
        frozen: dict = {}
        for t in range(self.snap_len):
            k = log[t]
            v = frozen.get(k)
            if v is None:
                i, j = unkey(k)
                v = 1 if loc.locate_index(i, j) >= 0 else 0
                yield 2
            else:
                yield 1
            frozen[k] = v ^ 1
        if self.checksum is not None:
            self.checksum_ok = snapshot_checksum(src, self.snap_len) == self.checksum
        updates = []
        for k, bit in frozen.items():
            i, j = unkey(k)
            updates.append((i, j, bit))
            yield 1
        pieces = yield from pieces_steps(self.n, src.slabs, loc, updates)
        self.phase = "decompose-sweeps"
        canon = yield from decompose_steps(self.n, pieces, self.scratch)
        self.phase = "locator-build"
        new_loc = yield from build_steps(self.n, canon.slabs, self.backend, checked=False)
        self.target = Generation(canon.slabs, new_loc, PendingUpdateMap(self.n, self.seed))
        self.phase = "replay"

    @property
    def built(self) -> bool:
        return self.target is not None

    def step(self, budget: int) -> int:
        """Run build work until ``budget`` units are spent or the build is done."""
        spent = 0
        job = self._job
        try:
            while spent < budget:
                spent += next(job)
        except StopIteration:
            pass
        self.units += spent
        return spent

    def lag(self) -> int:
        return len(self.source.log) - self.cursor

    def replay(self, entries: int) -> int:
        src_log = self.source.log
        unkey = self.source.pending.unkey
        tgt = self.target
        units = 0
        end = min(len(src_log), self.cursor + entries)
        while self.cursor < end:
            k = src_log[self.cursor]
            i, j = unkey(k)
            units += tgt.flip_key(k, i, j)
            tgt.log.append(k)
            self.cursor += 1
        if self.cursor == len(src_log):
            self.phase = "done"
        self.units += units
        return units

    def finish(self) -> int:
        units = 0
        while not self.built:
            units += self.step(1 << 30)
        return units + self.replay(len(self.source.log))


class WorstCaseMatrix:
    def __init__(self, n: int, K=(), config: WorstCaseConfig | None = None, validate: bool = True):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.config = config = config or WorstCaseConfig()
        self.L = config.resolve_epoch(n)
        self.scratch = DecomposeScratch(n)
        pending = PendingUpdateMap(n, config.hash_seed)
        self.seed = pending.seed
        slabs = K.slabs if isinstance(K, SlabDecomposition) else [Slab(*s) for s in K]
        if validate:
            check_decomposition(SlabDecomposition(n, slabs))
        canon = drain(decompose_steps(n, slabs, self.scratch, BATCH))
        loc = drain(build_steps(n, canon.slabs, config.backend, checked=False, quantum=BATCH))
        self.active = Generation(canon.slabs, loc, pending)
        self.successor: RebuildStateMachine | None = None
        self.budget = 0
        self.updates = 0
        self.handoffs = 0
        self.violations = 0
        self.snapshot_mismatches = 0
        self.handoff_lags: list = []
        self.max_work = 0
        self.work: list | None = [] if config.record_work else None

    # -- budget -----------------------------------------------------------------
    def work_estimate(self, slabs: int, snap_len: int) -> int:
        k = slabs + 2 * snap_len
        return self.config.c3 * (self.n + k) + k * math.ceil(math.log2(k + 2))

    def _start_successor(self):
        gen = self.active
        snap = len(gen.log)
        self.successor = RebuildStateMachine(self.n, gen, snap, self.scratch, self.config.backend,
                                             self.seed, self.config.audit)
        if self.config.budget is not None:
            self.budget = self.config.budget
        else:
            w = self.work_estimate(len(gen.slabs), snap)
            self.budget = max(1, -(-self.config.safety * w // self.L))

    def _handoff(self):
        m = self.successor
        self.handoff_lags.append(m.lag() if m.built else None)
        if m.phase != "done":
            self.violations += 1
            m.finish()
        if m.checksum_ok is False:
            self.snapshot_mismatches += 1
        self.active = m.target
        self.successor = None
        self.handoffs += 1

    # -- operations ---------------------------------------------------------------
    def query(self, i: int, j: int) -> int:
        check_cell((i, j), self.n)
        return self.active.bit(i, j)

    def update(self, i: int, j: int) -> int:
        """Flip (i, j); returns the work units spent by this call."""
        check_cell((i, j), self.n)
        L = self.L
        epoch, pos = divmod(self.updates, L)
        if pos == 0 and epoch % 2 == 0:
            if self.successor is not None:
                self._handoff()
            self._start_successor()
        gen = self.active
        k = gen.pending.key(i, j)
        units = gen.flip_key(k, i, j)
        gen.log.append(k)
        units += 1
        m = self.successor
        if not m.built:
            units += m.step(self.budget)
            if pos == L - 1 and not m.built:
                # construction epoch over without a finished build
                self.violations += 1
                units += m.step(1 << 60)
        else:
            units += m.replay(2)
        self.updates += 1
        if units > self.max_work:
            self.max_work = units
        if self.work is not None:
            self.work.append(units)
        return units

    @property
    def phase(self) -> str:
        return self.successor.phase if self.successor is not None else "done"

    def to_rows(self) -> list:
        n = self.n
        return [[self.active.bit(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]


def wc_init(n: int, K=(), config: WorstCaseConfig | None = None) -> WorstCaseMatrix:
    return WorstCaseMatrix(n, K, config)


def wc_query(m: WorstCaseMatrix, p) -> int:
    return m.query(p[0], p[1])


def wc_update(m: WorstCaseMatrix, p) -> None:
    m.update(p[0], p[1])
