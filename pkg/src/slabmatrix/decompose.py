"""Canonical slab decomposition from an arbitrary slab decomposition.

Three sweeps over the columns:

1. left to right, maintaining the strips of the current column in an
   adhesive segment set, to find the strips that end at each column (``B``);
2. the same sweep on the mirrored matrix, giving the strips that start at
   each column (``A``);
3. a final pass pairing every ``A`` strip with the ``B`` strip of the same
   top row, which yields one canonical slab per pair.

The ``*_steps`` functions are generators that yield work units (adhesive
dictionary calls, bucket appends, column steps) and return their result, so
the same code runs synchronously via ``drain`` or in budgeted slices.
"""
from __future__ import annotations

from array import array
from dataclasses import dataclass

from .adhesive import AdhesiveSegmentSet
from .core import Segment, Slab, SlabDecomposition, check_decomposition, drain


BATCH = 1 << 40  # quantum for synchronous callers: yield (almost) never


class ConsistencyError(RuntimeError):
    """A strip delta that cannot come from any matrix."""


@dataclass
class OpenCloseBuckets:
    n: int
    opening: list  # opening[c]: row segments of slabs whose first column is c
    closing: list  # closing[d]: row segments of slabs whose last column is d


@dataclass
class StripDelta:
    n: int
    born: list  # born[i] = strips_i minus strips_(i-1)
    dying: list  # dying[i] = strips_i minus strips_(i+1)


class DecomposeScratch:
    """Reusable O(n) work arrays; left clean after every decomposition."""

    def __init__(self, n: int):
        self.n = n
        self.opening = [None] * (n + 2)
        self.closing = [None] * (n + 2)
        self.born = [None] * (n + 2)
        self.dying = [None] * (n + 2)
        self.slab_start = array("i", [0]) * (n + 2)  # 0 stands for "no start"
        self.mark = bytearray(n + 2)
        self.touched: list = []
        self._segments = None

    @property
    def segments(self) -> AdhesiveSegmentSet:
        if self._segments is None:
            self._segments = AdhesiveSegmentSet(self.n)
        return self._segments

    def is_clean(self) -> bool:
        return (not any(self.mark) and not any(self.slab_start)
                and not any(self.opening) and not any(self.closing)
                and (self._segments is None or self._segments.is_empty()))


def _append(arr, idx, item):
    lst = arr[idx]
    if lst is None:
        arr[idx] = [item]
    else:
        lst.append(item)


def bucketize_steps(slabs, opening, closing, touched, quantum=1):
    acc = 0
    for a, b, c, d in slabs:
        seg = Segment(a, b)
        _append(opening, c, seg)
        _append(closing, d, seg)
        touched.append(c)
        touched.append(d)
        acc += 2
        if acc >= quantum:
            yield acc
            acc = 0
    if acc:
        yield acc


def sweep_steps(n, opens, closes, out, segs, mark, reverse=False, quantum=1):
    """Fill ``out[col]`` with the strips of ``col`` absent from the next column.

    With ``reverse`` the columns are visited n..1 and "next" means col - 1;
    callers pass the buckets with their roles exchanged so that this is the
    left-to-right sweep of the mirrored matrix.

    A unit is one segment-set operation or one of its dictionary calls, or
    one column step. Units are yielded in batches of at least ``quantum``.
    """
    touched = []
    step = -1 if reverse else 1
    col = n if reverse else 1
    ops = 0
    base = segs.calls
    first = opens[col]
    if first:
        for lo, hi in first:
            segs.merge(lo, hi)
            ops += 1
            if ops + segs.calls - base >= quantum:
                yield ops + segs.calls - base
                ops, base = 0, segs.calls
    for t in range(1, n + 1):
        nxt_col = col + step
        closing = closes[col]
        opening = opens[nxt_col] if t < n else None
        ops += 1
        if not closing and not opening:
            out[col] = None
            col = nxt_col
            if ops + segs.calls - base >= quantum:
                yield ops + segs.calls - base
                ops, base = 0, segs.calls
            continue
        cand = []
        if closing:
            for lo, hi in closing:
                s = segs.containing(lo, hi)
                if s is not None and not mark[s[0]]:
                    mark[s[0]] = 1
                    touched.append(s[0])
                    cand.append(s)
                ops += 1
                if ops + segs.calls - base >= quantum:
                    yield ops + segs.calls - base
                    ops, base = 0, segs.calls
        if opening:
            for lo, hi in opening:
                for s in segs.adjacent(lo, hi):
                    if not mark[s[0]]:
                        mark[s[0]] = 1
                        touched.append(s[0])
                        cand.append(s)
                ops += 1
                if ops + segs.calls - base >= quantum:
                    yield ops + segs.calls - base
                    ops, base = 0, segs.calls
        if closing:
            for lo, hi in closing:
                segs.split(lo, hi)
                ops += 1
                if ops + segs.calls - base >= quantum:
                    yield ops + segs.calls - base
                    ops, base = 0, segs.calls
        if opening:
            for lo, hi in opening:
                segs.merge(lo, hi)
                ops += 1
                if ops + segs.calls - base >= quantum:
                    yield ops + segs.calls - base
                    ops, base = 0, segs.calls
        gone = []
        for s in cand:
            if segs.containing(s[0], s[1]) != s:
                gone.append(s)
            ops += 1
            if ops + segs.calls - base >= quantum:
                yield ops + segs.calls - base
                ops, base = 0, segs.calls
        out[col] = gone or None
        for k in touched:
            mark[k] = 0
        touched.clear()
        col = nxt_col
    if ops + segs.calls - base:
        yield ops + segs.calls - base


def assemble_steps(n, born, dying, slab_start, out, quantum=1, snapshots=None):
    acc = 0
    for i in range(1, n + 1):
        starting = born[i]
        ending = dying[i]
        acc += 1
        if starting:
            for a, _ in starting:
                slab_start[a] = i
                acc += 1
                if acc >= quantum:
                    yield acc
                    acc = 0
        if snapshots is not None:
            snapshots.append(list(slab_start[1:n + 1]))
        if ending:
            for a, b in ending:
                c = slab_start[a]
                if c == 0:
                    raise ConsistencyError(
                        f"strip [{a}, {b}] ends at column {i} but never started")
                out.append(Slab(a, b, c, i))
                slab_start[a] = 0
                acc += 1
                if acc >= quantum:
                    yield acc
                    acc = 0
        if acc >= quantum:
            yield acc
            acc = 0
    if acc:
        yield acc


def decompose_steps(n, slabs, scratch: DecomposeScratch, quantum=1):
    """Generator form of ``decompose`` over a caller-owned scratch.

    ``quantum`` batches work units before yielding; 1 gives the finest
    interleaving, a huge value runs almost like a plain function.
    """
    result: list = []
    if not slabs:
        return SlabDecomposition(n, result)
    opening, closing = scratch.opening, scratch.closing
    touched = scratch.touched
    yield from bucketize_steps(slabs, opening, closing, touched, quantum)
    segs = scratch.segments
    yield from sweep_steps(n, opening, closing, scratch.dying, segs, scratch.mark,
                           quantum=quantum)
    yield from sweep_steps(n, closing, opening, scratch.born, segs, scratch.mark,
                           reverse=True, quantum=quantum)
    yield from assemble_steps(n, scratch.born, scratch.dying, scratch.slab_start, result,
                              quantum)
    acc = 0
    for c in touched:
        opening[c] = None
        closing[c] = None
        acc += 1
        if acc >= quantum:
            yield acc
            acc = 0
    touched.clear()
    if acc:
        yield acc
    return SlabDecomposition(n, result)


# -- public one-shot API -----------------------------------------------------

def _slab_list(K):
    return K.slabs if isinstance(K, SlabDecomposition) else [Slab(*s) for s in K]


def bucketize(n: int, K) -> OpenCloseBuckets:
    opening = [[] for _ in range(n + 2)]
    closing = [[] for _ in range(n + 2)]
    drain(bucketize_steps(_slab_list(K), opening, closing, []))
    return OpenCloseBuckets(n, opening, closing)


def _as_lists(arr):
    return [list(x) if x else [] for x in arr]


def sweep_right(n: int, buckets: OpenCloseBuckets) -> list:
    """``dying[i]`` for every column: strips of column i missing from column i+1."""
    out = [None] * (n + 2)
    drain(sweep_steps(n, buckets.opening, buckets.closing, out,
                      AdhesiveSegmentSet(n), bytearray(n + 2)))
    return _as_lists(out)


def sweep_left(n: int, buckets: OpenCloseBuckets) -> list:
    """``born[i]`` for every column: strips of column i missing from column i-1."""
    out = [None] * (n + 2)
    drain(sweep_steps(n, buckets.closing, buckets.opening, out,
                      AdhesiveSegmentSet(n), bytearray(n + 2), reverse=True))
    return _as_lists(out)


def assemble(n: int, delta: StripDelta, snapshots: list | None = None) -> SlabDecomposition:
    """Final sweep; ``snapshots`` collects slab_start after each round's starts."""
    out: list = []
    drain(assemble_steps(n, delta.born, delta.dying, array("i", [0]) * (n + 2), out,
                         BATCH, snapshots))
    return SlabDecomposition(n, out)


def decompose(n: int, K, validate: bool = True,
              scratch: DecomposeScratch | None = None) -> SlabDecomposition:
    """Canonical slab decomposition of the matrix whose ones are covered by K."""
    slabs = _slab_list(K)
    if validate:
        check_decomposition(SlabDecomposition(n, slabs))
    if scratch is None:
        if not slabs:
            return SlabDecomposition(n, [])
        scratch = DecomposeScratch(n)
    return drain(decompose_steps(n, slabs, scratch, BATCH))
