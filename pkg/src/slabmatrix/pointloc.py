"""Static orthogonal point location over disjoint slabs.

Column sweep: each slab enters the active row-interval map at its first
column and leaves after its last. Every column whose active map changes gets
a new version; ``column_version`` maps a column to its version in O(1).

Backends
--------
baseline
    Versions are roots of a persistent AVL tree keyed by the interval's top
    row, updated by path copying. Query is O(log N); space O(n + N log N).
fast
    Every version is frozen into parallel sorted arrays and queried with
    ``bisect``. Queries run in C, but space is the sum of live intervals over
    all versions, which can be quadratic in N.
"""
from __future__ import annotations

from array import array
from bisect import bisect_right

from .core import DecompositionError, Slab, SlabDecomposition, drain, find_overlap, in_range

BACKENDS = ("baseline", "fast")

# persistent AVL nodes are tuples: (key, hi, slab_id, left, right, height)
_K, _HI, _ID, _L, _R, _H = range(6)


def _h(t):
    return t[_H] if t is not None else 0


def _mk(key, hi, sid, left, right):
    hl = left[_H] if left is not None else 0
    hr = right[_H] if right is not None else 0
    return (key, hi, sid, left, right, (hl if hl > hr else hr) + 1)


def _balance(key, hi, sid, left, right, ctr):
    hl, hr = _h(left), _h(right)
    if hl > hr + 1:
        if _h(left[_L]) >= _h(left[_R]):
            ctr[0] += 2
            return _mk(left[_K], left[_HI], left[_ID], left[_L],
                       _mk(key, hi, sid, left[_R], right))
        lr = left[_R]
        ctr[0] += 3
        return _mk(lr[_K], lr[_HI], lr[_ID],
                   _mk(left[_K], left[_HI], left[_ID], left[_L], lr[_L]),
                   _mk(key, hi, sid, lr[_R], right))
    if hr > hl + 1:
        if _h(right[_R]) >= _h(right[_L]):
            ctr[0] += 2
            return _mk(right[_K], right[_HI], right[_ID],
                       _mk(key, hi, sid, left, right[_L]), right[_R])
        rl = right[_L]
        ctr[0] += 3
        return _mk(rl[_K], rl[_HI], rl[_ID],
                   _mk(key, hi, sid, left, rl[_L]),
                   _mk(right[_K], right[_HI], right[_ID], rl[_R], right[_R]))
    ctr[0] += 1
    return _mk(key, hi, sid, left, right)


def _insert(t, key, hi, sid, ctr):
    if t is None:
        ctr[0] += 1
        return (key, hi, sid, None, None, 1)
    if key < t[_K]:
        return _balance(t[_K], t[_HI], t[_ID], _insert(t[_L], key, hi, sid, ctr), t[_R], ctr)
    if key > t[_K]:
        return _balance(t[_K], t[_HI], t[_ID], t[_L], _insert(t[_R], key, hi, sid, ctr), ctr)
    raise DecompositionError(f"two active intervals start at row {key}")


def _pop_min(t, ctr):
    if t[_L] is None:
        return t, t[_R]
    m, rest = _pop_min(t[_L], ctr)
    return m, _balance(t[_K], t[_HI], t[_ID], rest, t[_R], ctr)


def _delete(t, key, ctr):
    if t is None:
        raise KeyError(key)
    if key < t[_K]:
        return _balance(t[_K], t[_HI], t[_ID], _delete(t[_L], key, ctr), t[_R], ctr)
    if key > t[_K]:
        return _balance(t[_K], t[_HI], t[_ID], t[_L], _delete(t[_R], key, ctr), ctr)
    if t[_L] is None:
        return t[_R]
    if t[_R] is None:
        return t[_L]
    m, rest = _pop_min(t[_R], ctr)
    return _balance(m[_K], m[_HI], m[_ID], t[_L], rest, ctr)


def _inorder(t, out):
    while t is not None:
        _inorder(t[_L], out)
        out.append(t)
        t = t[_R]


class PointLocator:
    """Answers "which slab holds cell (i, j)" for a fixed set of disjoint slabs."""

    def __init__(self, n: int, backend: str = "baseline"):
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}")
        self.n = n
        self.backend = backend
        self.slabs: list = []
        self.column_version = array("i", [0]) * (n + 2)
        self.versions: list = [None]
        self.node_copies = 0

    def __len__(self):
        return len(self.slabs)

    def locate(self, i: int, j: int):
        v = self.versions[self.column_version[j]]
        if self.backend == "fast":
            if v is None:
                return None
            starts, his, ids = v
            k = bisect_right(starts, i) - 1
            if k >= 0 and his[k] >= i:
                return self.slabs[ids[k]]
            return None
        best = None
        t = v
        while t is not None:
            if i < t[0]:
                t = t[3]
            else:
                best = t
                t = t[4]
        if best is not None and best[1] >= i:
            return self.slabs[best[2]]
        return None

    def locate_index(self, i: int, j: int) -> int:
        """Index into ``slabs`` of the slab holding (i, j), or -1."""
        v = self.versions[self.column_version[j]]
        if self.backend == "fast":
            if v is None:
                return -1
            starts, his, ids = v
            k = bisect_right(starts, i) - 1
            return ids[k] if k >= 0 and his[k] >= i else -1
        best = None
        t = v
        while t is not None:
            if i < t[0]:
                t = t[3]
            else:
                best = t
                t = t[4]
        return best[2] if best is not None and best[1] >= i else -1

    def locate_counted(self, i: int, j: int):
        """Baseline lookup that also reports the number of key comparisons."""
        t = self.versions[self.column_version[j]]
        if self.backend == "fast":
            n = len(t[0]) if t else 0
            return self.locate(i, j), max(1, n.bit_length())
        best, cmp = None, 0
        while t is not None:
            cmp += 1
            if i < t[0]:
                t = t[3]
            else:
                best = t
                t = t[4]
        if best is not None and best[1] >= i:
            return self.slabs[best[2]], cmp
        return None, cmp

    def contains(self, i: int, j: int) -> bool:
        return self.locate(i, j) is not None

    def live_intervals(self, j: int) -> list:
        """(top, bottom, slab) for the slabs crossing column j, by top row."""
        v = self.versions[self.column_version[j]]
        if self.backend == "fast":
            if v is None:
                return []
            return [(a, b, self.slabs[s]) for a, b, s in zip(*v)]
        nodes = []
        _inorder(v, nodes)
        return [(t[0], t[1], self.slabs[t[2]]) for t in nodes]


def build_steps(n: int, slabs, backend: str = "baseline", checked: bool = True,
                quantum: int = 1):
    """Generator building a PointLocator; yields work units, returns the locator.

    One unit per column step and one per slab event, plus the node copies of
    every path-copying update (baseline) or the array copy per version (fast).
    Units are yielded in batches of at least ``quantum``.
    """
    slabs = [Slab(*s) for s in slabs]
    if checked:
        for s in slabs:
            if not in_range(s, n):
                raise DecompositionError(f"slab {tuple(s)} out of range for n={n}")
        pair = find_overlap(slabs)
        if pair is not None:
            raise DecompositionError(
                f"slabs {tuple(pair[0])} and {tuple(pair[1])} overlap")
    loc = PointLocator(n, backend)
    loc.slabs = slabs
    starts: dict = {}
    ends: dict = {}
    acc = 0
    for sid, s in enumerate(slabs):
        starts.setdefault(s.c, []).append(sid)
        ends.setdefault(s.d + 1, []).append(sid)
        acc += 1
        if acc >= quantum:
            yield acc
            acc = 0
    colver = loc.column_version
    versions = loc.versions
    ctr = [0]
    root = None
    fast = backend == "fast"
    if fast:
        cur_starts: list = []
        cur_his: list = []
        cur_ids: list = []
    cur = 0
    for j in range(1, n + 1):
        gone = ends.get(j)
        born = starts.get(j)
        if gone is not None or born is not None:
            ctr[0] = 0
            if fast:
                if gone:
                    for sid in gone:
                        k = bisect_right(cur_starts, slabs[sid].a) - 1
                        del cur_starts[k], cur_his[k], cur_ids[k]
                if born:
                    for sid in born:
                        s = slabs[sid]
                        k = bisect_right(cur_starts, s.a)
                        cur_starts.insert(k, s.a)
                        cur_his.insert(k, s.b)
                        cur_ids.insert(k, sid)
                versions.append((array("i", cur_starts), array("i", cur_his),
                                 array("i", cur_ids)) if cur_starts else None)
                ctr[0] = len(cur_starts) + len(gone or ()) + len(born or ())
            else:
                # one yield per event keeps every chunk O(log N)
                if gone:
                    for sid in gone:
                        ctr[0] = 0
                        root = _delete(root, slabs[sid].a, ctr)
                        loc.node_copies += ctr[0]
                        acc += 1 + ctr[0]
                        if acc >= quantum:
                            yield acc
                            acc = 0
                if born:
                    for sid in born:
                        s = slabs[sid]
                        ctr[0] = 0
                        root = _insert(root, s.a, s.b, sid, ctr)
                        loc.node_copies += ctr[0]
                        acc += 1 + ctr[0]
                        if acc >= quantum:
                            yield acc
                            acc = 0
                ctr[0] = 0
                versions.append(root)
            cur = len(versions) - 1
            loc.node_copies += ctr[0]
            colver[j] = cur
            acc += 1 + ctr[0]
        else:
            colver[j] = cur
            acc += 1
        if acc >= quantum:
            yield acc
            acc = 0
    if acc:
        yield acc
    return loc


def pl_build(n: int, slabs, backend: str = "baseline") -> PointLocator:
    if isinstance(slabs, SlabDecomposition):
        slabs = slabs.slabs
    return drain(build_steps(n, slabs, backend, quantum=1 << 40))


def pl_locate(loc: PointLocator, p):
    return loc.locate(p[0], p[1])

