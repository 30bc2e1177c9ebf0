"""van Emde Boas dictionary over the universe {1, ..., U}.

Universes of at most 64 keys are a single machine-word bitmask; larger ones
split their bits into a high half (cluster index) and a low half (offset),
each a power of two. The minimum of every non-leaf node is kept outside its
clusters, so each operation recurses into at most one child.

Successor and predecessor are strict. ``successor(0)`` returns the minimum and
``predecessor(U + 1)`` the maximum.
"""
from __future__ import annotations

WORD_BITS = 64
_WORD_LOG = 6


class _Leaf:
    __slots__ = ("bits",)

    def __init__(self):
        self.bits = 0

    @property
    def min(self):
        b = self.bits
        return (b & -b).bit_length() - 1 if b else None

    @property
    def max(self):
        b = self.bits
        return b.bit_length() - 1 if b else None

    def member(self, x):
        return (self.bits >> x) & 1 == 1

    def insert(self, x):
        self.bits |= 1 << x

    def delete(self, x):
        self.bits &= ~(1 << x)

    def succ(self, x):
        m = self.bits >> (x + 1)
        if not m:
            return None
        return x + (m & -m).bit_length()

    def pred(self, x):
        if x <= 0:
            return None
        m = self.bits & ((1 << x) - 1)
        return m.bit_length() - 1 if m else None


class _Node:
    __slots__ = ("min", "max", "shift", "mask", "clusters", "summary")

    def __init__(self, shift, clusters, summary):
        self.min = None
        self.max = None
        self.shift = shift
        self.mask = (1 << shift) - 1
        self.clusters = clusters
        self.summary = summary

    def member(self, x):
        mn = self.min
        if mn is None or x < mn or x > self.max:
            return False
        if x == mn or x == self.max:
            return True
        return self.clusters[x >> self.shift].member(x & self.mask)

    def insert(self, x):
        mn = self.min
        if mn is None:
            self.min = self.max = x
            return
        if x == mn:
            return
        if x < mn:
            self.min, x = x, mn
        h = x >> self.shift
        c = self.clusters[h]
        if c.max is None:
            self.summary.insert(h)
            if type(c) is _Leaf:
                c.bits = 1 << (x & self.mask)
            else:
                c.min = c.max = x & self.mask
        else:
            c.insert(x & self.mask)
        if x > self.max:
            self.max = x

    def delete(self, x):
        mn = self.min
        if mn is None or x < mn or x > self.max:
            return
        if mn == self.max:
            self.min = self.max = None
            return
        shift = self.shift
        if x == mn:
            first = self.summary.min
            x = (first << shift) + self.clusters[first].min
            self.min = x
        h = x >> shift
        c = self.clusters[h]
        c.delete(x & self.mask)
        if c.max is None:
            self.summary.delete(h)
            if x == self.max:
                sm = self.summary.max
                self.max = self.min if sm is None else (sm << shift) + self.clusters[sm].max
        elif x == self.max:
            self.max = (h << shift) + c.max

    def succ(self, x):
        mn = self.min
        if mn is None:
            return None
        if x < mn:
            return mn
        if x >= self.max:
            return None
        shift = self.shift
        h = x >> shift
        lo = x & self.mask
        c = self.clusters[h]
        cmax = c.max
        if cmax is not None and lo < cmax:
            return (h << shift) + c.succ(lo)
        h = self.summary.succ(h)
        return (h << shift) + self.clusters[h].min

    def pred(self, x):
        mx = self.max
        if mx is None:
            return None
        if x > mx:
            return mx
        if x <= self.min:
            return None
        shift = self.shift
        h = x >> shift
        lo = x & self.mask
        c = self.clusters[h]
        cmin = c.min
        if cmin is not None and lo > cmin:
            return (h << shift) + c.pred(lo)
        h = self.summary.pred(h)
        if h is None:
            return self.min
        return (h << shift) + self.clusters[h].max


def _build(k, counter):
    counter[0] += 1
    if k <= _WORD_LOG:
        return _Leaf()
    low = k // 2
    high = k - low
    clusters = [_build(low, counter) for _ in range(1 << high)]
    return _Node(low, clusters, _build(high, counter))


class VebDictionary:
    """Set of integer keys in [1, U] with O(log log U) operations.

    >>> v = VebDictionary(16)
    >>> for x in (3, 9, 12): v.insert(x)
    >>> v.successor(3), v.predecessor(9), v.successor(12)
    (9, 3, None)
    """

    def __init__(self, universe_size: int):
        if universe_size < 1:
            raise ValueError("universe size must be >= 1")
        self.universe_size = universe_size
        k = max(0, (universe_size - 1).bit_length())
        counter = [0]
        self._root = _build(k, counter)
        self.node_count = counter[0]

    def _check(self, x):
        if not 1 <= x <= self.universe_size:
            raise IndexError(f"key {x} outside universe [1, {self.universe_size}]")

    def insert(self, x: int) -> None:
        self._check(x)
        self._root.insert(x - 1)

    def delete(self, x: int) -> None:
        self._check(x)
        self._root.delete(x - 1)

    def lookup(self, x: int) -> bool:
        self._check(x)
        return self._root.member(x - 1)

    __contains__ = lookup

    def successor(self, x: int):
        if not 0 <= x <= self.universe_size:
            raise IndexError(f"successor argument {x} outside [0, {self.universe_size}]")
        r = self._root.succ(x - 1)
        return None if r is None else r + 1

    def predecessor(self, x: int):
        if not 1 <= x <= self.universe_size + 1:
            raise IndexError(
                f"predecessor argument {x} outside [1, {self.universe_size + 1}]")
        r = self._root.pred(x - 1)
        return None if r is None else r + 1

    def min(self):
        r = self._root.min
        return None if r is None else r + 1

    def max(self):
        r = self._root.max
        return None if r is None else r + 1

    def is_empty(self) -> bool:
        return self._root.max is None

    def __iter__(self):
        x = self.successor(0)
        while x is not None:
            yield x
            x = self.successor(x)


# module-level aliases mirroring the operation names used elsewhere
def veb_insert(d: VebDictionary, x: int) -> None:
    d.insert(x)


def veb_delete(d: VebDictionary, x: int) -> None:
    d.delete(x)


def veb_lookup(d: VebDictionary, x: int) -> bool:
    return d.lookup(x)


def veb_successor(d: VebDictionary, x: int):
    return d.successor(x)


def veb_predecessor(d: VebDictionary, x: int):
    return d.predecessor(x)
