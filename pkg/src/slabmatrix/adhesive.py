"""Adhesive segment set: disjoint, pairwise non-adjacent integer segments.

Segment endpoints live in a van Emde Boas dictionary; a static role array
records whether a key opens a segment, closes one, or both (a one-point
segment ``[k, k]`` owns a single key). Every method issues a constant number
of dictionary calls; ``calls`` accumulates them for instrumentation.
"""
from __future__ import annotations

from .core import Segment
from .veb import VebDictionary

FIRST = 1
SECOND = 2
BOTH = FIRST | SECOND


class AdhesiveSegmentSet:
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        # keys are stored unshifted; the dictionary gets one spare slot for key 0
        self._dict = VebDictionary(n + 1)
        root = self._dict._root
        self._succ = root.succ
        self._pred = root.pred
        self._ins = root.insert
        self._del = root.delete
        self.role = bytearray(n + 2)
        self.calls = 0

    def containing(self, a: int, b: int):
        # the closing key is read as the partner of the opening key; probing
        # successor(b - 1) instead misfires when b is itself an opening key
        role = self.role
        self.calls += 1
        p = self._pred(a + 1)
        if p is None:
            return None
        if not role[p] & FIRST:
            # a is the closing key of a segment; only [a, a] fits inside it
            if p != a or b != a:
                return None
            self.calls += 1
            return Segment(self._pred(p), p)
        if role[p] == BOTH:
            q = p
        else:
            self.calls += 1
            q = self._succ(p)
        return Segment(p, q) if q >= b else None

    def adjacent(self, a: int, b: int) -> list:
        role = self.role
        out = []
        if a > 1 and role[a - 1] & SECOND:
            if role[a - 1] == BOTH:
                out.append(Segment(a - 1, a - 1))
            else:
                self.calls += 1
                out.append(Segment(self._pred(a - 1), a - 1))
        if b < self.n and role[b + 1] & FIRST:
            if role[b + 1] == BOTH:
                out.append(Segment(b + 1, b + 1))
            else:
                self.calls += 1
                out.append(Segment(b + 1, self._succ(b + 1)))
        return out

    def disjoint(self, a: int, b: int) -> bool:
        self.calls += 2
        s = self._succ(a - 1)
        if s is not None and s <= b:
            return False
        p = self._pred(a)
        return p is None or self.role[p] != FIRST

    def merge(self, a: int, b: int) -> None:
        role = self.role
        self.calls += 1
        s = self._succ(a - 1)
        if s is not None and s <= b:
            return
        self.calls += 1
        p = self._pred(a)
        if p is not None and role[p] == FIRST:
            return
        if p is not None and p == a - 1:
            if role[p] == BOTH:
                role[p] = FIRST
            else:
                role[p] = 0
                self.calls += 1
                self._del(p)
        else:
            role[a] |= FIRST
            self.calls += 1
            self._ins(a)
        if s is not None and s == b + 1:
            if role[s] == BOTH:
                role[s] = SECOND
            else:
                role[s] = 0
                self.calls += 1
                self._del(s)
        else:
            if role[b] == 0:
                self.calls += 1
                self._ins(b)
            role[b] |= SECOND

    def split(self, a: int, b: int) -> None:
        seg = self.containing(a, b)
        if seg is None:
            return
        role = self.role
        lo, hi = seg
        if lo == hi:
            role[lo] = 0
            self.calls += 1
            self._del(lo)
            return
        if lo < a:
            if a - 1 == lo:
                role[lo] = BOTH
            else:
                role[a - 1] = SECOND
                self.calls += 1
                self._ins(a - 1)
        else:
            role[lo] = 0
            self.calls += 1
            self._del(lo)
        if b < hi:
            if b + 1 == hi:
                role[hi] = BOTH
            else:
                role[b + 1] = FIRST
                self.calls += 1
                self._ins(b + 1)
        else:
            role[hi] = 0
            self.calls += 1
            self._del(hi)

    def is_empty(self) -> bool:
        return self._dict.is_empty()

    def segments(self) -> list:
        """All stored segments in increasing order (walks every key)."""
        out = []
        x = self._succ(0)
        while x is not None:
            if self.role[x] == BOTH:
                out.append(Segment(x, x))
                x = self._succ(x)
            else:
                y = self._succ(x)
                out.append(Segment(x, y))
                x = self._succ(y)
        return out

    def check_roles(self) -> bool:
        """Keys read in order alternate FIRST/SECOND (BOTH counts as a pair)."""
        expect_first = True
        prev = 0
        x = self._succ(0)
        while x is not None:
            r = self.role[x]
            if expect_first:
                if r == SECOND or r == 0:
                    return False
                if r == FIRST:
                    expect_first = False
            else:
                if r != SECOND or x < prev:
                    return False
                expect_first = True
            prev = x
            x = self._succ(x)
        return expect_first


def ass_containing(s: AdhesiveSegmentSet, q):
    return s.containing(q[0], q[1])


def ass_adjacent(s: AdhesiveSegmentSet, q):
    return s.adjacent(q[0], q[1])


def ass_disjoint(s: AdhesiveSegmentSet, q):
    return s.disjoint(q[0], q[1])


def ass_merge(s: AdhesiveSegmentSet, q):
    s.merge(q[0], q[1])


def ass_split(s: AdhesiveSegmentSet, q):
    s.split(q[0], q[1])
