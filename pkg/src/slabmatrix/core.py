"""Coordinate and slab types shared by the whole package.

All indices are 1-based and inclusive: a slab ``(a, b, c, d)`` covers rows
``a..b`` and columns ``c..d``.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple


class DecompositionError(ValueError):
    """Raised for slab sets that are out of range or overlap."""


class Cell(NamedTuple):
    row: int
    col: int


class Segment(NamedTuple):
    lo: int
    hi: int

    def __len__(self) -> int:  # pragma: no cover - convenience only
        return self.hi - self.lo + 1


class Slab(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    @property
    def rows(self) -> Segment:
        return Segment(self.a, self.b)

    @property
    def cols(self) -> Segment:
        return Segment(self.c, self.d)

    def area(self) -> int:
        return (self.b - self.a + 1) * (self.d - self.c + 1)

    def cells(self):
        for i in range(self.a, self.b + 1):
            for j in range(self.c, self.d + 1):
                yield Cell(i, j)


def slab_contains(s: Slab, p: Cell) -> bool:
    return s[0] <= p[0] <= s[1] and s[2] <= p[1] <= s[3]


def slabs_overlap(s: Slab, t: Slab) -> bool:
    return s[0] <= t[1] and t[0] <= s[1] and s[2] <= t[3] and t[2] <= s[3]


def in_range(s: Slab, n: int) -> bool:
    a, b, c, d = s
    return 1 <= a <= b <= n and 1 <= c <= d <= n


@dataclass
class SlabDecomposition:
    n: int
    slabs: list = field(default_factory=list)

    def __post_init__(self):
        self.slabs = [Slab(*map(int, s)) for s in self.slabs]

    def __len__(self) -> int:
        return len(self.slabs)

    def __iter__(self):
        return iter(self.slabs)

    def as_set(self) -> set:
        return set(self.slabs)

    def sorted(self) -> "SlabDecomposition":
        return SlabDecomposition(self.n, sorted(self.slabs, key=lambda s: (s.a, s.c, s.b, s.d)))


@dataclass
class MatrixSpec:
    n: int
    decomposition: SlabDecomposition

    def __post_init__(self):
        if self.decomposition.n != self.n:
            raise DecompositionError(
                f"decomposition is for n={self.decomposition.n}, expected {self.n}")


def find_overlap(slabs: Iterable[Slab]) -> tuple | None:
    """Return one overlapping pair of slabs, or None.

    Column sweep with the active row intervals kept in a sorted list; at any
    column the active intervals are disjoint, so only the two neighbours of a
    new interval can collide with it.
    """
    slabs = [Slab(*s) for s in slabs]
    events = []
    for idx, s in enumerate(slabs):
        events.append((s.c, 1, idx))
        events.append((s.d + 1, 0, idx))
    # removals (0) sort before insertions (1) at the same column
    events.sort()
    active: list = []  # sorted (a, b, idx)
    for _, kind, idx in events:
        s = slabs[idx]
        item = (s.a, s.b, idx)
        pos = bisect.bisect_left(active, item)
        if kind == 0:
            del active[pos]
            continue
        if pos > 0 and active[pos - 1][1] >= s.a:
            return slabs[active[pos - 1][2]], s
        if pos < len(active) and active[pos][0] <= s.b:
            return slabs[active[pos][2]], s
        active.insert(pos, item)
    return None


def validate_decomposition(dec: SlabDecomposition) -> bool:
    n = dec.n
    if n < 1:
        return False
    if not all(in_range(s, n) for s in dec.slabs):
        return False
    return find_overlap(dec.slabs) is None


def check_decomposition(dec: SlabDecomposition) -> None:
    """Like validate_decomposition but raises with a useful message."""
    for s in dec.slabs:
        if not in_range(s, dec.n):
            raise DecompositionError(f"slab {tuple(s)} out of range for n={dec.n}")
    pair = find_overlap(dec.slabs)
    if pair is not None:
        raise DecompositionError(
            f"slabs {tuple(pair[0])} and {tuple(pair[1])} overlap")


def drain(gen):
    """Run a work-unit generator to completion and return its result."""
    try:
        while True:
            next(gen)
    except StopIteration as stop:
        return stop.value


def check_cell(p, n: int) -> Cell:
    i, j = p
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"cell ({i}, {j}) outside [1, {n}]^2")
    return Cell(i, j)


# -- slab file format: "n K" then K lines "a b c d" --------------------------

class ParseError(ValueError):
    def __init__(self, msg, line=None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_slab_text(text: str) -> SlabDecomposition:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty slab file", 1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be 'n K'", lineno)
    try:
        n, k = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("header must be two integers", lineno) from None
    if n < 1 or k < 0:
        raise ParseError("need n >= 1 and K >= 0", lineno)
    if len(lines) - 1 != k:
        raise ParseError(f"expected {k} slab lines, found {len(lines) - 1}",
                         lines[-1][0])
    slabs = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 4:
            raise ParseError("slab line must be 'a b c d'", lineno)
        try:
            s = Slab(*map(int, parts))
        except ValueError:
            raise ParseError("non-integer coordinate", lineno) from None
        if not in_range(s, n):
            raise ParseError(f"slab {tuple(s)} out of range for n={n}", lineno)
        slabs.append(s)
    return SlabDecomposition(n, slabs)


def format_slab_text(dec: SlabDecomposition, canonical_order: bool = True) -> str:
    slabs = dec.sorted().slabs if canonical_order else dec.slabs
    out = [f"{dec.n} {len(slabs)}"]
    out.extend(f"{s.a} {s.b} {s.c} {s.d}" for s in slabs)
    return "\n".join(out) + "\n"


def read_slab_file(path) -> SlabDecomposition:
    with open(path) as fh:
        return parse_slab_text(fh.read())


def write_slab_file(path, dec: SlabDecomposition) -> None:
    with open(path, "w") as fh:
        fh.write(format_slab_text(dec))
