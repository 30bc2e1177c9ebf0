"""Brute-force references and bound checks.

Nothing here shares code with the fast paths: strips and canonical slabs are
read straight off a dense 0/1 array.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import (Segment, Slab, SlabDecomposition, check_decomposition,
                   _content_lines, ParseError)


@dataclass
class DenseMatrix:
    n: int
    bits: np.ndarray = None  # shape (n, n), uint8, row-major, 0-based

    def __post_init__(self):
        if self.bits is None:
            self.bits = np.zeros((self.n, self.n), dtype=np.uint8)
        else:
            self.bits = np.asarray(self.bits, dtype=np.uint8)
            if self.bits.shape != (self.n, self.n):
                raise ValueError(f"expected shape ({self.n}, {self.n}), got {self.bits.shape}")

    @classmethod
    def from_rows(cls, rows) -> "DenseMatrix":
        rows = [[int(ch) for ch in r] if isinstance(r, str) else list(r) for r in rows]
        return cls(len(rows), np.array(rows, dtype=np.uint8).reshape(len(rows), len(rows)))

    def get(self, i: int, j: int) -> int:
        return int(self.bits[i - 1, j - 1])

    def flip(self, i: int, j: int) -> None:
        self.bits[i - 1, j - 1] ^= 1

    # engine interface, so a dense matrix can replay traces
    def query(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"cell ({i}, {j}) outside [1, {self.n}]^2")
        return int(self.bits[i - 1, j - 1])

    def update(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"cell ({i}, {j}) outside [1, {self.n}]^2")
        self.bits[i - 1, j - 1] ^= 1
        return 1

    def copy(self) -> "DenseMatrix":
        return DenseMatrix(self.n, self.bits.copy())

    def rows(self) -> list:
        return ["".join(map(str, r)) for r in self.bits.tolist()]

    def __eq__(self, other):
        return (isinstance(other, DenseMatrix) and self.n == other.n
                and np.array_equal(self.bits, other.bits))


def dense_from_slabs(n: int, K) -> DenseMatrix:
    slabs = K.slabs if isinstance(K, SlabDecomposition) else [Slab(*s) for s in K]
    check_decomposition(SlabDecomposition(n, slabs))
    m = DenseMatrix(n)
    for a, b, c, d in slabs:
        m.bits[a - 1:b, c - 1:d] = 1
    return m


def _runs(col: np.ndarray) -> list:
    padded = np.concatenate(([0], col.astype(np.int8), [0]))
    edges = np.flatnonzero(np.diff(padded))
    return [Segment(int(lo) + 1, int(hi)) for lo, hi in zip(edges[::2], edges[1::2])]


def naive_strips(m: DenseMatrix, i: int) -> list:
    """Maximal all-ones row intervals of column i."""
    return _runs(m.bits[:, i - 1])


def naive_canonical(m: DenseMatrix) -> SlabDecomposition:
    """Group identical strips of adjacent columns into slabs."""
    out = []
    open_since: dict = {}
    for j in range(1, m.n + 1):
        current = set(naive_strips(m, j))
        for seg in [s for s in open_since if s not in current]:
            out.append(Slab(seg.lo, seg.hi, open_since.pop(seg), j - 1))
        for seg in current:
            if seg not in open_since:
                open_since[seg] = j
    for seg, start in open_since.items():
        out.append(Slab(seg.lo, seg.hi, start, m.n))
    return SlabDecomposition(m.n, out)


def count_corners(m: DenseMatrix) -> int:
    """2x2 zones whose two rows differ and whose two columns differ."""
    if m.n < 2:
        return 0
    x = m.bits
    row_diff = x[:-1, :] != x[1:, :]          # rows i, i+1 differ at column j
    col_diff = x[:, :-1] != x[:, 1:]          # columns j, j+1 differ at row i
    rows_differ = row_diff[:, :-1] | row_diff[:, 1:]
    cols_differ = col_diff[:-1, :] | col_diff[1:, :]
    return int(np.count_nonzero(rows_differ & cols_differ))


def f_d_constant(d: int) -> Fraction:
    return Fraction(16, 3) * (2 * d + 3) ** 2 * 2 ** (4 * (2 * d + 2))


# -- contraction sequences -----------------------------------------------------

class ContractionError(ValueError):
    pass


@dataclass
class ContractionSequence:
    """Merge steps; ("row", k) merges the k-th and (k+1)-th row blocks (1-based)."""
    n: int
    steps: list = field(default_factory=list)

    def __post_init__(self):
        self.steps = [(axis, int(k)) for axis, k in self.steps]

    def check(self) -> None:
        rows = cols = self.n
        for idx, (axis, k) in enumerate(self.steps):
            if axis == "row":
                if not 1 <= k < rows:
                    raise ContractionError(f"step {idx}: no row blocks {k}, {k + 1}")
                rows -= 1
            elif axis == "col":
                if not 1 <= k < cols:
                    raise ContractionError(f"step {idx}: no column blocks {k}, {k + 1}")
                cols -= 1
            else:
                raise ContractionError(f"step {idx}: unknown axis {axis!r}")
        if rows != 1 or cols != 1:
            raise ContractionError(
                f"sequence ends with {rows} row and {cols} column blocks, not 1 and 1")


MIXED = 2


def verify_contraction_width(m: DenseMatrix, seq: ContractionSequence) -> int:
    """Largest number of non-constant zones in any block at any step.

    Zone states (0, 1 or mixed) are merged pairwise as blocks merge, which is
    exact: a union of two zones is constant iff both are constant and equal.
    Rows and columns that were merged away are zeroed so they never count.
    """
    if seq.n != m.n:
        raise ContractionError(f"sequence is for n={seq.n}, matrix has n={m.n}")
    seq.check()
    n = m.n
    z = m.bits.astype(np.int8)
    row_alive = list(range(n))
    col_alive = list(range(n))
    row_cnt = np.zeros(n, dtype=np.int64)
    col_cnt = np.zeros(n, dtype=np.int64)
    width = 0
    for axis, k in seq.steps:
        if axis == "row":
            r1, r2 = row_alive[k - 1], row_alive.pop(k)
            a, b = z[r1], z[r2]
            merged = np.where(a == b, a, MIXED)
            mixed = merged == MIXED
            col_cnt += mixed
            col_cnt -= a == MIXED
            col_cnt -= b == MIXED
            z[r1] = merged
            z[r2] = 0
            row_cnt[r1] = np.count_nonzero(mixed)
            row_cnt[r2] = 0
            width = max(width, int(row_cnt[r1]), int(col_cnt.max()))
        else:
            c1, c2 = col_alive[k - 1], col_alive.pop(k)
            a, b = z[:, c1], z[:, c2]
            merged = np.where(a == b, a, MIXED)
            mixed = merged == MIXED
            row_cnt += mixed
            row_cnt -= a == MIXED
            row_cnt -= b == MIXED
            z[:, c1] = merged
            z[:, c2] = 0
            col_cnt[c1] = np.count_nonzero(mixed)
            col_cnt[c2] = 0
            width = max(width, int(col_cnt[c1]), int(row_cnt.max()))
    return width


def width_by_recount(m: DenseMatrix, seq: ContractionSequence) -> int:
    """Same quantity, recomputing every zone from the matrix at every step."""
    seq.check()
    n = m.n
    row_blocks = [[i] for i in range(n)]
    col_blocks = [[j] for j in range(n)]

    def current_width():
        w = 0
        mixed = [[False] * len(col_blocks) for _ in row_blocks]
        for r, R in enumerate(row_blocks):
            for c, C in enumerate(col_blocks):
                zone = m.bits[np.ix_(R, C)]
                mixed[r][c] = bool(zone.min() != zone.max())
        for r in range(len(row_blocks)):
            w = max(w, sum(mixed[r]))
        for c in range(len(col_blocks)):
            w = max(w, sum(mixed[r][c] for r in range(len(row_blocks))))
        return w

    width = current_width()
    for axis, k in seq.steps:
        blocks = row_blocks if axis == "row" else col_blocks
        blocks[k - 1] = blocks[k - 1] + blocks.pop(k)
        width = max(width, current_width())
    return width


# -- file formats ---------------------------------------------------------------

def parse_dense_text(text: str) -> DenseMatrix:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty dense file", 1)
    lineno, header = lines[0]
    try:
        n = int(header)
    except ValueError:
        raise ParseError("first line must be n", lineno) from None
    if n < 1:
        raise ParseError("n must be >= 1", lineno)
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} rows, found {len(lines) - 1}", lines[-1][0])
    rows = []
    for lineno, line in lines[1:]:
        if len(line) != n or set(line) - {"0", "1"}:
            raise ParseError(f"row must be {n} characters of 0/1", lineno)
        rows.append(line)
    return DenseMatrix.from_rows(rows)


def format_dense_text(m: DenseMatrix) -> str:
    return "\n".join([str(m.n)] + m.rows()) + "\n"


def parse_witness_text(text: str) -> ContractionSequence:
    """First line n, then one step per line: "R k" or "C k"."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty witness file", 1)
    lineno, header = lines[0]
    try:
        n = int(header)
    except ValueError:
        raise ParseError("first line must be n", lineno) from None
    steps = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2 or parts[0] not in ("R", "C"):
            raise ParseError("step must be 'R k' or 'C k'", lineno)
        try:
            k = int(parts[1])
        except ValueError:
            raise ParseError("block index must be an integer", lineno) from None
        steps.append(("row" if parts[0] == "R" else "col", k))
    return ContractionSequence(n, steps)


def format_witness_text(seq: ContractionSequence) -> str:
    body = [f"{'R' if axis == 'row' else 'C'} {k}" for axis, k in seq.steps]
    return "\n".join([str(seq.n)] + body) + "\n"
