"""Small hand-checked instances shared by the tests."""
from slabmatrix.core import Slab

# 5x5 example: five disjoint slabs and the matrix they cover
QUERY_EX_N = 5
QUERY_EX_K = [Slab(1, 1, 2, 3), Slab(1, 2, 5, 5), Slab(3, 3, 2, 4), Slab(4, 5, 1, 3), Slab(4, 5, 5, 5)]
QUERY_EX_ROWS = ["01101", "00001", "01110", "11101", "11101"]

# 4x4 sweep example with its bucket and strip-delta tables
SWEEP_EX_N = 4
SWEEP_EX_K = [Slab(2, 2, 1, 3), Slab(3, 3, 2, 4), Slab(4, 4, 1, 4), Slab(1, 1, 4, 4)]
SWEEP_EX_ROWS = ["0001", "1110", "0111", "1111"]
SWEEP_EX_O = {1: {(2, 2), (4, 4)}, 2: {(3, 3)}, 3: set(), 4: {(1, 1)}}
SWEEP_EX_C = {1: set(), 2: set(), 3: {(2, 2)}, 4: {(1, 1), (3, 3), (4, 4)}}
SWEEP_EX_B = {1: {(2, 2), (4, 4)}, 2: set(), 3: {(2, 4)}, 4: {(1, 1), (3, 4)}}
ASSEMBLY_EX_A = {1: {(2, 2), (4, 4)}, 2: {(2, 4)}, 3: set(), 4: {(1, 1), (3, 4)}}
ASSEMBLY_EX_R = {Slab(2, 2, 1, 1), Slab(4, 4, 1, 1), Slab(2, 4, 2, 3), Slab(1, 1, 4, 4), Slab(3, 4, 4, 4)}
# slab_start after the A-events of round i, before the B-events (0 for unset)
ASSEMBLY_EX_SLAB_START = {1: [0, 1, 0, 1], 2: [0, 2, 0, 0], 3: [0, 2, 0, 0], 4: [4, 0, 4, 0]}

# rebuild example: previous slabs, three flips, and the canonical result
REBUILD_EX_N = 5
REBUILD_EX_P = [Slab(3, 5, 1, 2), Slab(3, 4, 3, 3), Slab(1, 2, 4, 4), Slab(5, 5, 4, 4), Slab(4, 5, 5, 5)]
REBUILD_EX_LEFT_ROWS = ["00010", "00010", "11100", "11101", "11011"]
REBUILD_EX_FLIPS = [(1, 2), (4, 4), (5, 2)]
REBUILD_EX_R = {Slab(1, 1, 2, 2), Slab(1, 2, 4, 4), Slab(3, 5, 1, 1), Slab(3, 4, 2, 3), Slab(4, 5, 4, 5)}
REBUILD_EX_RIGHT_ROWS = ["01010", "00010", "11100", "11111", "10011"]

# two canonical examples: matrices and their canonical slabs
CANON_EXAMPLES = [
    (["11111", "01011", "11000", "11111", "10000"],
     {Slab(1, 1, 1, 1), Slab(3, 5, 1, 1), Slab(1, 4, 2, 2), Slab(1, 1, 3, 3),
      Slab(4, 4, 3, 5), Slab(1, 2, 4, 5)}),
    (["01100", "01100", "11110", "11110", "00000"],
     {Slab(3, 4, 1, 1), Slab(1, 4, 2, 3), Slab(3, 4, 4, 4)}),
]

# 5x5 contraction example; merges as (axis, 1-based block index)
WIDTH_EX_ROWS = ["01111", "00001", "11100", "11101", "10011"]
WIDTH_EX_MERGES_LITERAL = [("row", 3), ("col", 2), ("row", 1), ("col", 3), ("col", 1),
                       ("col", 1), ("row", 1), ("row", 1)]
WIDTH_EX_MERGES_WIDTH2 = [("row", 3), ("col", 2), ("row", 1), ("col", 3), ("col", 1),
                      ("row", 1), ("col", 1), ("row", 1)]
