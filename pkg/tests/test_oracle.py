import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slabmatrix.core import DecompositionError, ParseError, Segment
from slabmatrix.oracle import (ContractionError, ContractionSequence, DenseMatrix,
                               count_corners, dense_from_slabs, f_d_constant,
                               format_dense_text, format_witness_text, naive_canonical,
                               naive_strips, parse_dense_text, parse_witness_text,
                               verify_contraction_width, width_by_recount)
from fixtures import (WIDTH_EX_MERGES_LITERAL, WIDTH_EX_MERGES_WIDTH2, WIDTH_EX_ROWS, QUERY_EX_K, QUERY_EX_ROWS,
                      SWEEP_EX_K, SWEEP_EX_ROWS, ASSEMBLY_EX_R)
from strategies import dense_matrices


def test_dense_from_slabs():
    assert dense_from_slabs(4, SWEEP_EX_K).rows() == SWEEP_EX_ROWS
    assert dense_from_slabs(5, QUERY_EX_K).rows() == QUERY_EX_ROWS
    assert not dense_from_slabs(3, []).bits.any()
    with pytest.raises(DecompositionError):
        dense_from_slabs(3, [(1, 2, 1, 2), (2, 3, 2, 3)])


def test_naive_strips():
    col = [0, 1, 1, 0, 1, 0, 1, 1, 1]
    m = DenseMatrix(9, np.array([col] * 9, dtype=np.uint8).T)
    assert naive_strips(m, 1) == [Segment(2, 3), Segment(5, 5), Segment(7, 9)]
    assert naive_strips(DenseMatrix(4), 2) == []
    assert naive_strips(DenseMatrix(4, np.ones((4, 4))), 3) == [Segment(1, 4)]


def test_naive_canonical_examples():
    assert naive_canonical(dense_from_slabs(4, SWEEP_EX_K)).as_set() == ASSEMBLY_EX_R
    assert len(naive_canonical(DenseMatrix(6))) == 0


@settings(max_examples=100, deadline=None)
@given(dense_matrices(max_n=32))
def test_naive_canonical_round_trip(m):
    dec = naive_canonical(m)
    assert dense_from_slabs(m.n, dec) == m


def test_corner_examples():
    assert count_corners(DenseMatrix.from_rows(["01", "11"])) == 1
    assert count_corners(DenseMatrix.from_rows(["11", "00"])) == 0
    assert count_corners(DenseMatrix.from_rows(SWEEP_EX_ROWS)) == 4
    assert count_corners(DenseMatrix.from_rows(["1"])) == 0


@given(dense_matrices(max_n=10, min_n=2))
def test_corners_match_scan(m):
    x = m.bits
    want = 0
    for i, j in itertools.product(range(m.n - 1), repeat=2):
        z = x[i:i + 2, j:j + 2]
        if (z[0] != z[1]).any() and (z[:, 0] != z[:, 1]).any():
            want += 1
    assert count_corners(m) == want


def test_f_d_values():
    assert f_d_constant(1) == Fraction(26214400, 3)
    assert f_d_constant(0) == Fraction(16, 3) * 9 * 2 ** 8 == 12288
    assert f_d_constant(2) > f_d_constant(1)


def test_width_example_width():
    m = DenseMatrix.from_rows(WIDTH_EX_ROWS)
    # the literal merge order reaches width 3 at its
    # seventh step; exchanging its sixth and seventh merges keeps width 2
    assert verify_contraction_width(m, ContractionSequence(5, WIDTH_EX_MERGES_LITERAL)) == 3
    assert verify_contraction_width(m, ContractionSequence(5, WIDTH_EX_MERGES_WIDTH2)) == 2


def test_zero_matrix_and_identity():
    seq = ContractionSequence(4, [("row", 1)] * 3 + [("col", 1)] * 3)
    assert verify_contraction_width(DenseMatrix(4), seq) == 0
    eye = DenseMatrix.from_rows(["10", "01"])
    for steps in ([("row", 1), ("col", 1)], [("col", 1), ("row", 1)]):
        assert verify_contraction_width(eye, ContractionSequence(2, steps)) >= 1


@pytest.mark.parametrize("steps", [
    [("row", 1)],
    [("row", 2), ("col", 1)],
    [("row", 0), ("col", 1)],
    [("diag", 1), ("col", 1)],
    [("row", 1), ("row", 1), ("col", 1)],
])
def test_malformed_sequences(steps):
    with pytest.raises(ContractionError):
        verify_contraction_width(DenseMatrix(2), ContractionSequence(2, steps))


@st.composite
def matrix_and_sequence(draw):
    m = draw(dense_matrices(max_n=8))
    rows = cols = m.n
    steps = []
    while rows > 1 or cols > 1:
        axis = draw(st.sampled_from(["row"] * (rows > 1) + ["col"] * (cols > 1)))
        if axis == "row":
            steps.append(("row", draw(st.integers(1, rows - 1))))
            rows -= 1
        else:
            steps.append(("col", draw(st.integers(1, cols - 1))))
            cols -= 1
    return m, ContractionSequence(m.n, steps)


@settings(max_examples=100, deadline=None)
@given(matrix_and_sequence())
def test_incremental_width_matches_recount(case):
    m, seq = case
    assert verify_contraction_width(m, seq) == width_by_recount(m, seq)


def test_dense_text_round_trip():
    m = DenseMatrix.from_rows(QUERY_EX_ROWS)
    assert parse_dense_text(format_dense_text(m)) == m
    with pytest.raises(ParseError):
        parse_dense_text("2\n01\n2x\n")
    with pytest.raises(ParseError):
        parse_dense_text("3\n010\n")


def test_witness_text_round_trip():
    seq = ContractionSequence(5, WIDTH_EX_MERGES_WIDTH2)
    back = parse_witness_text(format_witness_text(seq))
    assert back.n == 5 and back.steps == seq.steps
    with pytest.raises(ParseError):
        parse_witness_text("3\nX 1\n")
