"""Test suite for matrix_fq module."""
# pylint: skip-file
# pragma: no cover

import numpy as np
import pytest

from errors import FieldMismatch, IndexOutOfRange
from finite_field import field_for_order
from matrix_fq import (
    MatrixFq,
    delete_columns,
    encode,
    identity,
    matmul,
    nullspace,
    rank,
    row_space_equal,
    rref,
    select_columns,
    transpose,
    vstack,
    zeros,
)


def random_matrix(q, rows, cols, seed):
    field = field_for_order(q)
    rng = np.random.default_rng(seed)
    return MatrixFq(field, rng.integers(q, size=(rows, cols)))


class TestMatrixFq:
    """Tests for the MatrixFq container."""

    def test_entries_are_copied_and_read_only(self):
        """Test that the caller's array is not frozen or aliased."""
        source = np.array([[1, 0], [0, 1]])
        matrix = MatrixFq(field_for_order(2), source)
        source[0, 0] = 0
        assert matrix.entries[0, 0] == 1
        assert not matrix.entries.flags.writeable

    def test_rejects_out_of_field_entries(self):
        """Test that encodings >= q are refused."""
        with pytest.raises(ValueError):
            MatrixFq(field_for_order(3), [[0, 3]])

    def test_equality_and_hash(self):
        """Test value equality between identical matrices."""
        field = field_for_order(5)
        a = MatrixFq.from_rows(field, [[1, 2], [3, 4]])
        b = MatrixFq.from_rows(field, [[1, 2], [3, 4]])
        assert a == b
        assert hash(a) == hash(b)

    def test_empty_from_rows_keeps_width(self):
        """Test that an empty row list needs and keeps the column count."""
        matrix = MatrixFq.from_rows(field_for_order(2), [], 5)
        assert (matrix.rows, matrix.cols) == (0, 5)


@pytest.mark.parametrize("q", [2, 3, 4, 9])
def test_rref_is_reduced_and_row_equivalent(q):
    """Test pivot structure and row-space preservation of rref."""
    for seed in range(5):
        matrix = random_matrix(q, 4, 7, seed)
        result = rref(matrix)
        reduced = result.reduced.entries
        assert list(result.pivots) == sorted(result.pivots)
        for row, col in enumerate(result.pivots):
            column = reduced[:, col]
            assert column[row] == 1
            assert np.count_nonzero(column) == 1
        assert np.all(reduced[result.rank:] == 0)
        assert row_space_equal(matrix, result.reduced)


@pytest.mark.parametrize("q", [2, 3, 4, 8])
def test_rank_plus_nullity_is_width(q):
    """Test that rank + dim null space equals the column count."""
    for seed in range(5):
        matrix = random_matrix(q, 3, 6, seed)
        kernel = nullspace(matrix)
        assert rank(matrix) + kernel.rows == matrix.cols
        product = matmul(matrix, transpose(kernel))
        assert np.all(product.entries == 0)


def test_rank_of_identity_and_zero():
    """Test the two extreme ranks."""
    field = field_for_order(7)
    assert rank(identity(field, 4)) == 4
    assert rank(zeros(field, 3, 4)) == 0
    assert nullspace(zeros(field, 2, 3)) == identity(field, 3)


def test_matmul_extension_field_against_scalar_loop():
    """Test the GF(4) accumulation against a direct triple loop."""
    field = field_for_order(4)
    a = random_matrix(4, 3, 5, 11)
    b = random_matrix(4, 5, 2, 12)
    expected = np.zeros((3, 2), dtype=np.int64)
    for i in range(3):
        for j in range(2):
            acc = 0
            for t in range(5):
                acc = field.add(acc, field.mul(int(a.entries[i, t]), int(b.entries[t, j])))
            expected[i, j] = acc
    assert np.array_equal(matmul(a, b).entries, expected)


def test_matmul_field_mismatch():
    """Test that matrices over different fields cannot be multiplied."""
    with pytest.raises(FieldMismatch):
        matmul(identity(field_for_order(2), 2), identity(field_for_order(3), 2))
    with pytest.raises(FieldMismatch):
        vstack(identity(field_for_order(2), 2), identity(field_for_order(3), 2))


def test_encode_binary_messages():
    """Test m*G over F_2 for the [3,2] parity generator."""
    field = field_for_order(2)
    generator = MatrixFq.from_rows(field, [[1, 0, 1], [0, 1, 1]])
    words = encode(generator, [[0, 0], [1, 0], [0, 1], [1, 1]])
    assert words.tolist() == [[0, 0, 0], [1, 0, 1], [0, 1, 1], [1, 1, 0]]


def test_encode_checks_message_length():
    """Test that messages must match the row count."""
    generator = identity(field_for_order(2), 3)
    with pytest.raises(ValueError):
        encode(generator, [[1, 0]])


def test_column_selection_and_deletion():
    """Test that selecting and deleting columns partition the matrix."""
    matrix = random_matrix(5, 2, 6, 3)
    kept = delete_columns(matrix, [1, 4])
    chosen = select_columns(matrix, [4, 1])
    assert kept.cols == 4
    assert np.array_equal(chosen.entries, matrix.entries[:, [1, 4]])
    assert np.array_equal(kept.entries, matrix.entries[:, [0, 2, 3, 5]])


def test_column_index_out_of_range():
    """Test that column indices outside the matrix raise IndexOutOfRange."""
    matrix = identity(field_for_order(2), 3)
    with pytest.raises(IndexOutOfRange):
        delete_columns(matrix, [3])
    with pytest.raises(IndexOutOfRange):
        select_columns(matrix, [-1])
