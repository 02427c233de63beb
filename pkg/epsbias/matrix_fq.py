"""Dense matrices over F_q: row reduction, rank, null space and products."""
import logging
from dataclasses import dataclass

import numpy as np

from errors import FieldMismatch, IndexOutOfRange
from finite_field import FieldSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MatrixFq:
    """Row-major matrix of field encodings.

    Attributes:
        field: field the entries belong to
        entries: int64 array of shape (rows, cols) holding encodings
    """
    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.int64)
        if entries.ndim != 2:
            raise ValueError(f"matrix entries must be 2-D, got {entries.ndim}-D")
        if not self.field.contains(entries):
            raise ValueError(f"matrix has entries outside {self.field}")
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixFq):
            return NotImplemented
        return (self.field == other.field
                and self.entries.shape == other.entries.shape
                and bool(np.array_equal(self.entries, other.entries)))

    def __hash__(self):
        return hash((self.field, self.entries.shape, self.entries.tobytes()))

    def to_lists(self) -> list[list[int]]:
        return self.entries.tolist()

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, cols: int | None = None) -> 'MatrixFq':
        """Build from a list of rows; cols is needed for an empty list."""
        rows = list(rows)
        if not rows:
            return cls(field, np.zeros((0, cols or 0), dtype=np.int64))
        return cls(field, np.array(rows, dtype=np.int64).reshape(len(rows), -1))


def zeros(field: FieldSpec, rows: int, cols: int) -> MatrixFq:
    return MatrixFq(field, np.zeros((rows, cols), dtype=np.int64))


def identity(field: FieldSpec, size: int) -> MatrixFq:
    return MatrixFq(field, np.eye(size, dtype=np.int64))


def field_matmul(field: FieldSpec, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Product of two encoding arrays over F_q.

    Prime fields use integer matmul followed by a reduction; extension
    fields accumulate one outer product per inner index.
    """
    left = np.asarray(left, dtype=np.int64)
    right = np.asarray(right, dtype=np.int64)
    if left.shape[1] != right.shape[0]:
        raise ValueError(f"shapes {left.shape} and {right.shape} do not align")
    if field.r == 1:
        return (left @ right) % field.p
    acc = np.zeros((left.shape[0], right.shape[1]), dtype=np.int64)
    for j in range(left.shape[1]):
        acc = field.add(acc, field.mul(left[:, j, None], right[None, j, :]))
    return np.asarray(acc, dtype=np.int64)


def matmul(a: MatrixFq, b: MatrixFq) -> MatrixFq:
    """a * b.

    Raises:
        FieldMismatch: a and b live over different fields
    """
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} and {b.field} differ")
    return MatrixFq(a.field, field_matmul(a.field, a.entries, b.entries))


def transpose(matrix: MatrixFq) -> MatrixFq:
    return MatrixFq(matrix.field, matrix.entries.T.copy())


def encode(matrix: MatrixFq, messages) -> np.ndarray:
    """Row vectors m * M for every message row m (shape (m, rows))."""
    messages = np.atleast_2d(np.asarray(messages, dtype=np.int64))
    if messages.shape[1] != matrix.rows:
        raise ValueError(
            f"messages of length {messages.shape[1]} for a {matrix.rows}-row matrix")
    if matrix.rows == 0:
        return np.zeros((messages.shape[0], matrix.cols), dtype=np.int64)
    return field_matmul(matrix.field, messages, matrix.entries)


@dataclass(frozen=True)
class RrefResult:
    """Reduced row echelon form with its rank and pivot columns."""
    reduced: MatrixFq
    rank: int
    pivots: tuple[int, ...]


def rref(matrix: MatrixFq) -> RrefResult:
    """Gauss-Jordan elimination with first-nonzero pivot selection.

    Returns:
        RrefResult whose reduced matrix is row-equivalent to the input,
        with pivots strictly increasing and pivot columns zero elsewhere
    """
    field = matrix.field
    work = np.array(matrix.entries, dtype=np.int64)
    n_rows, n_cols = work.shape
    pivots = []
    row = 0
    for col in range(n_cols):
        if row == n_rows:
            break
        candidates = np.nonzero(work[row:, col])[0]
        if candidates.size == 0:
            continue
        pivot_row = row + int(candidates[0])
        if pivot_row != row:
            work[[row, pivot_row]] = work[[pivot_row, row]]
        work[row] = field.mul(work[row], field.inv(int(work[row, col])))
        factors = work[:, col].copy()
        factors[row] = 0
        others = np.nonzero(factors)[0]
        if others.size:
            work[others] = field.sub(
                work[others], field.mul(factors[others, None], work[row][None, :]))
        pivots.append(col)
        row += 1
    return RrefResult(MatrixFq(field, work), row, tuple(pivots))


def rank(matrix: MatrixFq) -> int:
    return rref(matrix).rank


def nullspace(matrix: MatrixFq) -> MatrixFq:
    """Basis (as rows) of {x : M x^T = 0}, one row per free column."""
    field = matrix.field
    result = rref(matrix)
    n_cols = matrix.cols
    pivots = list(result.pivots)
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = np.zeros((len(free), n_cols), dtype=np.int64)
    if free:
        basis[np.arange(len(free)), free] = 1
        if pivots:
            reduced = result.reduced.entries[:result.rank]
            basis[:, pivots] = field.neg(reduced[:, free].T)
    return MatrixFq(field, basis)


def _check_columns(matrix: MatrixFq, columns) -> list[int]:
    columns = sorted(set(int(c) for c in columns))
    if columns and (columns[0] < 0 or columns[-1] >= matrix.cols):
        raise IndexOutOfRange(
            f"column indices {columns} outside [0, {matrix.cols})")
    return columns


def delete_columns(matrix: MatrixFq, columns) -> MatrixFq:
    """Copy of the matrix without the given columns."""
    drop = set(_check_columns(matrix, columns))
    keep = [c for c in range(matrix.cols) if c not in drop]
    return MatrixFq(matrix.field, matrix.entries[:, keep].copy())


def select_columns(matrix: MatrixFq, columns) -> MatrixFq:
    """Submatrix made of the given columns, in increasing order."""
    keep = _check_columns(matrix, columns)
    return MatrixFq(matrix.field, matrix.entries[:, keep].copy())


def vstack(top: MatrixFq, bottom: MatrixFq) -> MatrixFq:
    if top.field != bottom.field:
        raise FieldMismatch(f"{top.field} and {bottom.field} differ")
    return MatrixFq(top.field, np.vstack([top.entries, bottom.entries]))


def nonzero_rows(matrix: MatrixFq) -> MatrixFq:
    keep = np.any(matrix.entries != 0, axis=1)
    return MatrixFq(matrix.field, matrix.entries[keep].copy())


def row_space_equal(a: MatrixFq, b: MatrixFq) -> bool:
    """True when both matrices span the same row space."""
    if a.field != b.field or a.cols != b.cols:
        return False
    reduced_a = nonzero_rows(rref(a).reduced)
    reduced_b = nonzero_rows(rref(b).reduced)
    return reduced_a == reduced_b
