"""Linear codes over F_q with exact, enumeration-based parameters.

Codewords are enumerated as m*G for every message m, in chunks of
consecutive message indices. The message with index j has the base-q
digits of j as coordinates, most significant digit first, so index 0 is
the zero word. Chunks can be spread over a thread pool; their partial
results are reduced with max/min, which does not depend on scheduling.
"""
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from config import get_chunk_size, get_max_enum, get_workers
from errors import EnumerationCapExceeded, ZeroCode
from finite_field import CHARACTER_TABLE_LIMIT, FieldSpec
from matrix_fq import MatrixFq, encode, nonzero_rows, nullspace, rank, rref, select_columns

logger = logging.getLogger(__name__)

# relative tolerance on character-sum comparisons in fields with p > 2
FLOAT_TOLERANCE = 1e-9
# upper bound on the entries of one (chunk, q) count matrix
_COUNT_BUDGET = 1 << 22


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A k-dimensional subspace of F_q^n given by a generator matrix.

    The generator is canonicalised to reduced row echelon form with
    zero rows removed, so two codes compare equal exactly when they have
    the same row space.
    """
    generator: MatrixFq
    _cache: dict = dataclass_field(default_factory=dict, init=False,
                                   repr=False, compare=False)

    def __post_init__(self):
        canonical = nonzero_rows(rref(self.generator).reduced)
        object.__setattr__(self, 'generator', canonical)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, n: int | None = None) -> 'LinearCode':
        """Code spanned by the given rows (n is needed when rows is empty)."""
        return cls(MatrixFq.from_rows(field, rows, n))

    @property
    def field(self) -> FieldSpec:
        return self.generator.field

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self.generator.rows

    @property
    def rate(self) -> float:
        return self.k / self.n if self.n else 0.0

    @property
    def size(self) -> int:
        """Number of codewords q**k."""
        return self.q ** self.k

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.generator == other.generator

    def __hash__(self):
        return hash(self.generator)

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over {self.field})"


def zero_code(field: FieldSpec, n: int) -> LinearCode:
    """The [n, 0] code {0^n}."""
    return LinearCode.from_rows(field, [], n)


# ----------------------------------------------------------------------
# Enumeration
# ----------------------------------------------------------------------

def message_block(q: int, k: int, start: int, stop: int) -> np.ndarray:
    """Messages with indices start..stop-1 as rows of base-q digits."""
    indices = np.arange(start, stop, dtype=np.int64)
    if k == 0:
        return np.zeros((len(indices), 0), dtype=np.int64)
    place_values = np.array([q ** i for i in range(k - 1, -1, -1)], dtype=np.int64)
    return (indices[:, None] // place_values[None, :]) % q


def check_enumeration(code: LinearCode, cap: int | None = None) -> int:
    """Codeword count, after checking it against the enumeration cap.

    Raises:
        EnumerationCapExceeded: q**k is larger than the cap
    """
    cap = get_max_enum(cap)
    total = code.size
    if total > cap:
        raise EnumerationCapExceeded(total, cap)
    return total


def _chunk_bounds(code: LinearCode, total: int, chunk_size: int | None):
    size = get_chunk_size(chunk_size)
    # keep per-chunk count matrices bounded for large alphabets
    size = max(1, min(size, _COUNT_BUDGET // max(code.q, 1)))
    return [(start, min(start + size, total)) for start in range(0, total, size)]


def iter_codeword_chunks(code: LinearCode, cap: int | None = None,
                         chunk_size: int | None = None
                         ) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (first message index, codeword array) chunk by chunk."""
    total = check_enumeration(code, cap)
    for start, stop in _chunk_bounds(code, total, chunk_size):
        yield start, encode(code.generator, message_block(code.q, code.k, start, stop))


def enumerate_codewords(code: LinearCode, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every codeword exactly once, in message-index order.

    Raises:
        EnumerationCapExceeded: q**k is larger than the cap
    """
    for _, words in iter_codeword_chunks(code, cap):
        for word in words:
            yield tuple(int(v) for v in word)


def _map_chunks(code: LinearCode, worker: Callable, cap: int | None,
                workers: int | None, chunk_size: int | None = None) -> list:
    """Apply worker(start, words) to every chunk, results in chunk order."""
    total = check_enumeration(code, cap)
    bounds = _chunk_bounds(code, total, chunk_size)

    def run(bound):
        start, stop = bound
        words = encode(code.generator, message_block(code.q, code.k, start, stop))
        return worker(start, words)

    workers = get_workers(workers)
    logger.debug("Enumerating %d codewords in %d chunks on %d workers",
                 total, len(bounds), workers)
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(run, bounds))
    return [run(bound) for bound in bounds]


# ----------------------------------------------------------------------
# Character sums
# ----------------------------------------------------------------------

def symbol_counts(words: np.ndarray, q: int) -> np.ndarray:
    """(m, q) matrix counting each field element in each word."""
    words = np.atleast_2d(np.asarray(words, dtype=np.int64))
    m = words.shape[0]
    offsets = words + q * np.arange(m, dtype=np.int64)[:, None]
    return np.bincount(offsets.ravel(), minlength=m * q).reshape(m, q)


def max_character_sums(words, field: FieldSpec) -> np.ndarray:
    """max over a in F_q* of |sum_i omega^tr(a*x_i)| for every word.

    Exact integers when p = 2, floats otherwise.
    """
    counts = symbol_counts(words, field.q)
    if field.q <= CHARACTER_TABLE_LIMIT:
        sums = counts @ field.character_table().T
        return np.max(np.abs(sums), axis=1)
    best = np.zeros(counts.shape[0])
    for a in range(1, field.q):
        best = np.maximum(best, np.abs(counts @ field.character_row(a)))
    return best


def word_character_sum(x, field: FieldSpec):
    """max_a |sum_i omega^tr(a*x_i)| of a single word (int when p = 2)."""
    value = max_character_sums(np.asarray(x, dtype=np.int64)[None, :], field)[0]
    return int(value) if field.p == 2 else float(value)


def bias_of_word(x, field: FieldSpec) -> float:
    """Bias of a word: max_{a != 0} |sum_i omega^tr(a*x_i)| / n.

    For p = 2 this is |n - 2 wt(x)| / n computed from integers.
    """
    x = np.asarray(x, dtype=np.int64)
    if x.size == 0:
        raise ValueError("bias of an empty word is undefined")
    if not field.contains(x):
        raise ValueError(f"word has entries outside {field}")
    return word_character_sum(x, field) / len(x)


def exact_bias_of_word(x, field: FieldSpec) -> Fraction:
    """Bias as an exact fraction; binary fields only."""
    if field.p != 2:
        raise ValueError("exact biases are only available in characteristic 2")
    x = np.asarray(x, dtype=np.int64)
    return Fraction(word_character_sum(x, field), len(x))


def exact_epsilon(epsilon) -> Fraction:
    """epsilon as the rational its shortest decimal form denotes (0.6 -> 3/5).

    Fractions and integers are taken as they are.
    """
    if isinstance(epsilon, (Fraction, int)):
        return Fraction(epsilon)
    return Fraction(repr(float(epsilon)))


def epsilon_threshold(epsilon, n: int) -> int:
    """floor(epsilon * n), the largest binary character sum that is still eps-biased."""
    return math.floor(exact_epsilon(epsilon) * n)


def not_biased_mask(char_sums, n: int, epsilon, field: FieldSpec) -> np.ndarray:
    """Words whose max character sum exceeds epsilon*n.

    A word with bias exactly epsilon is eps-biased. Binary fields compare
    integers against epsilon_threshold; other fields allow 1e-9*n of slack.
    """
    char_sums = np.asarray(char_sums)
    if field.p == 2:
        return char_sums > epsilon_threshold(epsilon, n)
    return char_sums > epsilon * n + FLOAT_TOLERANCE * n


@dataclass(frozen=True)
class BiasReport:
    """Result of an exhaustive bias computation.

    Attributes:
        epsilon: max bias over nonzero codewords
        witness: first codeword (by message index) attaining epsilon
        message_index: message index of the witness
        max_char_sum: epsilon * n, exact for p = 2
        enumerated: number of codewords examined
        ceps_size: |C_eps| for the queried eps, None when none was given
        queried_epsilon: the eps the ceps_size refers to
    """
    epsilon: float
    witness: tuple[int, ...]
    message_index: int
    max_char_sum: float
    enumerated: int
    ceps_size: int | None = None
    queried_epsilon: float | None = None

    def exact_epsilon(self, n: int) -> Fraction:
        """epsilon as a Fraction (meaningful when p = 2)."""
        return Fraction(int(self.max_char_sum), n)


def bias_of_code(code: LinearCode, epsilon=None, cap: int | None = None,
                 workers: int | None = None) -> BiasReport:
    """Exact bias of a code by enumerating all nonzero codewords.

    Args:
        code: code of dimension at least one
        epsilon: optional threshold; when given, |C_epsilon| is counted too
        cap: enumeration cap override
        workers: thread count for chunk processing

    Raises:
        ZeroCode: k = 0
        EnumerationCapExceeded: q**k is larger than the cap
    """
    if code.k == 0:
        raise ZeroCode("bias of the zero code is undefined")
    field, n = code.field, code.n

    def worker(start, words):
        sums = max_character_sums(words, field)
        if start == 0:
            sums = sums.copy()
            sums[0] = -1
        best = int(np.argmax(sums))
        bad = None
        if epsilon is not None:
            bad = int(np.count_nonzero(not_biased_mask(sums, n, epsilon, field)))
        return sums[best], start + best, tuple(int(v) for v in words[best]), bad

    results = _map_chunks(code, worker, cap, workers)
    best_sum, best_index, witness, _ = results[0]
    for value, index, word, _ in results[1:]:
        if value > best_sum:
            best_sum, best_index, witness = value, index, word
    ceps = None
    if epsilon is not None:
        ceps = sum(r[3] for r in results)
    max_sum = int(best_sum) if field.p == 2 else float(best_sum)
    report = BiasReport(epsilon=max_sum / n, witness=witness,
                        message_index=best_index, max_char_sum=max_sum,
                        enumerated=code.size, ceps_size=ceps,
                        queried_epsilon=epsilon)
    logger.debug("Bias of %r is %.6f (witness index %d)", code,
                 report.epsilon, best_index)
    return report


def not_eps_biased_set(code: LinearCode, epsilon, cap: int | None = None) -> list[tuple[int, ...]]:
    """C_epsilon: nonzero codewords whose bias exceeds epsilon, in message order.

    The zero word is never included.
    """
    field, n = code.field, code.n
    found = []
    for start, words in iter_codeword_chunks(code, cap):
        mask = not_biased_mask(max_character_sums(words, field), n, epsilon, field)
        if start == 0 and len(mask):
            mask[0] = False
        found.extend(tuple(int(v) for v in word) for word in words[mask])
    return found


# ----------------------------------------------------------------------
# Distances
# ----------------------------------------------------------------------

def weight_distribution(code: LinearCode, cap: int | None = None,
                        workers: int | None = None) -> np.ndarray:
    """A_w for w = 0..n: the number of codewords of each Hamming weight."""
    n = code.n

    def worker(_, words):
        return np.bincount(np.count_nonzero(words, axis=1), minlength=n + 1)

    return np.sum(_map_chunks(code, worker, cap, workers), axis=0)


def distance(code: LinearCode, cap: int | None = None,
             workers: int | None = None) -> int:
    """Minimum weight of a nonzero codeword (cached per code).

    Raises:
        ZeroCode: k = 0
        EnumerationCapExceeded: q**k is larger than the cap
    """
    if 'distance' in code._cache:
        return code._cache['distance']
    if code.k == 0:
        raise ZeroCode("distance of the zero code is undefined")
    n = code.n

    def worker(start, words):
        weights = np.count_nonzero(words, axis=1)
        if start == 0:
            weights[0] = n + 1
        return int(weights.min())

    value = min(_map_chunks(code, worker, cap, workers))
    code._cache['distance'] = value
    return value


def dual(code: LinearCode) -> LinearCode:
    """C-perp, generated by a null-space basis of the generator."""
    return LinearCode(nullspace(code.generator))


def _smallest_dependent_columns(code: LinearCode, cap: int) -> int:
    """Size of the smallest linearly dependent set of generator columns."""
    budget = cap
    for size in range(1, code.k + 2):
        combos = math.comb(code.n, size)
        if combos > budget:
            raise EnumerationCapExceeded(combos, budget)
        budget -= combos
        for columns in itertools.combinations(range(code.n), size):
            if rank(select_columns(code.generator, columns)) < size:
                return size
    return code.k + 1


def dual_distance(code: LinearCode, cap: int | None = None,
                  workers: int | None = None) -> int:
    """Minimum distance of the dual code (cached per code).

    Enumerates C-perp when q**(n-k) fits the cap, and otherwise looks for
    the smallest dependent set of generator columns.

    Raises:
        ZeroCode: the dual is the zero code (k = n)
        EnumerationCapExceeded: neither strategy fits the cap
    """
    if 'dual_distance' in code._cache:
        return code._cache['dual_distance']
    if code.k == code.n:
        raise ZeroCode("dual of the full space is the zero code")
    cap = get_max_enum(cap)
    if code.q ** (code.n - code.k) <= cap:
        value = distance(dual(code), cap, workers)
    else:
        logger.debug("Dual of %r too large to enumerate; searching columns", code)
        value = _smallest_dependent_columns(code, cap)
    code._cache['dual_distance'] = value
    return value


def relative_distance(code: LinearCode, cap: int | None = None) -> float:
    return distance(code, cap) / code.n


def relative_dual_distance(code: LinearCode, cap: int | None = None) -> float:
    return dual_distance(code, cap) / code.n


# ----------------------------------------------------------------------
# Empirical distributions
# ----------------------------------------------------------------------

def empirical_distribution(x, field: FieldSpec) -> np.ndarray:
    """Emp_x(t) = |{i : x_i = t}| / n for every t in F_q."""
    x = np.asarray(x, dtype=np.int64)
    if x.size == 0:
        raise ValueError("empirical distribution of an empty word is undefined")
    return np.bincount(x, minlength=field.q) / len(x)


@dataclass(frozen=True)
class UniformityCheck:
    """Outcome of testing the uniformity-implies-small-bias lemma on a word."""
    condition_holds: bool
    epsilon: float
    bias: float
    implication_holds: bool


def uniformity_implies_bias_check(x, field: FieldSpec, epsilon: float | None = None) -> UniformityCheck:
    """Test "Emp_x(t) <= 1/q + eps/(2(q-1)) for all t  =>  x is eps-biased".

    Without an explicit epsilon the smallest candidate
    eps = 2(q-1)(max_t Emp_x(t) - 1/q) is used, so the condition holds.
    """
    q = field.q
    emp = empirical_distribution(x, field)
    peak = float(emp.max())
    if epsilon is None:
        epsilon = max(0.0, 2 * (q - 1) * (peak - 1 / q))
    condition = peak <= 1 / q + epsilon / (2 * (q - 1)) + FLOAT_TOLERANCE
    bias = bias_of_word(x, field)
    implication = (not condition) or bias <= epsilon + FLOAT_TOLERANCE
    return UniformityCheck(condition, float(epsilon), bias, implication)

