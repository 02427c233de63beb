"""Puncturing and shortening of linear codes, and the samplers choosing where.

Shortening sets come from a uniform sampler (partial Fisher-Yates) or
from a random walk on a seeded constant-degree expander. Both are pure
functions of their seed.
"""
import logging
import math
from dataclasses import dataclass, asdict
from fractions import Fraction

import numpy as np

from errors import (
    BadParameters,
    ExpansionNotAchieved,
    IndexOutOfRange,
    ParseError,
    SizeTooLarge,
    WalkStalled,
    ZeroCode,
)
from linear_code import LinearCode
from matrix_fq import MatrixFq, delete_columns, encode, nullspace, select_columns, transpose
from seeding import derive_seed, make_rng

logger = logging.getLogger(__name__)

LAMBDA_THRESHOLD = 0.9
MAX_EXPANDER_ATTEMPTS = 100
POWER_ITERATION_TOL = 1e-6
POWER_ITERATION_MAX_STEPS = 10_000
WALK_STEP_FACTOR = 50
WALK_MODES = ('distinct', 'steps')


@dataclass(frozen=True)
class Provenance:
    """How an index set was produced."""
    kind: str = 'explicit'
    seed: int | None = None
    degree: int | None = None
    mode: str | None = None
    lambda2: float | None = None

    def to_dict(self) -> dict:
        return {key: value for key, value in asdict(self).items() if value is not None}


@dataclass(frozen=True)
class IndexSet:
    """A set S (or P) of positions in [0, n), stored in increasing order."""
    n: int
    indices: tuple[int, ...]
    provenance: Provenance = Provenance()

    def __post_init__(self):
        indices = tuple(sorted(int(i) for i in self.indices))
        if len(set(indices)) != len(indices):
            raise IndexOutOfRange(f"repeated positions in {indices}")
        if indices and (indices[0] < 0 or indices[-1] >= self.n):
            raise IndexOutOfRange(f"positions {indices} outside [0, {self.n})")
        if len(indices) >= self.n and self.n > 0:
            raise SizeTooLarge(f"{len(indices)} positions leave nothing of length {self.n}")
        object.__setattr__(self, 'indices', indices)

    @classmethod
    def explicit(cls, n: int, indices) -> 'IndexSet':
        return cls(n, tuple(indices))

    @property
    def size(self) -> int:
        return len(self.indices)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, position) -> bool:
        return position in self.indices


def _check_length(code: LinearCode, positions: IndexSet) -> None:
    if positions.n != code.n:
        raise IndexOutOfRange(
            f"index set for length {positions.n} applied to length {code.n}")


# ----------------------------------------------------------------------
# Transforms
# ----------------------------------------------------------------------

def puncture(code: LinearCode, positions: IndexSet) -> LinearCode:
    """C^(P): delete the coordinates in P from every codeword.

    Raises:
        ZeroCode: the punctured generator has rank zero
        IndexOutOfRange: P does not fit the code length
    """
    _check_length(code, positions)
    punctured = LinearCode(delete_columns(code.generator, positions.indices))
    if punctured.k == 0:
        raise ZeroCode(f"puncturing {positions.size} positions leaves the zero code")
    if punctured.k < code.k:
        logger.debug("Puncturing dropped the dimension from %d to %d",
                     code.k, punctured.k)
    return punctured


def shorten(code: LinearCode, positions: IndexSet) -> LinearCode:
    """C^[S]: keep codewords vanishing on S, then delete S.

    The messages m with (mG)|_S = 0 form the null space of G_S^T, so this
    never enumerates codewords. A zero-dimensional result is returned
    as is (and logged).
    """
    _check_length(code, positions)
    if positions.size == 0:
        return code
    generator = code.generator
    restricted = select_columns(generator, positions.indices)
    messages = nullspace(transpose(restricted))
    words = MatrixFq(code.field, encode(generator, messages.entries).reshape(-1, code.n))
    shortened = LinearCode(delete_columns(words, positions.indices))
    if shortened.k == 0:
        logger.warning("Shortening %d of %d positions produced the zero code",
                       positions.size, code.n)
    return shortened


def hits(positions: IndexSet, word) -> bool:
    """True when S meets the support of the word."""
    word = np.asarray(word)
    if len(word) != positions.n:
        raise IndexOutOfRange(f"word of length {len(word)} for an index set on {positions.n}")
    return any(word[i] != 0 for i in positions.indices)


def hits_all(positions: IndexSet, words) -> bool:
    """True when every word is hit; vacuously true for no words."""
    return all(hits(positions, word) for word in words)


# ----------------------------------------------------------------------
# Samplers
# ----------------------------------------------------------------------

def sample_uniform(n: int, s: int, seed: int) -> IndexSet:
    """Uniform s-subset of [0, n) by a partial Fisher-Yates shuffle.

    Raises:
        SizeTooLarge: s >= n
        BadParameters: s < 0
    """
    if s < 0:
        raise BadParameters(f"subset size must be non-negative, got {s}")
    if s >= n:
        raise SizeTooLarge(f"cannot pick {s} of {n} positions and keep any")
    rng = make_rng(seed)
    order = np.arange(n)
    for i in range(s):
        j = int(rng.integers(i, n))
        order[i], order[j] = order[j], order[i]
    return IndexSet(n, tuple(int(v) for v in order[:s]), Provenance('uniform', seed=seed))


@dataclass(frozen=True, eq=False)
class ExpanderGraph:
    """Seeded d-regular multigraph with its measured spectral certificate.

    Attributes:
        n: number of vertices
        degree: regularity d
        adjacency: (n, d) neighbour table
        lambda2: second largest absolute eigenvalue of adjacency / d
        seed: seed of the accepted attempt
    """
    n: int
    degree: int
    adjacency: np.ndarray
    lambda2: float
    seed: int

    def neighbours(self, vertex: int) -> np.ndarray:
        return self.adjacency[vertex]


def _matching_graph(n: int, degree: int, seed: int) -> np.ndarray:
    """Union of degree/2 seeded perfect matchings, each edge listed twice.

    Every matching pairs consecutive positions of a seeded shuffle; with
    n odd the last position of the shuffle gets a self-loop instead.
    """
    rng = make_rng(seed)
    adjacency = np.empty((n, degree), dtype=np.int64)
    paired = n - n % 2
    for t in range(degree // 2):
        order = rng.permutation(n)
        partner = np.empty(n, dtype=np.int64)
        partner[order[0:paired:2]] = order[1:paired:2]
        partner[order[1:paired:2]] = order[0:paired:2]
        if n % 2:
            partner[order[-1]] = order[-1]
        adjacency[:, 2 * t] = partner
        adjacency[:, 2 * t + 1] = partner
    return adjacency


def second_eigenvalue(adjacency: np.ndarray, seed: int = 0,
                      tol: float = POWER_ITERATION_TOL) -> float:
    """Power iteration on the normalised adjacency, deflated by the ones vector.

    Returns the norm-ratio estimate of the largest absolute eigenvalue on
    the complement of the constant vector.
    """
    rng = make_rng(seed)
    x = rng.standard_normal(adjacency.shape[0])
    x -= x.mean()
    norm = np.linalg.norm(x)
    if norm == 0:
        return 0.0
    x /= norm
    estimate = 0.0
    for _ in range(POWER_ITERATION_MAX_STEPS):
        y = x[adjacency].mean(axis=1)
        y -= y.mean()
        new_estimate = float(np.linalg.norm(y))
        if new_estimate == 0:
            return 0.0
        x = y / new_estimate
        if abs(new_estimate - estimate) < tol:
            return new_estimate
        estimate = new_estimate
    logger.warning("Power iteration stopped before reaching tolerance %g", tol)
    return estimate


def build_expander(n: int, degree: int, seed: int) -> ExpanderGraph:
    """Seeded random d-regular multigraph with lambda2 <= 0.9.

    Attempts use seeds seed, seed+1, ... until the measured lambda2 is
    at most LAMBDA_THRESHOLD.

    Raises:
        BadParameters: degree odd, below 8, or larger than n
        ExpansionNotAchieved: no attempt in MAX_EXPANDER_ATTEMPTS qualified
    """
    if degree % 2 or degree < 8:
        raise BadParameters(f"expander degree must be even and >= 8, got {degree}")
    if n < degree:
        raise BadParameters(f"expander needs n >= degree, got n={n}, degree={degree}")
    for attempt in range(MAX_EXPANDER_ATTEMPTS):
        attempt_seed = seed + attempt
        adjacency = _matching_graph(n, degree, attempt_seed)
        lambda2 = second_eigenvalue(adjacency, attempt_seed)
        if lambda2 <= LAMBDA_THRESHOLD:
            logger.debug("Expander on %d vertices accepted at seed %d (lambda2=%.4f)",
                         n, attempt_seed, lambda2)
            return ExpanderGraph(n, degree, adjacency, lambda2, attempt_seed)
    raise ExpansionNotAchieved(
        f"no {degree}-regular graph on {n} vertices reached lambda2 <= "
        f"{LAMBDA_THRESHOLD} in {MAX_EXPANDER_ATTEMPTS} attempts")


def sample_expander_walk(n: int, s: int, degree: int, seed: int,
                         graph: ExpanderGraph | None = None,
                         mode: str = 'distinct') -> IndexSet:
    """Index set read off a random walk on a seeded expander.

    Args:
        n: ambient length
        s: target number of positions
        degree: expander degree
        seed: seed of the walk (and of the graph when none is passed)
        graph: prebuilt expander to reuse across walks
        mode: 'distinct' walks until s distinct vertices are seen;
            'steps' visits exactly s vertices and keeps the distinct ones

    Raises:
        SizeTooLarge: s >= n
        BadParameters: s < 1 or unknown mode
        WalkStalled: 'distinct' mode needed more than 50*s steps
    """
    if mode not in WALK_MODES:
        raise BadParameters(f"walk mode must be one of {WALK_MODES}, got {mode!r}")
    if s < 1:
        raise BadParameters(f"walk needs s >= 1, got {s}")
    if s >= n:
        raise SizeTooLarge(f"cannot pick {s} of {n} positions and keep any")
    if graph is None:
        graph = build_expander(n, degree, seed)
    elif graph.n != n:
        raise BadParameters(f"graph on {graph.n} vertices used for length {n}")
    rng = make_rng(seed)
    vertex = int(rng.integers(n))
    visited = {vertex}
    step_cap = WALK_STEP_FACTOR * s
    choices = rng.integers(graph.degree, size=step_cap)
    steps = 0
    if mode == 'distinct':
        while len(visited) < s:
            if steps == step_cap:
                raise WalkStalled(f"{len(visited)} of {s} vertices after {step_cap} steps")
            vertex = int(graph.adjacency[vertex, choices[steps]])
            visited.add(vertex)
            steps += 1
    else:
        for steps in range(s - 1):
            vertex = int(graph.adjacency[vertex, choices[steps]])
            visited.add(vertex)
    provenance = Provenance('expander', seed=seed, degree=graph.degree,
                            mode=mode, lambda2=graph.lambda2)
    return IndexSet(n, tuple(visited), provenance)


# ----------------------------------------------------------------------
# Pipeline
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PipelineResult:
    """Intermediate and final codes of a shorten-then-puncture run."""
    shortened: LinearCode
    shortening: IndexSet
    puncturing: IndexSet
    code: LinearCode


def run_pipeline(code: LinearCode, s_count: int, p_count: int, seed: int,
                 shortening: IndexSet | None = None,
                 puncturing: IndexSet | None = None) -> PipelineResult:
    """Random s-shortening followed by a random p-puncturing.

    Explicit sets override the sampled ones. The puncturing set is drawn
    with derive_seed(seed, 1) on the shortened length.

    Raises:
        SizeTooLarge: s_count + p_count >= n
        ZeroCode: the shortened code is zero
    """
    if s_count + p_count >= code.n:
        raise SizeTooLarge(
            f"shortening {s_count} and puncturing {p_count} of {code.n} positions")
    if shortening is None:
        shortening = sample_uniform(code.n, s_count, seed)
    shortened = shorten(code, shortening)
    if shortened.k == 0:
        raise ZeroCode("shortening produced the zero code; nothing left to puncture")
    if puncturing is None:
        puncturing = sample_uniform(shortened.n, p_count, derive_seed(seed, 1))
    final = puncture(shortened, puncturing) if puncturing.size else shortened
    logger.debug("Pipeline [%d,%d] -> [%d,%d] -> [%d,%d]", code.n, code.k,
                 shortened.n, shortened.k, final.n, final.k)
    return PipelineResult(shortened, shortening, puncturing, final)


def shorten_then_puncture(code: LinearCode, s_count: int, p_count: int, seed: int,
                          shortening: IndexSet | None = None,
                          puncturing: IndexSet | None = None) -> LinearCode:
    """Final code of run_pipeline, of length n - s_count - p_count."""
    return run_pipeline(code, s_count, p_count, seed, shortening, puncturing).code


def exact_miss_fraction(n: int, w: int, s: int) -> Fraction:
    """Fraction of s-subsets of [n] avoiding a fixed support of size w."""
    if not 0 <= w <= n or not 0 <= s <= n:
        raise BadParameters(f"need 0 <= w, s <= n, got n={n}, w={w}, s={s}")
    return Fraction(math.comb(n - w, s), math.comb(n, s))


# ----------------------------------------------------------------------
# Serialisation
# ----------------------------------------------------------------------

def format_index_set(positions: IndexSet) -> str:
    """'n s i_1 ... i_s' with ascending positions."""
    return " ".join(str(v) for v in (positions.n, positions.size, *positions.indices))


def parse_index_set(text: str, path=None) -> IndexSet:
    """Inverse of format_index_set; the result has explicit provenance.

    Raises:
        ParseError: malformed text
    """
    tokens = text.split()
    values = []
    for column, token in enumerate(tokens, start=1):
        try:
            values.append(int(token))
        except ValueError as e:
            raise ParseError(f"expected an integer, got {token!r}", path, 1, column) from e
    if len(values) < 2 or len(values) != values[1] + 2:
        raise ParseError("index set needs n, s and s positions", path, 1, len(values) + 1)
    try:
        return IndexSet.explicit(values[0], values[2:])
    except ValueError as e:
        raise ParseError(str(e), path, 1, 3) from e
