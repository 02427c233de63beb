"""Mother codes with certifiable parameters, and the code file format.

Code files are plain text:

    p r c_0 ... c_r q n k
    g_11 ... g_1n
    ...
    g_k1 ... g_kn

with field entries as integer encodings. Generators are written in
their canonical reduced row echelon form.
"""
import logging
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from errors import (
    BadParameters,
    DuplicatePoints,
    EpsBiasError,
    ParseError,
    RankFailure,
    RankMismatch,
    TooLong,
)
from finite_field import FieldSpec, field_for_order, format_field_header, make_field
from linear_code import LinearCode
from matrix_fq import MatrixFq, rank
from seeding import make_rng
from transform_code import IndexSet, puncture

logger = logging.getLogger(__name__)

FAMILIES = ('rs', 'random', 'repetition', 'parity', 'simplex')
MAX_RANK_ATTEMPTS = 100


@dataclass(frozen=True)
class CodeFamilySpec:
    """Recipe for a mother code.

    Attributes:
        family: one of FAMILIES
        q: field order
        n: length (derived for simplex when omitted)
        k: dimension
        seed: seed of the random family
        eval_points: Reed-Solomon evaluation points as encodings
        puncture: positions deleted after construction
    """
    family: str
    q: int = 2
    n: int | None = None
    k: int | None = None
    seed: int = 0
    eval_points: tuple[int, ...] | None = None
    puncture: tuple[int, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise BadParameters(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.eval_points is not None:
            object.__setattr__(self, 'eval_points', tuple(int(v) for v in self.eval_points))
        object.__setattr__(self, 'puncture', tuple(int(v) for v in self.puncture))

    @classmethod
    def from_dict(cls, data: dict) -> 'CodeFamilySpec':
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise ParseError(f"unknown mother keys: {', '.join(unknown)}")
        return cls(**data)

    def to_dict(self) -> dict:
        out = asdict(self)
        out['eval_points'] = list(self.eval_points) if self.eval_points is not None else None
        out['puncture'] = list(self.puncture)
        return out

    def with_seed(self, seed: int) -> 'CodeFamilySpec':
        return CodeFamilySpec(self.family, self.q, self.n, self.k, seed,
                              self.eval_points, self.puncture)


def default_eval_points(field: FieldSpec, n: int) -> tuple[int, ...]:
    """Nonzero encodings 1..q-1, then 0, truncated to n."""
    return tuple(list(range(1, field.q)) + [0])[:n]


def reed_solomon(q: int, n: int, k: int, eval_points=None) -> LinearCode:
    """RS code in the evaluation basis: row i is (x_j ** i) over the points.

    Raises:
        TooLong: n > q
        DuplicatePoints: repeated evaluation points
        BadParameters: k outside [1, n] or points outside the field
    """
    field = field_for_order(q)
    if n > q:
        raise TooLong(f"Reed-Solomon length {n} exceeds field size {q}")
    if not 1 <= k <= n:
        raise BadParameters(f"need 1 <= k <= n, got k={k}, n={n}")
    points = default_eval_points(field, n) if eval_points is None else tuple(eval_points)
    if len(points) != n:
        raise BadParameters(f"{len(points)} evaluation points for length {n}")
    if len(set(points)) != n:
        raise DuplicatePoints(f"evaluation points {points} repeat")
    if not field.contains(points):
        raise BadParameters(f"evaluation points {points} outside {field}")
    points = np.array(points, dtype=np.int64)
    rows = [field.power(points, i) for i in range(k)]
    return LinearCode(MatrixFq(field, np.array(rows, dtype=np.int64).reshape(k, n)))


def random_linear(q: int, n: int, k: int, seed: int) -> LinearCode:
    """Uniform random generator matrix, resampled until it has rank k.

    Raises:
        BadParameters: k outside [1, n]
        RankFailure: MAX_RANK_ATTEMPTS draws were all rank deficient
    """
    if not 1 <= k <= n:
        raise BadParameters(f"need 1 <= k <= n, got k={k}, n={n}")
    field = field_for_order(q)
    rng = make_rng(seed)
    for attempt in range(MAX_RANK_ATTEMPTS):
        generator = MatrixFq(field, rng.integers(q, size=(k, n), dtype=np.int64))
        if rank(generator) == k:
            if attempt:
                logger.debug("Random generator reached rank %d after %d draws",
                             k, attempt + 1)
            return LinearCode(generator)
    raise RankFailure(f"no rank-{k} {k}x{n} matrix over F_{q} in {MAX_RANK_ATTEMPTS} draws")


def named_code(family: str, q: int = 2, n: int | None = None,
               k: int | None = None) -> LinearCode:
    """Repetition [n,1,n], parity [n,n-1,2] or binary simplex [2^k-1,k,2^(k-1)].

    Raises:
        BadParameters: parameters violate the family constraints
    """
    field = field_for_order(q)
    if family == 'repetition':
        if not n or n < 1:
            raise BadParameters("repetition code needs n >= 1")
        return LinearCode.from_rows(field, [[1] * n])
    if family == 'parity':
        if not n or n < 2:
            raise BadParameters("parity code needs n >= 2")
        minus_one = field.neg(1)
        rows = np.zeros((n - 1, n), dtype=np.int64)
        rows[np.arange(n - 1), np.arange(n - 1)] = 1
        rows[:, n - 1] = minus_one
        return LinearCode(MatrixFq(field, rows))
    if family == 'simplex':
        if q != 2:
            raise BadParameters(f"simplex codes are binary here, got q={q}")
        if not k or k < 1:
            raise BadParameters("simplex code needs k >= 1")
        if n is not None and n != 2 ** k - 1:
            raise BadParameters(f"simplex code of dimension {k} has length {2 ** k - 1}, not {n}")
        columns = np.arange(1, 2 ** k, dtype=np.int64)
        shifts = np.arange(k - 1, -1, -1, dtype=np.int64)
        return LinearCode(MatrixFq(field, (columns[None, :] >> shifts[:, None]) & 1))
    raise BadParameters(f"unknown named family {family!r}")


def build_mother(spec: CodeFamilySpec) -> LinearCode:
    """Construct the code a CodeFamilySpec describes, then puncture it."""
    if spec.family == 'rs':
        code = reed_solomon(spec.q, spec.n, spec.k, spec.eval_points)
    elif spec.family == 'random':
        code = random_linear(spec.q, spec.n, spec.k, spec.seed)
    else:
        code = named_code(spec.family, spec.q, spec.n, spec.k)
    if spec.puncture:
        code = puncture(code, IndexSet.explicit(code.n, spec.puncture))
    logger.debug("Built %s mother %r", spec.family, code)
    return code


# ----------------------------------------------------------------------
# Code files
# ----------------------------------------------------------------------

def format_code(code: LinearCode) -> str:
    """Text form of a code; the inverse of parse_code."""
    header = f"{format_field_header(code.field)} {code.q} {code.n} {code.k}"
    lines = [header] + [" ".join(str(v) for v in row) for row in code.generator.to_lists()]
    return "\n".join(lines) + "\n"


def _parse_ints(line: str, line_no: int, path) -> list[int]:
    values = []
    for column, token in enumerate(line.split(), start=1):
        try:
            values.append(int(token))
        except ValueError as e:
            raise ParseError(f"expected an integer, got {token!r}", path, line_no, column) from e
    return values


def parse_code(text: str, path=None) -> LinearCode:
    """Parse the code file format.

    Raises:
        ParseError: malformed header or rows, with line and column
        RankMismatch: the rows do not have rank k
    """
    lines = [line for line in text.splitlines()]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty code file", path, 1, 1)
    header = _parse_ints(lines[0], 1, path)
    if len(header) < 2:
        raise ParseError("header needs p and r", path, 1, len(header) + 1)
    p, r = header[0], header[1]
    expected = r + 6
    if r < 1 or len(header) != expected:
        raise ParseError(f"header needs {expected} integers, got {len(header)}",
                         path, 1, min(len(header), expected) + 1)
    modulus = header[2:r + 3]
    q, n, k = header[r + 3:]
    if q != p ** r:
        raise ParseError(f"q={q} is not p^r={p ** r}", path, 1, r + 4)
    if n < 1 or not 0 <= k <= n:
        raise ParseError(f"need n >= 1 and 0 <= k <= n, got n={n}, k={k}", path, 1, r + 5)
    try:
        field = make_field(p, r, modulus)
    except EpsBiasError as e:
        raise ParseError(f"invalid field: {e}", path, 1, 1) from e

    if len(lines) - 1 < k:
        raise ParseError(f"expected {k} generator rows, found {len(lines) - 1}",
                         path, len(lines) + 1, 1)
    if len(lines) - 1 > k:
        raise ParseError(f"unexpected content after {k} generator rows", path, k + 2, 1)
    rows = []
    for line_no, line in enumerate(lines[1:], start=2):
        values = _parse_ints(line, line_no, path)
        if len(values) != n:
            raise ParseError(f"expected {n} entries, got {len(values)}",
                             path, line_no, min(len(values), n) + 1)
        for column, value in enumerate(values, start=1):
            if not 0 <= value < q:
                raise ParseError(f"entry {value} outside [0, {q})", path, line_no, column)
        rows.append(values)
    generator = MatrixFq.from_rows(field, rows, n)
    found = rank(generator)
    if found != k:
        raise RankMismatch(f"{path or '<text>'}: generator has rank {found}, header says {k}")
    return LinearCode(generator)


def write_code(code: LinearCode, path) -> Path:
    """Write a code file, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_code(code), encoding='utf-8')
    logger.info("Wrote [%d, %d] code to %s", code.n, code.k, path)
    return path


def read_code(path) -> LinearCode:
    """Read a code file written by write_code."""
    path = Path(path)
    return parse_code(path.read_text(encoding='utf-8'), path)
