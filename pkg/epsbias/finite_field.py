"""Exact arithmetic in GF(p^r), the field trace and additive characters.

Elements are stored as integer encodings: the coefficient vector
(c_0, ..., c_{r-1}) of the polynomial basis maps to sum(c_i * p**i).
Encoding 0 is the additive identity and encoding 1 the multiplicative one.

Multiplication goes through exp/log tables over a primitive element, and
addition through a digit table, so every FieldSpec method accepts numpy
arrays of encodings as well as plain ints.
"""
import cmath
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from errors import (
    BadParameters,
    CompositeCharacteristic,
    DivisionByZero,
    FieldMismatch,
    ParseError,
    ReducibleModulus,
)

logger = logging.getLogger(__name__)

MAX_FIELD_ORDER = 2 ** 16
# character tables are materialised as (q-1) x q arrays up to this order
CHARACTER_TABLE_LIMIT = 256


def is_prime(value: int) -> bool:
    """Trial-division primality test (field characteristics are small)."""
    if value < 2:
        return False
    if value % 2 == 0:
        return value == 2
    factor = 3
    while factor * factor <= value:
        if value % factor == 0:
            return False
        factor += 2
    return True


def prime_power_decomposition(q: int) -> tuple[int, int]:
    """Split q = p**r with p prime.

    Raises:
        CompositeCharacteristic: if q is not a prime power
    """
    if q < 2:
        raise CompositeCharacteristic(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    if not is_prime(p):
        raise CompositeCharacteristic(f"{q} is not a prime power")
    r, rest = 0, q
    while rest % p == 0:
        rest //= p
        r += 1
    if rest != 1:
        raise CompositeCharacteristic(f"{q} is not a prime power")
    return p, r


# ----------------------------------------------------------------------
# Polynomials over F_p, coefficient lists with the constant term first
# ----------------------------------------------------------------------

def _trim(poly: list[int]) -> list[int]:
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def poly_remainder(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a divided by the monic polynomial b over F_p."""
    rem = _trim([c % p for c in a])
    deg_b = len(b) - 1
    while len(rem) - 1 >= deg_b and any(rem):
        shift = len(rem) - 1 - deg_b
        lead = rem[-1]
        for i, coeff in enumerate(b):
            rem[shift + i] = (rem[shift + i] - lead * coeff) % p
        _trim(rem)
        if len(rem) - 1 < deg_b:
            break
    return rem


def _monic_polynomials(degree: int, p: int):
    """All monic polynomials of a degree, ordered by lower-coefficient encoding."""
    for code in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(code % p)
            code //= p
        yield coeffs + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Check a monic polynomial for factors of degree at most deg/2."""
    degree = len(poly) - 1
    if degree < 1:
        return False
    for factor_degree in range(1, degree // 2 + 1):
        for factor in _monic_polynomials(factor_degree, p):
            if not any(poly_remainder(poly, factor, p)):
                return False
    return True


def default_modulus(p: int, r: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree r over F_p.

    Candidates are ordered by the integer encoding of their lower
    coefficients, so degree 1 gives x and GF(2^8) gives x^8+x^4+x^3+x+1.
    """
    for candidate in _monic_polynomials(r, p):
        if is_irreducible(candidate, p):
            return tuple(candidate)
    raise ReducibleModulus(f"no irreducible polynomial of degree {r} over F_{p}")


def _mulmod(a: np.ndarray, b: np.ndarray, modulus: np.ndarray,
            p: int) -> np.ndarray:
    """Product of two length-r coefficient vectors modulo the modulus."""
    r = len(modulus) - 1
    product = np.convolve(a, b) % p
    for top in range(len(product) - 1, r - 1, -1):
        lead = product[top]
        if lead:
            product[top - r:top + 1] = (
                product[top - r:top + 1] - lead * modulus) % p
    out = np.zeros(r, dtype=np.int64)
    out[:min(r, len(product))] = product[:r]
    return out


# ----------------------------------------------------------------------
# Tables
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class _FieldTables:
    digits: np.ndarray      # (q, r) coefficient vectors
    powers: np.ndarray      # (r,) p**i
    exp: np.ndarray         # (2(q-1),) g**i
    log: np.ndarray         # (q,) discrete log, log[0] unused
    neg: np.ndarray         # (q,)
    trace: np.ndarray       # (q,) values in [0, p)


@lru_cache(maxsize=None)
def _build_tables(p: int, r: int, modulus: tuple[int, ...]) -> _FieldTables:
    q = p ** r
    powers = np.array([p ** i for i in range(r)], dtype=np.int64)
    codes = np.arange(q, dtype=np.int64)
    digits = (codes[:, None] // powers[None, :]) % p
    neg = ((-digits) % p) @ powers
    mod_vec = np.array(modulus, dtype=np.int64)

    exp_list = _primitive_power_sequence(p, r, mod_vec, digits, powers)
    exp = np.array(exp_list + exp_list, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    log[np.array(exp_list, dtype=np.int64)] = np.arange(q - 1)

    trace = np.zeros(q, dtype=np.int64)
    for i in range(r):
        conjugates = _power_table(codes, p ** i, exp, log, q)
        trace = (((digits[trace] + digits[conjugates]) % p) @ powers)
    if np.any(trace >= p):
        raise ReducibleModulus("trace left the prime field; modulus is invalid")
    logger.debug("Built tables for GF(%d^%d)", p, r)
    return _FieldTables(digits, powers, exp, log, neg, trace)


def _primitive_power_sequence(p, r, modulus, digits, powers) -> list[int]:
    """Powers g^0 .. g^(q-2) of the first primitive element found."""
    q = p ** r
    if q == 2:
        return [1]
    first = p if r > 1 else 2
    candidates = [first] + [c for c in range(2, q) if c != first]
    for candidate in candidates:
        g = digits[candidate]
        current = digits[1].copy()
        sequence = [1]
        for _ in range(q - 2):
            current = _mulmod(current, g, modulus, p)
            code = int(current @ powers)
            if code == 1:
                break
            sequence.append(code)
        if len(sequence) == q - 1:
            return sequence
    raise ReducibleModulus("multiplicative group is not cyclic; modulus is invalid")


def _power_table(codes, exponent, exp, log, q):
    out = exp[(log[codes] * exponent) % (q - 1)]
    return np.where(codes == 0, 0, out)


# ----------------------------------------------------------------------
# Public types
# ----------------------------------------------------------------------

def _as_result(value):
    array = np.asarray(value)
    if array.ndim == 0:
        return int(array)
    return array


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^r) described by its characteristic, degree and modulus.

    Attributes:
        p: prime characteristic
        r: extension degree
        modulus: monic irreducible polynomial, constant term first
    """
    p: int
    r: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        """Field cardinality p**r."""
        return self.p ** self.r

    @property
    def tables(self) -> _FieldTables:
        """Arithmetic tables (built once per field and cached)."""
        return _build_tables(self.p, self.r, self.modulus)

    def __str__(self) -> str:
        return f"GF({self.p}^{self.r})" if self.r > 1 else f"F_{self.p}"

    def contains(self, value) -> bool:
        """True when every encoding lies in [0, q)."""
        array = np.asarray(value)
        return bool(np.all((array >= 0) & (array < self.q)))

    def elements(self) -> np.ndarray:
        """All encodings 0 .. q-1."""
        return np.arange(self.q, dtype=np.int64)

    def element(self, value: int) -> 'FieldElem':
        """Wrap an encoding as a FieldElem."""
        return FieldElem(self, int(value))

    def to_coeffs(self, value: int) -> tuple[int, ...]:
        """Polynomial-basis coefficients of an encoding."""
        return tuple(int(c) for c in self.tables.digits[int(value)])

    def from_coeffs(self, coeffs) -> int:
        """Encoding of a coefficient vector."""
        return int(sum((int(c) % self.p) * self.p ** i
                       for i, c in enumerate(coeffs)))

    def add(self, a, b):
        """a + b for encodings or arrays of encodings."""
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return _as_result(np.bitwise_xor(a, b))
        digits = self.tables.digits
        return _as_result(((digits[a] + digits[b]) % self.p) @ self.tables.powers)

    def neg(self, a):
        """Additive inverse."""
        return _as_result(self.tables.neg[np.asarray(a, dtype=np.int64)])

    def sub(self, a, b):
        """a - b."""
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        """a * b."""
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        tables = self.tables
        product = tables.exp[tables.log[a] + tables.log[b]]
        return _as_result(np.where((a == 0) | (b == 0), 0, product))

    def inv(self, a):
        """Multiplicative inverse.

        Raises:
            DivisionByZero: if any input is zero
        """
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero(f"zero has no inverse in {self}")
        tables = self.tables
        return _as_result(tables.exp[(self.q - 1 - tables.log[a]) % (self.q - 1)])

    def div(self, a, b):
        """a / b."""
        return self.mul(a, self.inv(b))

    def power(self, a, exponent: int):
        """a ** exponent (negative exponents need a nonzero base)."""
        a = np.asarray(a, dtype=np.int64)
        if exponent < 0:
            return self.power(self.inv(a), -exponent)
        tables = self.tables
        out = tables.exp[(tables.log[a] * exponent) % (self.q - 1)]
        zero_base = 0 if exponent > 0 else 1
        return _as_result(np.where(a == 0, zero_base, out))

    def trace_of(self, a):
        """Field trace tr: F_q -> F_p, values as prime-field encodings."""
        return _as_result(self.tables.trace[np.asarray(a, dtype=np.int64)])

    def frobenius_trace(self, a, start: int = 0):
        """sum_{i=start}^{start+r-1} a^(p^i), computed from scratch."""
        total = np.zeros_like(np.asarray(a, dtype=np.int64))
        for i in range(start, start + self.r):
            total = self.add(total, self.power(a, self.p ** i))
        return _as_result(total)

    def roots_of_unity(self) -> np.ndarray:
        """omega^t for t in F_p; exact +-1 integers when p = 2."""
        if self.p == 2:
            return np.array([1, -1], dtype=np.int64)
        return np.exp(2j * np.pi * np.arange(self.p) / self.p)

    def character_row(self, a: int) -> np.ndarray:
        """Values omega^tr(a*t) for every t in F_q."""
        t = self.trace_of(self.mul(a, self.elements()))
        return self.roots_of_unity()[t]

    def character_table(self) -> np.ndarray:
        """(q-1, q) table of omega^tr(a*t) for a in F_q* and t in F_q.

        Only built for q <= CHARACTER_TABLE_LIMIT; larger fields should
        iterate character_row instead.
        """
        if self.q > CHARACTER_TABLE_LIMIT:
            raise BadParameters(
                f"character table of {self} is too large; use character_row")
        return _character_table(self.p, self.r, self.modulus)


@lru_cache(maxsize=None)
def _character_table(p: int, r: int, modulus: tuple[int, ...]) -> np.ndarray:
    field = FieldSpec(p, r, modulus)
    return np.stack([field.character_row(a) for a in range(1, field.q)])


@dataclass(frozen=True)
class FieldElem:
    """A single element of a FieldSpec, with operator overloads."""
    field: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"encoding {self.value} outside {self.field}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Polynomial-basis coefficients, constant term first."""
        return self.field.to_coeffs(self.value)

    def __add__(self, other):
        return arith(self, other, 'add')

    def __sub__(self, other):
        return arith(self, other, 'sub')

    def __mul__(self, other):
        return arith(self, other, 'mul')

    def __truediv__(self, other):
        return arith(self, other, 'div')

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __int__(self):
        return self.value


# ----------------------------------------------------------------------
# Operations
# ----------------------------------------------------------------------

def make_field(p: int, r: int = 1, modulus=None) -> FieldSpec:
    """Build GF(p^r), validating or choosing the modulus.

    Args:
        p: prime characteristic
        r: extension degree, at least 1
        modulus: optional monic polynomial of degree r, constant term first

    Returns:
        FieldSpec with the given or the default modulus

    Raises:
        CompositeCharacteristic: p is not prime
        ReducibleModulus: modulus is not monic irreducible of degree r
        BadParameters: r < 1 or p**r exceeds 2**16
    """
    if not is_prime(p):
        raise CompositeCharacteristic(f"characteristic {p} is not prime")
    if r < 1:
        raise BadParameters(f"extension degree must be >= 1, got {r}")
    if p ** r > MAX_FIELD_ORDER:
        raise BadParameters(f"field order {p}^{r} exceeds {MAX_FIELD_ORDER}")
    if modulus is None:
        modulus = default_modulus(p, r)
    else:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise ReducibleModulus(f"modulus {modulus} is not monic of degree {r}")
        if any(not 0 <= c < p for c in modulus):
            raise ReducibleModulus(f"modulus {modulus} has coefficients outside F_{p}")
        if not is_irreducible(list(modulus), p):
            raise ReducibleModulus(f"modulus {modulus} is reducible over F_{p}")
    return FieldSpec(p, r, modulus)


def field_for_order(q: int) -> FieldSpec:
    """Default field of order q (a prime power)."""
    p, r = prime_power_decomposition(q)
    return make_field(p, r)


def arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Apply add, sub, mul or div to two elements of the same field.

    Raises:
        FieldMismatch: operands come from different fields
        DivisionByZero: division by zero
    """
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} and {b.field} differ")
    operations = {
        'add': a.field.add,
        'sub': a.field.sub,
        'mul': a.field.mul,
        'div': a.field.div,
    }
    if op not in operations:
        raise ValueError(f"unknown operation {op!r}")
    return FieldElem(a.field, operations[op](a.value, b.value))


def trace(x: FieldElem) -> FieldElem:
    """tr(x) as an element of the prime subfield (encoding < p)."""
    return FieldElem(x.field, x.field.trace_of(x.value))


def character(a: FieldElem, x: FieldElem):
    """omega^tr(a*x) with omega = exp(2 pi i / p); an int +-1 when p = 2."""
    if a.field != x.field:
        raise FieldMismatch(f"{a.field} and {x.field} differ")
    field = a.field
    t = field.trace_of(field.mul(a.value, x.value))
    if field.p == 2:
        return -1 if t else 1
    return cmath.exp(2j * cmath.pi * t / field.p)


def format_field_header(field: FieldSpec) -> str:
    """Serialise a field as 'p r c_0 ... c_r'."""
    return " ".join(str(v) for v in (field.p, field.r, *field.modulus))


def parse_field_header(text: str) -> FieldSpec:
    """Inverse of format_field_header.

    Raises:
        ParseError: wrong token count or non-integer tokens
    """
    tokens = text.split()
    try:
        values = [int(t) for t in tokens]
    except ValueError as e:
        raise ParseError(f"non-integer token in field header: {e}",
                         line=1) from e
    if len(values) < 3 or len(values) != values[1] + 3:
        raise ParseError("field header needs p, r and r+1 modulus coefficients",
                         line=1, column=len(values) + 1)
    return make_field(values[0], values[1], values[2:])
