"""Unit tests for finite_field module."""
# pylint: skip-file
# pragma: no cover

import cmath
import itertools

import numpy as np
import pytest

from errors import (
    BadParameters,
    CompositeCharacteristic,
    DivisionByZero,
    FieldMismatch,
    ParseError,
    ReducibleModulus,
)
from finite_field import (
    arith,
    character,
    default_modulus,
    field_for_order,
    format_field_header,
    is_irreducible,
    make_field,
    parse_field_header,
    prime_power_decomposition,
    trace,
)

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


@pytest.fixture
def gf4():
    return make_field(2, 2)


@pytest.mark.parametrize("q, expected", [(2, (2, 1)), (9, (3, 2)), (256, (2, 8)), (49, (7, 2))])
def test_prime_power_decomposition(q, expected):
    """Test that prime powers split into characteristic and degree."""
    assert prime_power_decomposition(q) == expected


@pytest.mark.parametrize("q", [1, 6, 12, 100])
def test_prime_power_decomposition_rejects_composites(q):
    """Test that non prime powers raise CompositeCharacteristic."""
    with pytest.raises(CompositeCharacteristic):
        prime_power_decomposition(q)


def test_make_field_rejects_composite_characteristic():
    """Test that a composite characteristic is refused."""
    with pytest.raises(CompositeCharacteristic):
        make_field(4, 1)


def test_make_field_rejects_reducible_modulus():
    """Test that x^2 + 1 over F_2 is rejected as a modulus."""
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, [1, 0, 1])


def test_make_field_rejects_non_monic_modulus():
    """Test that a modulus of the wrong degree is rejected."""
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, [1, 1])


def test_make_field_rejects_huge_order():
    """Test that orders above 2**16 are refused."""
    with pytest.raises(BadParameters):
        make_field(2, 17)


def test_default_modulus_gf256_is_aes_polynomial():
    """Test that the smallest degree 8 irreducible is x^8+x^4+x^3+x+1."""
    assert default_modulus(2, 8) == (1, 1, 0, 1, 1, 0, 0, 0, 1)


def test_default_modulus_gf4():
    """Test that GF(4) uses x^2 + x + 1."""
    assert default_modulus(2, 2) == (1, 1, 1)
    assert is_irreducible([1, 1, 1], 2)


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustively(q):
    """Test associativity, commutativity and distributivity on every triple."""
    field = field_for_order(q)
    elements = field.elements()
    a, b, c = (arr.ravel() for arr in np.meshgrid(elements, elements, elements, indexing='ij'))
    assert np.array_equal(field.add(a, b), field.add(b, a))
    assert np.array_equal(field.mul(a, b), field.mul(b, a))
    assert np.array_equal(field.add(field.add(a, b), c), field.add(a, field.add(b, c)))
    assert np.array_equal(field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)))
    assert np.array_equal(field.mul(a, field.add(b, c)),
                          field.add(field.mul(a, b), field.mul(a, c)))


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_identities_and_inverses(q):
    """Test that 0 and 1 are identities and every nonzero element inverts."""
    field = field_for_order(q)
    elements = field.elements()
    nonzero = elements[1:]
    assert np.array_equal(field.add(elements, 0), elements)
    assert np.array_equal(field.mul(elements, 1), elements)
    assert np.all(field.add(elements, field.neg(elements)) == 0)
    assert np.all(field.mul(nonzero, field.inv(nonzero)) == 1)


def test_division_by_zero(gf4):
    """Test that inverting zero raises DivisionByZero."""
    with pytest.raises(DivisionByZero):
        gf4.inv(0)
    with pytest.raises(ZeroDivisionError):
        gf4.element(1) / gf4.element(0)


def test_power_matches_repeated_multiplication():
    """Test power against a multiplication loop, including exponent 0."""
    field = field_for_order(9)
    for a in range(9):
        value = 1
        for exponent in range(10):
            assert field.power(a, exponent) == value
            value = field.mul(value, a)


def test_negative_power_is_inverse_power():
    """Test that a^-2 equals (a^-1)^2."""
    field = field_for_order(16)
    for a in range(1, 16):
        assert field.power(a, -2) == field.power(field.inv(a), 2)


@pytest.mark.parametrize("q", [4, 8, 9, 27])
def test_trace_is_additive_and_in_prime_field(q):
    """Test that tr(a+b) = tr(a) + tr(b) and tr lands in F_p."""
    field = field_for_order(q)
    a, b = np.meshgrid(field.elements(), field.elements(), indexing='ij')
    a, b = a.ravel(), b.ravel()
    left = field.trace_of(field.add(a, b))
    right = (field.trace_of(a) + field.trace_of(b)) % field.p
    assert np.array_equal(left, right)
    assert np.all(field.trace_of(field.elements()) < field.p)


@pytest.mark.parametrize("q", [4, 8, 9, 25])
def test_trace_is_frobenius_invariant(q):
    """Test that sum of a^(p^i) over any r consecutive exponents is the trace."""
    field = field_for_order(q)
    elements = field.elements()
    expected = field.trace_of(elements)
    for start in range(3):
        assert np.array_equal(field.frobenius_trace(elements, start), expected)


def test_gf4_trace_values(gf4):
    """Test the trace table of GF(4) with alpha = x encoded as 2."""
    assert [trace(gf4.element(v)).value for v in range(4)] == [0, 0, 1, 1]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_nontrivial_character_sums_vanish(q):
    """Test that sum over x of chi_a(x) is zero for a != 0."""
    field = field_for_order(q)
    for a in range(1, q):
        total = sum(character(field.element(a), field.element(x)) for x in range(q))
        assert abs(total) < 1e-9


def test_binary_character_is_exact_integer():
    """Test that characteristic two gives +-1 integers."""
    field = field_for_order(8)
    values = {character(field.element(a), field.element(x))
              for a, x in itertools.product(range(1, 8), range(8))}
    assert values == {1, -1}
    assert all(isinstance(v, int) for v in values)


def test_odd_character_is_root_of_unity():
    """Test that chi_a(x)^p = 1 for p = 3."""
    field = field_for_order(9)
    value = character(field.element(2), field.element(5))
    assert abs(value ** 3 - 1) < 1e-9
    assert isinstance(value, complex)
    assert abs(abs(value) - 1) < 1e-12
    assert cmath.isclose(value, field.character_row(2)[5])


def test_character_table_shape_and_limit():
    """Test the cached (q-1, q) table and the size limit."""
    assert field_for_order(16).character_table().shape == (15, 16)
    with pytest.raises(BadParameters):
        field_for_order(512).character_table()


def test_arith_field_mismatch():
    """Test that elements from different fields cannot be combined."""
    a = field_for_order(4).element(1)
    b = field_for_order(8).element(1)
    with pytest.raises(FieldMismatch):
        arith(a, b, 'add')


def test_field_elem_operators(gf4):
    """Test the operator overloads on GF(4)."""
    alpha = gf4.element(2)
    one = gf4.element(1)
    assert (alpha * alpha).value == 3
    assert (alpha + one).value == 3
    assert (alpha - alpha).value == 0
    assert (-alpha).value == 2
    assert int(alpha / alpha) == 1
    assert alpha.coeffs == (0, 1)


def test_coefficient_round_trip():
    """Test that from_coeffs inverts to_coeffs on GF(27)."""
    field = field_for_order(27)
    for value in range(27):
        assert field.from_coeffs(field.to_coeffs(value)) == value


def test_field_header_round_trip():
    """Test that a serialised field reads back identically."""
    field = make_field(3, 2)
    assert parse_field_header(format_field_header(field)) == field


@pytest.mark.parametrize("text", ["2 2 1 1", "2 x 1 1 1", ""])
def test_parse_field_header_errors(text):
    """Test that malformed headers raise ParseError."""
    with pytest.raises(ParseError):
        parse_field_header(text)
