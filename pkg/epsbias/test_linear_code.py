"""Unit tests for linear_code module."""
# pylint: skip-file
# pragma: no cover

import itertools
from fractions import Fraction

import numpy as np
import pytest

from bounds import johnson_ceps_bound
from errors import EnumerationCapExceeded, ZeroCode
from finite_field import field_for_order
from linear_code import (
    LinearCode,
    bias_of_code,
    bias_of_word,
    dual,
    dual_distance,
    empirical_distribution,
    enumerate_codewords,
    epsilon_threshold,
    exact_bias_of_word,
    exact_epsilon,
    message_block,
    not_eps_biased_set,
    distance,
    uniformity_implies_bias_check,
    weight_distribution,
    zero_code,
)
from mother_codes import named_code, random_linear, reed_solomon
from seeding import derive_seed, make_rng

F2 = field_for_order(2)


@pytest.fixture
def parity3():
    return LinearCode.from_rows(F2, [[1, 1, 0], [0, 1, 1]])


def brute_force_bias(code):
    return max(bias_of_word(word, code.field)
               for word in enumerate_codewords(code) if any(word))


class TestCanonicalForm:
    """Tests for LinearCode construction."""

    def test_same_row_space_compares_equal(self, parity3):
        """Test that two generators of one code give equal codes."""
        other = LinearCode.from_rows(F2, [[1, 0, 1], [0, 1, 1]])
        assert parity3 == other
        assert hash(parity3) == hash(other)

    def test_dependent_rows_are_dropped(self):
        """Test that k is the rank, not the row count."""
        code = LinearCode.from_rows(F2, [[1, 1, 0], [1, 1, 0], [0, 0, 0]])
        assert (code.n, code.k) == (3, 1)

    def test_parameters(self, parity3):
        """Test n, k, rate and size of the parity code."""
        assert (parity3.n, parity3.k, parity3.size) == (3, 2, 4)
        assert parity3.rate == pytest.approx(2 / 3)


def test_message_block_is_most_significant_digit_first():
    """Test message ordering by base-q digits."""
    assert message_block(2, 3, 0, 4).tolist() == [[0, 0, 0], [0, 0, 1], [0, 1, 0], [0, 1, 1]]
    assert message_block(3, 2, 7, 9).tolist() == [[2, 1], [2, 2]]


def test_enumerate_codewords_in_message_order(parity3):
    """Test that every codeword appears once, starting with zero."""
    words = list(enumerate_codewords(parity3))
    assert words == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]


def test_enumeration_cap(parity3):
    """Test that q**k above the cap raises EnumerationCapExceeded."""
    with pytest.raises(EnumerationCapExceeded) as raised:
        bias_of_code(parity3, cap=3)
    assert raised.value.required == 4
    assert raised.value.cap == 3


def test_parity_code_bias_is_one_third(parity3):
    """Test the bias of the [3,2] parity code and its witness."""
    report = bias_of_code(parity3)
    assert report.exact_epsilon(3) == Fraction(1, 3)
    assert report.epsilon == pytest.approx(1 / 3)
    assert report.witness == (0, 1, 1)
    assert report.message_index == 1
    assert report.enumerated == 4


def test_repetition_code_bias_is_one():
    """Test that the all-ones word has bias one."""
    report = bias_of_code(named_code('repetition', 2, 5))
    assert report.epsilon == 1.0


def test_simplex_code_is_one_over_n_biased():
    """Test that every nonzero simplex codeword has bias 1/7."""
    code = named_code('simplex', 2, k=3)
    assert bias_of_code(code).exact_epsilon(7) == Fraction(1, 7)
    assert weight_distribution(code).tolist() == [1, 0, 0, 0, 7, 0, 0, 0]


def test_zero_code_has_no_bias():
    """Test that the zero code is rejected."""
    with pytest.raises(ZeroCode):
        bias_of_code(zero_code(F2, 4))
    with pytest.raises(ZeroCode):
        distance(zero_code(F2, 4))


@pytest.mark.parametrize("q, n, k", [(2, 8, 3), (3, 6, 3), (4, 5, 2), (5, 4, 2)])
def test_bias_matches_brute_force(q, n, k):
    """Test bias_of_code against a per-word maximum."""
    for seed in range(3):
        code = random_linear(q, n, k, seed)
        assert bias_of_code(code).epsilon == pytest.approx(brute_force_bias(code), abs=1e-12)


@pytest.mark.parametrize("q, n, k", [(2, 9, 4), (3, 5, 3)])
def test_distance_and_weights_match_brute_force(q, n, k):
    """Test distance and weight distribution against direct counting."""
    code = random_linear(q, n, k, 7)
    weights = [sum(1 for v in word if v) for word in enumerate_codewords(code)]
    assert distance(code) == min(w for w in weights if w)
    assert weight_distribution(code).tolist() == np.bincount(weights, minlength=n + 1).tolist()


def test_chunked_threaded_enumeration_is_deterministic(monkeypatch):
    """Test that chunk size and worker count do not change the result."""
    code = random_linear(3, 7, 4, 1)
    single = bias_of_code(code, epsilon=0.4, workers=1)
    monkeypatch.setenv('EPSBIAS_CHUNK_SIZE', '5')
    threaded = bias_of_code(code, epsilon=0.4, workers=2)
    assert threaded == single
    assert distance(random_linear(3, 7, 4, 1), workers=2) == distance(code)


def test_ceps_respects_exact_threshold(parity3):
    """Test C_eps at eps just below and exactly at the bias."""
    assert not_eps_biased_set(parity3, 0.5) == []
    assert not_eps_biased_set(parity3, Fraction(1, 3)) == []
    assert not_eps_biased_set(parity3, 0.3) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert bias_of_code(parity3, epsilon=0.3).ceps_size == 3


def test_ceps_never_contains_zero_word():
    """Test that the zero word is excluded even at eps = 0."""
    code = named_code('parity', 2, 4)
    words = not_eps_biased_set(code, 0.0)
    assert (0, 0, 0, 0) not in words
    assert words == [(1, 1, 1, 1)]


def test_dual_of_parity_is_repetition(parity3):
    """Test dual() and the dual distance of the parity code."""
    assert dual(parity3) == named_code('repetition', 2, 3)
    assert dual_distance(parity3) == 3


def test_dual_distance_column_search_agrees_with_enumeration():
    """Test both dual distance strategies on the MDS code RS[7,3] over F_8."""
    enumerated = dual_distance(reed_solomon(8, 7, 3))
    searched = dual_distance(reed_solomon(8, 7, 3), cap=1000)
    assert enumerated == searched == 4


def test_dual_distance_of_full_space_is_undefined():
    """Test that k = n has no dual distance."""
    code = LinearCode.from_rows(F2, np.eye(3, dtype=int))
    with pytest.raises(ZeroCode):
        dual_distance(code)


def test_exact_bias_of_word():
    """Test a binary word bias as a fraction."""
    assert exact_bias_of_word([1, 1, 0], F2) == Fraction(1, 3)
    assert bias_of_word([0, 0, 0, 0], F2) == 1.0


def test_empirical_distribution():
    """Test symbol frequencies of a ternary word."""
    field = field_for_order(3)
    assert empirical_distribution([0, 2, 2, 1], field).tolist() == [0.25, 0.25, 0.5]


@pytest.mark.parametrize("q, n", [(2, 6), (3, 4), (4, 3)])
def test_uniformity_implies_small_bias_on_all_words(q, n):
    """Test the uniformity lemma on every word of a small space."""
    field = field_for_order(q)
    for word in itertools.product(range(q), repeat=n):
        check = uniformity_implies_bias_check(word, field)
        assert check.condition_holds
        assert check.implication_holds


def test_uniformity_condition_can_fail():
    """Test that an explicit small epsilon may violate the premise."""
    check = uniformity_implies_bias_check([1, 1, 1, 0], F2, epsilon=0.1)
    assert not check.condition_holds
    assert check.implication_holds


class TestBiasExactlyEpsilon:
    """Tests that a word whose bias equals eps is eps-biased."""

    def test_decimal_epsilon_is_read_exactly(self):
        """Test that 0.6 and 0.3 become 3/5 and 3/10."""
        assert exact_epsilon(0.6) == Fraction(3, 5)
        assert exact_epsilon(np.float64(0.3)) == Fraction(3, 10)
        assert exact_epsilon(Fraction(1, 3)) == Fraction(1, 3)
        assert epsilon_threshold(0.6, 5) == 3
        assert epsilon_threshold(0.3, 20) == 6

    def test_single_weight_one_word(self):
        """Test the code spanned by 10000, whose bias is exactly 0.6."""
        code = LinearCode.from_rows(F2, [[1, 0, 0, 0, 0]])
        assert bias_of_word([1, 0, 0, 0, 0], F2) == 0.6
        assert not_eps_biased_set(code, 0.6) == []
        assert bias_of_code(code, 0.6).ceps_size == 0
        assert not_eps_biased_set(code, 0.59) == [(1, 0, 0, 0, 0)]

    def test_weight_seven_at_length_twenty(self):
        """Test a word with |20 - 14| / 20 = 0.3 at eps = 0.3."""
        word = [1] * 7 + [0] * 13
        code = LinearCode.from_rows(F2, [word])
        assert not_eps_biased_set(code, 0.3) == []
        assert bias_of_code(code, 0.3).ceps_size == 0

    def test_odd_characteristic_agrees(self):
        """Test that a ternary word at exactly its bias is also kept out of C_eps."""
        field = field_for_order(3)
        code = LinearCode.from_rows(field, [[1, 1, 1, 0, 0, 0]])
        bias = bias_of_word([1, 1, 1, 0, 0, 0], field)
        assert not_eps_biased_set(code, bias) == []
        assert len(not_eps_biased_set(code, bias - 0.01)) == 2


@pytest.mark.parametrize("n", [8, 64])
def test_binary_bias_is_distance_from_balance(n):
    """Test bias(x) = |n - 2 wt(x)| / n on 10^4 random binary words."""
    rng = make_rng(derive_seed(31, n))
    words = rng.integers(2, size=(10_000, n))
    for word in words:
        weight = int(word.sum())
        assert bias_of_word(word, F2) == abs(n - 2 * weight) / n


@pytest.mark.parametrize("q", [2, 3, 4])
def test_bias_bounds_distance_from_below(q):
    """Test d >= (q-1)(1-eps)n/q for 200 random codes with n <= 12, k <= 6."""
    rng = make_rng(derive_seed(47, q))
    for seed in range(200):
        n = int(rng.integers(2, 13))
        k = int(rng.integers(1, min(6, n) + 1))
        code = random_linear(q, n, k, derive_seed(q, seed))
        epsilon = bias_of_code(code).epsilon
        assert distance(code) >= (q - 1) * (1 - epsilon) * n / q - 1e-9


@pytest.mark.parametrize("q", [3, 4, 5, 8])
def test_bias_is_invariant_under_permutation_and_scaling(q):
    """Test bias_of_word under coordinate permutations and nonzero multiples."""
    field = field_for_order(q)
    rng = make_rng(q)
    for _ in range(50):
        word = rng.integers(q, size=9)
        bias = bias_of_word(word, field)
        assert bias_of_word(rng.permutation(word), field) == bias
        for a in range(1, q):
            assert bias_of_word(field.mul(a, word), field) == pytest.approx(bias, abs=1e-12)


@pytest.mark.parametrize("q, max_k", [(2, 10), (3, 7)])
def test_johnson_count_against_enumeration(q, max_k):
    """Test |C_eps| <= q^2 delta n^2 at the Johnson threshold for 100 random codes."""
    rng = make_rng(derive_seed(59, q))
    checked = 0
    for seed in range(100):
        n = int(rng.integers(8, 25))
        k = int(rng.integers(2, max_k + 1))
        code = random_linear(q, n, k, derive_seed(61, seed))
        delta = distance(code) / n
        if delta > (q - 1) / q:
            continue
        threshold, count = johnson_ceps_bound(q, delta, n)
        assert len(not_eps_biased_set(code, threshold)) <= count
        checked += 1
    assert checked > 50
