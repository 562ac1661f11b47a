import itertools
import math

import pytest

from qgauss import DomainError, Matching, QPolynomial, enumerate_matchings, q_double_factorial, weight, weighted_count
from qgauss.matchcomb import double_factorial_polynomial, weight_exponent


def brute_matchings(n):
    """Canonical matchings via all permutations of {1..n}, deduplicated."""
    found = set()
    for perm in itertools.permutations(range(1, n + 1)):
        pairs = sorted(tuple(sorted(perm[i:i + 2])) for i in range(0, n, 2))
        found.add(tuple(pairs))
    return found


def odd_double_factorial(n):
    return math.prod(range(n - 1, 0, -2)) if n % 2 == 0 else 0


class TestEnumeration:
    def test_two(self):
        assert [m.pairs for m in enumerate_matchings(2)] == [((1, 2),)]

    def test_odd_is_empty(self):
        assert enumerate_matchings(3) == []

    def test_six(self):
        assert len(enumerate_matchings(6)) == 15

    def test_empty_set_has_one_matching(self):
        assert [m.pairs for m in enumerate_matchings(0)] == [()]

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_against_permutations(self, n):
        assert {m.pairs for m in enumerate_matchings(n)} == brute_matchings(n)

    @pytest.mark.parametrize("n", range(0, 13))
    def test_counts(self, n):
        assert len(enumerate_matchings(n)) == odd_double_factorial(n)

    def test_size_limit(self):
        with pytest.raises(DomainError):
            enumerate_matchings(17)


class TestMatchingType:
    @pytest.mark.parametrize(
        "pairs",
        [((2, 1),), ((2, 3), (1, 4)), ((1, 2), (3, 5)), ((1, 3), (2, 3))],
    )
    def test_invalid(self, pairs):
        with pytest.raises(DomainError):
            Matching(pairs)


class TestWeight:
    @pytest.mark.parametrize(
        "pairs,exponent",
        [(((1, 2), (3, 4)), 0), (((1, 3), (2, 4)), 1), (((1, 4), (2, 3)), 2)],
    )
    def test_examples(self, pairs, exponent):
        m = Matching(pairs)
        assert weight_exponent(m) == exponent
        assert weight(m) == QPolynomial.monomial(exponent)

    def test_earlier_right_endpoints_excluded(self):
        # (1,4): {2,3} -> 2; (2,5): {3,4} minus {4} -> 1; (3,6): {4,5} minus {4,5} -> 0
        m = Matching(((1, 4), (2, 5), (3, 6)))
        assert weight_exponent(m) == 2 + 1 + 0


class TestWeightedCount:
    def test_four(self):
        assert weighted_count(4) == QPolynomial((1, 1, 1))

    def test_odd(self):
        assert weighted_count(3) == QPolynomial()
        assert weighted_count(3)(0.5) == 0.0

    @pytest.mark.parametrize("half", range(0, 7))
    def test_closed_form(self, half):
        w = weighted_count(2 * half)
        assert w == double_factorial_polynomial(half)
        assert w.at_one() == odd_double_factorial(2 * half)
        assert w.coeffs[0] == 1

    def test_six_explicit(self):
        expected = QPolynomial.bracket(5) * QPolynomial.bracket(3) * QPolynomial.bracket(1)
        assert weighted_count(6).coeffs == expected.coeffs == (1, 2, 3, 3, 3, 2, 1)

    @pytest.mark.parametrize("q", [0.0, 0.5, 0.9])
    def test_evaluation_bridge(self, q):
        for half in range(7):
            assert weighted_count(2 * half)(q) == pytest.approx(q_double_factorial(q, half), rel=1e-12)


class TestQPolynomial:
    def test_normalizes_trailing_zeros(self):
        assert QPolynomial((1, 2, 0, 0)).coeffs == (1, 2)
        assert QPolynomial((0, 0)).degree == -1

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            QPolynomial((1, -1))

    def test_arithmetic(self):
        a, b = QPolynomial((1, 1)), QPolynomial((0, 2))
        assert (a + b).coeffs == (1, 3)
        assert (a * b).coeffs == (0, 2, 2)
        assert (a * QPolynomial()).coeffs == ()
        assert a(0.5) == 1.5

    def test_str(self):
        assert str(QPolynomial((1, 2, 1))) == "1 + 2*q + q^2"
