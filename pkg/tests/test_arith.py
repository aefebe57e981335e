import math

import pytest

from wcatalan.arith import (
    IntPolynomial,
    ModSeries,
    ValueTable,
    binomial_mod_p,
    digit_sum,
    finite_difference,
    is_prime,
    newton_coefficients,
    series_divide,
    series_divide_exact,
    valuation,
)
from wcatalan.errors import DomainError


class TestValuation:
    def test_examples(self):
        assert valuation(2, 12) == 2
        assert valuation(7, 49) == 2
        assert valuation(2, 5) == 0

    def test_sign_ignored(self):
        assert valuation(3, -54) == 3

    def test_zero_rejected(self):
        with pytest.raises(DomainError, match="undefined at zero"):
            valuation(2, 0)

    def test_small_base_rejected(self):
        with pytest.raises(DomainError):
            valuation(1, 4)

    def test_composite_base(self):
        assert valuation(6, 2 * 36) == 2


class TestDigitSum:
    def test_examples(self):
        assert digit_sum(2, 4) == 1
        assert digit_sum(2, 15) == 4
        assert digit_sum(5, 35) == 3
        assert digit_sum(7, 0) == 0

    def test_bad_inputs(self):
        with pytest.raises(DomainError):
            digit_sum(1, 3)
        with pytest.raises(DomainError):
            digit_sum(2, -1)


class TestFiniteDifference:
    def test_quadratic_example(self):
        # b(x) = (2x+1)^2 at 0..3
        tab = ValueTable(0, (1, 9, 25, 49))
        assert finite_difference(tab, 1).values == (8, 16, 24)
        assert finite_difference(tab, 2).values == (8, 8)
        assert finite_difference(tab, 3).values == (0,)

    def test_order_zero_identity(self):
        tab = ValueTable(2, (5, -1, 7))
        assert finite_difference(tab, 0) == tab

    def test_window_too_short(self):
        tab = ValueTable(0, (1, 2))
        with pytest.raises(DomainError, match="at least 3"):
            finite_difference(tab, 2)

    def test_shift_is_window_bookkeeping(self):
        tab = ValueTable(0, (1, 9, 25, 49))
        assert tab.shifted().values == (9, 25, 49)
        assert tab.shifted(2).values == (25, 49)


class TestNewtonCoefficients:
    def test_examples(self):
        assert newton_coefficients(ValueTable(0, (1, 9, 25))) == [1, 8, 8]
        assert newton_coefficients(ValueTable(0, (4, 4, 4))) == [4, 0, 0]
        assert newton_coefficients(ValueTable(0, (0, 1, 2, 3))) == [0, 1, 0, 0]

    def test_needs_base_zero(self):
        with pytest.raises(DomainError):
            newton_coefficients(ValueTable(1, (1, 2)))

    def test_reconstructs_values(self):
        vals = (3, -1, 4, 1, 5, 9)
        coeffs = newton_coefficients(ValueTable(0, vals))
        for x, v in enumerate(vals):
            assert sum(c * math.comb(x, j) for j, c in enumerate(coeffs)) == v


class TestBinomialModP:
    def test_examples(self):
        assert binomial_mod_p(4, 2, 2) == 0
        assert binomial_mod_p(17, 0, 5) == 1
        assert binomial_mod_p(5, 2, 5) == 0

    def test_against_comb(self):
        for p in (2, 3, 7):
            for n in range(30):
                for m in range(n + 1):
                    assert binomial_mod_p(n, m, p) == math.comb(n, m) % p

    def test_prime_required(self):
        with pytest.raises(DomainError, match="prime"):
            binomial_mod_p(4, 2, 6)

    def test_is_prime(self):
        primes = [p for p in range(60) if is_prime(p)]
        assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]


class TestIntPolynomial:
    def test_normalization(self):
        p = IntPolynomial((1, 2, 0, 0))
        assert p.coefficients == (1, 2)
        assert p.degree == 1
        assert IntPolynomial(()).degree == -1

    def test_eval_and_mul(self):
        p = IntPolynomial((1, -35, 25))
        assert p(0) == 1 and p(2) == 1 - 70 + 100
        q = IntPolynomial((1, 1))
        assert (p * q).coefficients == (1, -34, -10, 25)

    def test_coefficients_mod(self):
        p = IntPolynomial((1, -83, 441))
        assert p.coefficients_mod(7) == (1, 1)


class TestSeriesDivide:
    def test_documented_example(self):
        # (1+x)/(1+4x^2) over Z/7Z
        s = series_divide(IntPolynomial((1, 1)), IntPolynomial((1, 0, 4)), 7, 6)
        assert s.coefficients == (1, 1, 3, 3, 2, 2)

    def test_trivial(self):
        s = series_divide((1,), (1,), 9, 5)
        assert s.coefficients == (1, 0, 0, 0, 0)

    def test_geometric(self):
        s = series_divide((1,), (1, -1), 5, 4)
        assert s.coefficients == (1, 1, 1, 1)

    def test_non_invertible_constant(self):
        with pytest.raises(DomainError, match="non-invertible constant term"):
            series_divide((1,), (7, 1), 7, 3)

    def test_exact_division(self):
        got = series_divide_exact((1,), (1, -1, -1), 10)
        assert got == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
        with pytest.raises(DomainError):
            series_divide_exact((1,), (2, 1), 4)

    def test_mod_series_reduced(self):
        s = ModSeries(5, (7, -1, 5))
        assert s.coefficients == (2, 4, 0)
