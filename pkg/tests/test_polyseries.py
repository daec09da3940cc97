from fractions import Fraction

import pytest
import sympy

from wittenzeta.polyseries import (
    DegenerateSimplex, MultiPoly, NonPositiveConstantTerm, bernoulli_number,
    bernoulli_polynomial, exp_series, hurwitz_neg_int, integrate_over_simplex,
    log_series, monomial_simplex_integral, power_series, product_of_linear,
    zeta_neg_int,
)


def test_bernoulli_numbers():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(4) == Fraction(-1, 30)
    assert bernoulli_number(12) == Fraction(-691, 2730)
    assert bernoulli_number(13) == 0


@pytest.mark.parametrize("n", range(2, 41))
def test_bernoulli_numbers_agree_with_sympy(n):
    expected = sympy.bernoulli(n)
    assert bernoulli_number(n) == Fraction(int(expected.p), int(expected.q))


def test_bernoulli_polynomials():
    assert bernoulli_polynomial(1).coefficients() == [Fraction(-1, 2), 1]
    assert bernoulli_polynomial(2).coefficients() == [Fraction(1, 6), -1, 1]
    assert bernoulli_polynomial(3).coefficients() == [0, Fraction(1, 2), Fraction(-3, 2), 1]
    for k in range(2, 12):
        b = bernoulli_polynomial(k)
        assert b.evaluate([0]) == b.evaluate([1]) == bernoulli_number(k)


def test_zeta_at_negative_integers():
    assert zeta_neg_int(0) == Fraction(-1, 2)
    assert zeta_neg_int(1) == Fraction(-1, 12)
    assert zeta_neg_int(2) == 0
    assert zeta_neg_int(3) == Fraction(1, 120)
    assert zeta_neg_int(5) == Fraction(-1, 252)
    assert zeta_neg_int(7) == Fraction(1, 240)
    assert zeta_neg_int(9) == Fraction(-1, 132)
    assert hurwitz_neg_int(1, Fraction(1, 2)) == Fraction(1, 24)
    assert hurwitz_neg_int(3, 1) == zeta_neg_int(3)


def test_polynomial_arithmetic():
    x = MultiPoly.variable(0, 2)
    y = MultiPoly.variable(1, 2)
    p = (x + y) ** 2 - 2 * x * y
    assert p == x * x + y * y
    assert p.degree() == 2
    assert p.evaluate([Fraction(1, 2), 3]) == Fraction(37, 4)
    assert (p - p).is_zero()
    shifted = MultiPoly.univariate([0, 0, 1]).compose(MultiPoly.affine([1, 1], -1))
    assert shifted.evaluate([2, 3]) == 16


def test_monomial_simplex_integrals():
    assert monomial_simplex_integral((0, 0)) == Fraction(1, 2)
    assert monomial_simplex_integral((1, 0)) == Fraction(1, 6)
    assert monomial_simplex_integral((1, 1)) == Fraction(1, 24)
    assert monomial_simplex_integral((0, 0, 0)) == Fraction(1, 6)


def test_integrate_over_simplex():
    one = MultiPoly.constant(2, 1)
    assert integrate_over_simplex(one, [(0, 0), (1, 0), (0, Fraction(1, 2))]) == Fraction(1, 4)
    x = MultiPoly.variable(0, 1)
    assert integrate_over_simplex(x, [(0,), (1,)]) == Fraction(1, 2)
    assert integrate_over_simplex(x * x, [(1,), (0,)]) == Fraction(1, 3)
    # x y over the unit square, cut along the diagonal
    xy = MultiPoly.variable(0, 2) * MultiPoly.variable(1, 2)
    lower = integrate_over_simplex(xy, [(0, 0), (1, 0), (1, 1)])
    upper = integrate_over_simplex(xy, [(0, 0), (1, 1), (0, 1)])
    assert lower == upper == Fraction(1, 8)


def test_degenerate_simplex():
    with pytest.raises(DegenerateSimplex):
        integrate_over_simplex(MultiPoly.constant(2, 1), [(0, 0), (1, 1), (2, 2)])


def test_log_series():
    series = log_series(MultiPoly.univariate([1, 1]), 4)
    assert list(series.plain) == [0, 1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4)]
    assert not any(series.log_part)

    scaled = log_series(MultiPoly.univariate([2, 2]), 4)
    assert scaled.plain == series.plain
    assert scaled.log_part[0] == 1
    assert scaled.log_constant == 2

    with pytest.raises(NonPositiveConstantTerm):
        log_series(MultiPoly.univariate([-1, 1]), 3)
    with pytest.raises(ValueError):
        series.coefficient(5)


def test_series_products():
    log = log_series(MultiPoly.univariate([1, 1]), 3)
    assert list(log.times([1, 1]).plain) == [0, 1, Fraction(1, 2), Fraction(-1, 6)]
    assert exp_series(log.plain, 3) == [1, 1, 0, 0]
    assert power_series(MultiPoly.univariate([1, 1]), 3, 5) == [1, 3, 3, 1, 0, 0]
    assert product_of_linear([(1, 1), (1, 2)]).coefficients() == [1, 3, 2]


@pytest.mark.parametrize("k", range(1, 21))
def test_bernoulli_polynomial_difference(k):
    shifted = bernoulli_polynomial(k).compose(MultiPoly.affine([1], 1))
    difference = shifted - bernoulli_polynomial(k)
    assert difference.coefficients() == [0] * (k - 1) + [k]


@pytest.mark.parametrize("k", range(1, 21))
def test_bernoulli_polynomial_has_zero_mean(k):
    assert integrate_over_simplex(bernoulli_polynomial(k), [(0,), (1,)]) == 0


@pytest.mark.parametrize("factors", [
    [(1, 1)],
    [(1, 1), (1, 2)],
    [(1, 1), (1, 2), (1, 3), (2, 3)],
    [(3, -1), (2, 5)],
])
def test_exp_of_log_series_recovers_normalized_polynomial(factors):
    f = product_of_linear(factors)
    order = 12
    coeffs = f.coefficients()
    expected = [c / coeffs[0] for c in coeffs] + [0] * (order + 1 - len(coeffs))
    assert exp_series(log_series(f, order).plain, order) == expected
