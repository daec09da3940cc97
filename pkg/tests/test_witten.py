from fractions import Fraction

import mpmath
import pytest

from wittenzeta.numeric import NotConvergent, Precision
from wittenzeta.rootsystem import build_from_label
from wittenzeta.witten import (
    DimensionUnsupported, _collect, a2_generic_integral, a2_integral, a2_leading_derivative,
    a2_pole_coefficient, a2_pole_terms, a2_pole_terms_derived, cube_integral,
    even_value_table, exact_even_value, identity_a2, identity_b2, identity_g2,
    integral_rep_check, integrand_spec, numeric_multisum, onodera_consistency,
)


PREC = Precision.for_target(30)


@pytest.fixture(autouse=True)
def working_precision():
    with mpmath.workdps(40):
        yield


def test_integrand_spec():
    a2 = integrand_spec(build_from_label("A2"))
    assert a2.dim == 1
    assert a2.forms.to_lists() == [[1, -1, -1]]
    b2 = integrand_spec(build_from_label("B2"))
    assert b2.dim == 2
    assert b2.forms.to_lists() == [[1, 0, -2, -1], [0, 1, -1, -1]]
    assert b2.wrapped(0) == (-2, -1)
    g2 = integrand_spec(build_from_label("G2"))
    assert (g2.dim, g2.identity_count, g2.wrapped_count) == (4, 4, 2)
    a1 = integrand_spec(build_from_label("A1"))
    assert (a1.dim, a1.wrapped_count) == (0, 1)


def test_a2_integral():
    assert a2_integral(1) == Fraction(-1, 30240)
    for m in range(1, 4):
        assert a2_generic_integral(m) == a2_integral(m)


def test_a1_is_riemann_zeta():
    spec = integrand_spec(build_from_label("A1"))
    assert cube_integral(spec, 1) == (Fraction(-1, 12), 1)
    two = exact_even_value(build_from_label("A1"), 2)
    assert (two.exact, two.pi_power) == (Fraction(1, 6), 2)
    assert exact_even_value(build_from_label("A1"), 4).exact == Fraction(1, 90)


def test_a2_even_value():
    report = exact_even_value(build_from_label("A2"), 2)
    assert report.exact == Fraction(4, 2835)
    assert report.pi_power == 6
    assert report.metadata["integral"] == Fraction(-1, 30240)


def test_refinement_does_not_change_values():
    for label in ["A2", "B2"]:
        rs = build_from_label(label)
        assert exact_even_value(rs, 2, refine=True).exact == exact_even_value(rs, 2).exact


def test_even_value_rejects_odd_arguments():
    with pytest.raises(ValueError):
        exact_even_value(build_from_label("A2"), 3)
    with pytest.raises(DimensionUnsupported):
        exact_even_value(build_from_label("B3"), 2)


@pytest.mark.parametrize("label, s, digits", [("A2", 2, 6), ("A2", 4, 8), ("B2", 2, 6)])
def test_even_values_against_multisum(label, s, digits):
    rs = build_from_label(label)
    exact = exact_even_value(rs, s)
    approx = numeric_multisum(rs, s, 200, PREC)
    value = mpmath.mpf(exact.exact.numerator) / exact.exact.denominator * mpmath.pi ** exact.pi_power
    assert abs(value - approx.value) <= approx.error + mpmath.mpf(10) ** -25
    assert abs(value - approx.value) / value < mpmath.mpf(10) ** -digits


def test_even_value_table():
    reports = even_value_table(["A1", "A2"], 2)
    assert [(r.phi, r.pi_power) for r in reports] == [("A1", 2), ("A1", 4), ("A2", 6), ("A2", 12)]


def test_multisum_needs_real_argument_above_one():
    rs = build_from_label("A2")
    with pytest.raises(NotConvergent):
        numeric_multisum(rs, 1, 10, PREC)
    with pytest.raises(NotConvergent):
        numeric_multisum(rs, mpmath.mpc(2, 1), 10, PREC)


def test_multisum_of_a1_is_riemann_zeta():
    approx = numeric_multisum(build_from_label("A1"), 4, 200, PREC)
    assert abs(approx.value - mpmath.zeta(4)) <= approx.error


def test_pole_coefficient():
    pole = a2_pole_coefficient(1, PREC)
    assert pole.collected == {(2, 3): 4, (5,): 2}
    expected = 4 * mpmath.zeta(2) * mpmath.zeta(3) + 2 * mpmath.zeta(5)
    assert abs(pole.numeric.value - expected) < mpmath.mpf(10) ** -28
    assert abs(pole.numeric.value - expected) <= pole.numeric.error < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("m", range(1, 7))
def test_pole_coefficient_expansions_agree(m):
    closed = a2_pole_coefficient(m, PREC).collected
    assert _collect(a2_pole_terms_derived(m)) == closed
    assert _collect(a2_pole_terms(m)) == closed


def test_leading_derivative_order():
    assert a2_leading_derivative(1, PREC)["order"] == 1
    assert a2_leading_derivative(2, PREC)["order"] == 2


@pytest.mark.parametrize("m", [1, 2, 3])
def test_leading_derivative_carries_error_bounds(m):
    leading = a2_leading_derivative(m, PREC)
    xi, zeta = leading["xi"], leading["zeta"]
    assert zeta.value == xi.value / 2 ** m
    assert 0 < xi.error < abs(xi.value) * mpmath.mpf(10) ** -30
    assert 0 < zeta.error < abs(zeta.value) * mpmath.mpf(10) ** -30


@pytest.mark.parametrize("m", [2, 4, 6])
def test_onodera_consistency(m):
    report = onodera_consistency(m, PREC)
    assert report.terms_match
    assert report.relative_difference < mpmath.mpf(10) ** -25
    for value in (report.closed_value, report.derived_value):
        assert 0 < value.error < abs(value.value) * mpmath.mpf(10) ** -30
    with pytest.raises(ValueError):
        onodera_consistency(3, PREC)


def test_identity_values():
    assert identity_a2(1).lhs == identity_a2(1).rhs == Fraction(1, 14400)
    assert identity_b2(1).lhs == identity_b2(1).rhs == Fraction(-1, 1680)
    with pytest.raises(ValueError):
        identity_g2(0)


@pytest.mark.parametrize("n", range(1, 7))
def test_a2_identity(n):
    assert identity_a2(n).holds


@pytest.mark.parametrize("n", range(1, 5))
def test_b2_identity(n):
    assert identity_b2(n).holds


@pytest.mark.parametrize("n", [1, 2])
def test_g2_identity(n):
    assert identity_g2(n).holds


@pytest.mark.parametrize("label, s, bound", [
    ("A2", 2, 6), ("A2", 3, 6), ("A2", "2.5", 6), ("B2", 2, 4), ("B2", "2.5", 4),
])
def test_integral_representation(label, s, bound):
    check = integral_rep_check(build_from_label(label), s, 12, 200, PREC)
    assert check.residual < mpmath.mpf(10) ** -bound
    assert check.holds
    assert check.threshold == mpmath.mpf(10) ** -bound
    assert abs(check.sine_lhs - check.lhs) < mpmath.mpf(10) ** -25 * max(1, abs(check.lhs))


def test_integral_representation_quadrature_matches_exact_integral():
    check = integral_rep_check(build_from_label("A2"), 2, 12, 200, PREC)
    assert abs(check.integral.value - mpmath.mpf(-1) / 30240) < mpmath.mpf(10) ** -8


def test_integral_representation_dimension():
    with pytest.raises(DimensionUnsupported):
        integral_rep_check(build_from_label("A1"), 2, 12, 200, PREC)


@pytest.mark.slow
def test_a3_even_value():
    rs = build_from_label("A3")
    exact = exact_even_value(rs, 2)
    approx = numeric_multisum(rs, 2, 40, PREC)
    value = mpmath.mpf(exact.exact.numerator) / exact.exact.denominator * mpmath.pi ** exact.pi_power
    assert abs(value - approx.value) <= approx.error
