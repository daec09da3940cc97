"""High-precision numerics on top of mpmath: Hurwitz and Riemann zeta by
Euler-Maclaurin, the two-sided exponential sum F(s, a), the Apostol relation,
Poincare factors and Gauss-Legendre quadrature over rational simplices."""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import mpmath

from .errors import ComputationError
from .polyseries import bernoulli_number, factorial
from .rootsystem import RootSystem, poincare_poly, weyl_degrees


class PoleAtOne(ComputationError):
    pass


class NotConvergent(ComputationError):
    pass


class QuadratureFailure(ComputationError):
    pass


MIN_GUARD_DIGITS = 10


@dataclass(frozen=True)
class Precision:
    working_digits: int
    target_digits: int

    def __post_init__(self):
        if self.working_digits - self.target_digits < MIN_GUARD_DIGITS:
            raise ValueError(
                f"Working precision {self.working_digits} leaves fewer than "
                f"{MIN_GUARD_DIGITS} guard digits over the target {self.target_digits}")

    @classmethod
    def for_target(cls, target_digits: int = 30, guard_digits: int = MIN_GUARD_DIGITS) -> "Precision":
        return cls(working_digits=target_digits + max(guard_digits, MIN_GUARD_DIGITS),
                   target_digits=target_digits)

    def context(self):
        return mpmath.workdps(self.working_digits)

    @property
    def tolerance(self) -> mpmath.mpf:
        return mpmath.mpf(10) ** (-self.target_digits)


DEFAULT_PRECISION = Precision.for_target(30)


@dataclass(frozen=True)
class Estimate:
    """A numeric value together with an upper bound on its absolute error"""
    value: mpmath.mpf
    error: mpmath.mpf

    def __str__(self) -> str:
        return f"{mpmath.nstr(self.value, 20)} ± {mpmath.nstr(self.error, 3)}"


@dataclass(frozen=True)
class Residual:
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    residual: mpmath.mpf
    tolerance: mpmath.mpf

    @property
    def ok(self) -> bool:
        return self.residual <= self.tolerance


def to_mpf(x):
    """mpmath number from int, float, str, Fraction or mpmath value"""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpmathify(x)


def to_fraction(x, max_denominator: int = 10**6) -> Optional[Fraction]:
    """Exact rational for x when it has one with a small denominator"""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    try:
        value = Fraction(str(x))
    except ValueError:
        return None
    return value if value.denominator <= max_denominator else None


def _em_term(j: int, s, x, rising):
    return to_mpf(bernoulli_number(2 * j)) / factorial(2 * j) * rising * x ** (-s - 2 * j + 1)


def hurwitz_zeta(s, a, prec: Precision = DEFAULT_PRECISION) -> Estimate:
    """zeta(s, a) by Euler-Maclaurin summation.

    The cutoff is M = max(2 digits, 3|s|) with 0.7 digits Bernoulli
    corrections; the error bound is twice the first omitted correction plus
    the rounding of the sum. For Re s < 1 the terms grow like (M+a)^{-Re s}
    and the sum is carried with enough extra digits to absorb the
    cancellation.
    """
    digits = prec.working_digits
    with prec.context():
        if to_mpf(s) == 1:
            raise PoleAtOne("Hurwitz zeta has a pole at s = 1")
        if to_mpf(a) <= 0:
            raise ValueError(f"Hurwitz zeta needs a > 0, got {a}")
        cutoff = max(2 * digits, int(3 * abs(to_mpf(s))) + 1)
        corrections = int(0.7 * digits) + 1
        growth = max(0, 1 - mpmath.re(to_mpf(s))) * mpmath.log10(cutoff + to_mpf(a))
    carried = digits + int(mpmath.ceil(growth)) + 5
    with mpmath.workdps(carried):
        s, a = to_mpf(s), to_mpf(a)
        total = mpmath.fsum((k + a) ** (-s) for k in range(cutoff))
        x = cutoff + a
        total += x ** (1 - s) / (s - 1) + x ** (-s) / 2
        rising = s
        for j in range(1, corrections + 1):
            total += _em_term(j, s, x, rising)
            rising *= (s + 2 * j - 1) * (s + 2 * j)
        truncation = 2 * abs(_em_term(corrections + 1, s, x, rising))
        # bounds every summand: the first term and the growth towards the cutoff
        magnitude = max(1, abs(a ** (-s)), abs(x ** (1 - s)))
        rounding = 10 * (cutoff + corrections + 3) * magnitude * mpmath.mpf(10) ** (-carried)
    with prec.context():
        value = +total
        error = truncation + rounding + abs(value) * mpmath.mpf(10) ** (1 - digits)
        return Estimate(value=value, error=error)


def riemann_zeta(s, prec: Precision = DEFAULT_PRECISION) -> Estimate:
    return hurwitz_zeta(s, 1, prec)


def gamma(s, prec: Precision = DEFAULT_PRECISION):
    with prec.context():
        return mpmath.gamma(to_mpf(s))


def _exponential_sum(s, theta: Fraction, prec: Precision) -> Estimate:
    """sum_{n>=1} e^{2 pi i n theta} / n^s for rational theta, via Hurwitz zeta at k/q"""
    q = theta.denominator
    value, error = mpmath.mpf(0), mpmath.mpf(0)
    for k in range(1, q + 1):
        h = hurwitz_zeta(s, Fraction(k, q), prec)
        value += mpmath.expjpi(2 * k * theta.numerator / mpmath.mpf(q)) * h.value
        error += h.error
    scale = mpmath.mpf(q) ** (-s)
    return Estimate(value=scale * value, error=abs(scale) * error)


def _truncated_exponential_sum(s, a, cutoff: int) -> Estimate:
    value = mpmath.fsum(mpmath.expjpi(2 * n * a) * mpmath.mpf(n) ** (-s) for n in range(1, cutoff + 1))
    sigma = mpmath.re(s)
    return Estimate(value=value, error=mpmath.mpf(cutoff) ** (1 - sigma) / (sigma - 1))


def lerch_F(s, a, prec: Precision = DEFAULT_PRECISION, cutoff: int = 100_000) -> Estimate:
    """F(s, a) = sum e^{2 pi i n a} n^{-s} + e^{pi i s} sum e^{-2 pi i n a} n^{-s}

    The factor e^{pi i s} is the branch (-n)^{-s} = n^{-s} e^{pi i s} of the
    negative-index half. Rational a is summed exactly through Hurwitz zeta,
    anything else is truncated at cutoff with an explicit tail bound.
    """
    with prec.context():
        s = to_mpf(s)
        if mpmath.re(s) <= 1:
            raise NotConvergent(f"F(s, a) needs Re s > 1, got {mpmath.nstr(s, 10)}")
        exact_a = to_fraction(a, max_denominator=1000)
        if exact_a is not None:
            if not 0 < exact_a < 1:
                raise ValueError(f"F(s, a) needs 0 < a < 1, got {a}")
            plus = _exponential_sum(s, exact_a, prec)
            minus = _exponential_sum(s, -exact_a, prec)
        else:
            a = to_mpf(a)
            if not 0 < a < 1:
                raise ValueError(f"F(s, a) needs 0 < a < 1, got {a}")
            plus = _truncated_exponential_sum(s, a, cutoff)
            minus = _truncated_exponential_sum(s, -a, cutoff)
        phase = mpmath.expjpi(s)
        return Estimate(value=plus.value + phase * minus.value,
                        error=plus.error + abs(phase) * minus.error)


def apostol_check(s, a, prec: Precision = DEFAULT_PRECISION) -> Residual:
    """zeta(1-s, a) against Gamma(s) (2 pi i)^{-s} F(s, a)"""
    with prec.context():
        s_value = to_mpf(s)
        lhs = hurwitz_zeta(1 - s_value, a, prec).value
        f = lerch_F(s_value, a, prec).value
        rhs = gamma(s_value, prec) * (2j * mpmath.pi) ** (-s_value) * f
        residual = abs(lhs - rhs)
    return Residual(lhs=lhs, rhs=rhs, residual=residual, tolerance=prec.tolerance * 10**5)


def hurwitz_split_check(s, x, prec: Precision = DEFAULT_PRECISION) -> Residual:
    """zeta(1-s, x) = zeta(1-s, 1+x) + x^{s-1}"""
    with prec.context():
        s_value, x_value = to_mpf(s), to_mpf(x)
        lhs = hurwitz_zeta(1 - s_value, x_value, prec)
        shifted = hurwitz_zeta(1 - s_value, 1 + x_value, prec)
        rhs = shifted.value + x_value ** (s_value - 1)
        return Residual(lhs=lhs.value, rhs=rhs, residual=abs(lhs.value - rhs),
                        tolerance=max(lhs.error + shifted.error, prec.tolerance))


ZetaProduct = Tuple[Fraction, Tuple[int, ...]]


def zeta_value(terms: Iterable[ZetaProduct], prec: Precision = DEFAULT_PRECISION) -> Estimate:
    """sum of q * prod zeta(a) over (q, (a, ...)) terms, with the propagated error"""
    with prec.context():
        cache = {}
        total, error, size = mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(0)
        for coefficient, arguments in terms:
            product = to_mpf(coefficient)
            bound = abs(product)
            for a in arguments:
                if a not in cache:
                    cache[a] = riemann_zeta(a, prec)
                product *= cache[a].value
                bound *= abs(cache[a].value) + cache[a].error
            total += product
            error += max(0, bound - abs(product))
            size += abs(product)
        error += size * mpmath.mpf(10) ** (2 - prec.working_digits)
        return Estimate(value=total, error=error)


def poincare_exponential(rs: RootSystem, s, prec: Precision = DEFAULT_PRECISION):
    """P(s) = sum over the Weyl group of e^{pi i l(w) s}"""
    with prec.context():
        s = to_mpf(s)
        return mpmath.fsum(c * mpmath.expjpi(length * s) for length, c in enumerate(poincare_poly(rs)))


def poincare_sine_factor(rs: RootSystem, s, prec: Precision = DEFAULT_PRECISION):
    """prod_k sin(pi s d_k/2) / sin(pi s/2), so that P(s) = e^{pi i s r/2} times this"""
    with prec.context():
        exact = to_fraction(s)
        if exact is not None and exact.denominator == 1 and exact.numerator % 2 == 0:
            m = exact.numerator // 2
            result = mpmath.mpf(1)
            for d in weyl_degrees(rs):
                result *= d * (-1) ** (m * (d - 1))
            return result
        s = to_mpf(s)
        half = mpmath.sinpi(s / 2)
        result = mpmath.mpf(1)
        for d in weyl_degrees(rs):
            result *= mpmath.sinpi(s * d / 2) / half
        return result


@functools.cache
def _gauss_legendre(nodes: int, digits: int) -> Tuple[Tuple, Tuple]:
    """Nodes and weights on [0, 1] from the eigen-decomposition of the Jacobi matrix"""
    with mpmath.workdps(digits):
        jacobi = mpmath.zeros(nodes, nodes)
        for k in range(1, nodes):
            b = k / mpmath.sqrt(4 * k * k - 1)
            jacobi[k - 1, k] = jacobi[k, k - 1] = b
        eigenvalues, vectors = mpmath.eigsy(jacobi)
        points = tuple((1 + eigenvalues[i]) / 2 for i in range(nodes))
        weights = tuple(vectors[0, i] ** 2 for i in range(nodes))
        return points, weights


@functools.cache
def _graded_rule(nodes: int, digits: int, grading: int) -> Tuple[Tuple, Tuple]:
    """Gauss-Legendre pushed through t -> I_t(p, p), the regularized incomplete beta.

    The map is a polynomial with p-fold contact at both ends, so an endpoint
    factor y^{s-1} becomes t^{p s - 1} times a smooth function.
    """
    points, weights = _gauss_legendre(nodes, digits)
    if grading == 1:
        return points, weights
    with mpmath.workdps(digits):
        norm = mpmath.beta(grading, grading)
        mapped = tuple(mpmath.betainc(grading, grading, 0, t, regularized=True) for t in points)
        scaled = tuple(w * (t * (1 - t)) ** (grading - 1) / norm for t, w in zip(points, weights))
        return mapped, scaled


def singular_grading(s) -> int:
    """Grading that smooths the endpoint factor y^{s-1}; 1 when it is a polynomial"""
    exact = to_fraction(s)
    if exact is not None and exact.denominator == 1:
        return 1
    return max(2, int(mpmath.ceil(8 / to_mpf(s))))


def _rule_on_simplex(f: Callable, vertices: Sequence[Sequence], nodes: int, digits: int,
                     grading: int = 1):
    points, weights = _graded_rule(nodes, digits, grading)
    v = [[to_mpf(x) for x in p] for p in vertices]
    d = len(v) - 1
    if d == 1:
        length = abs(v[1][0] - v[0][0])
        return length * mpmath.fsum(w * f([v[0][0] + u * (v[1][0] - v[0][0])]) for u, w in zip(points, weights))
    if d == 2:
        e1 = [b - a for a, b in zip(v[0], v[1])]
        e2 = [b - a for a, b in zip(v[1], v[2])]
        jac = abs(e1[0] * e2[1] - e1[1] * e2[0])
        total = mpmath.mpf(0)
        # collapsed square: x = v0 + u e1 + u t e2, dx = u jac du dt; its edges are the triangle's
        for u, wu in zip(points, weights):
            for t, wt in zip(points, weights):
                x = [v[0][i] + u * e1[i] + u * t * e2[i] for i in range(2)]
                total += wu * wt * u * f(x)
        return jac * total
    raise ValueError(f"Quadrature is implemented on 1- and 2-simplices, not {d}-simplices")


def simplex_quadrature(f: Callable, vertices: Sequence[Sequence], nodes: int = 12,
                       prec: Precision = DEFAULT_PRECISION, grading: int = 1) -> Estimate:
    """Gauss-Legendre product rule on a simplex, error estimated against the doubled rule"""
    with prec.context():
        coarse = _rule_on_simplex(f, vertices, nodes, prec.working_digits, grading)
        fine = _rule_on_simplex(f, vertices, 2 * nodes, prec.working_digits, grading)
        return Estimate(value=fine, error=abs(fine - coarse))


def cells_quadrature(f: Callable, cells, nodes: int = 12, prec: Precision = DEFAULT_PRECISION,
                     tolerance=None, grading: int = 1) -> Estimate:
    """Composite rule over banded cells; f(point, bands) is smooth inside each cell
    apart from endpoint factors that grading takes care of"""
    with prec.context():
        value, error = mpmath.mpf(0), mpmath.mpf(0)
        for cell in cells:
            part = simplex_quadrature(lambda x, bands=cell.bands: f(x, bands),
                                      cell.simplex.vertices, nodes, prec, grading)
            value += part.value
            error += part.error
        # relative, with an absolute floor for integrals that cancel to zero
        if tolerance is not None and error > abs(value) * to_mpf(tolerance) + prec.tolerance:
            raise QuadratureFailure(
                f"Quadrature error estimate {mpmath.nstr(error, 3)} exceeds relative tolerance {tolerance}")
        return Estimate(value=value, error=error)


def hurwitz_at(s, y):
    """zeta(1-s, y) for quadrature, split as zeta(1-s, 1+y) + y^{s-1} near y = 0"""
    return mpmath.zeta(1 - s, 1 + y) + y ** (s - 1)
