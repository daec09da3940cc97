"""Exact Bernoulli polynomials, zeta values at non-positive integers,
sparse multivariate polynomials, truncated log series and exact
integration of polynomials over rational simplices."""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import ComputationError
from .linalg import ExactMatrix


class NonPositiveConstantTerm(ComputationError):
    pass


class DegenerateSimplex(ComputationError):
    pass


@functools.cache
def factorial(n: int) -> int:
    return math.factorial(n)


@functools.cache
def _bernoulli_table(n: int) -> Tuple[Fraction, ...]:
    """B_0..B_n with B_1 = -1/2, from sum_{k<=m} C(m+1,k) B_k = 0"""
    if n == 0:
        return (Fraction(1),)
    table = list(_bernoulli_table(n - 1))
    if n >= 3 and n % 2 == 1:
        table.append(Fraction(0))
    else:
        total = sum((math.comb(n + 1, k) * table[k] for k in range(n)), Fraction(0))
        table.append(-total / (n + 1))
    return tuple(table)


def bernoulli_number(n: int) -> Fraction:
    if n < 0:
        raise ValueError("Bernoulli numbers are indexed from 0")
    return _bernoulli_table(n)[n]


Exponents = Tuple[int, ...]


class MultiPoly:
    """Sparse polynomial in nvars variables with Fraction coefficients"""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Exponents, Fraction] = None):
        self.nvars = nvars
        self.terms: Dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != nvars:
                raise ValueError(f"Exponent vector {exps} does not have length {nvars}")
            if coeff:
                self.terms[tuple(exps)] = Fraction(coeff)

    @classmethod
    def constant(cls, nvars: int, value) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "MultiPoly":
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def affine(cls, coeffs: Sequence, const=0) -> "MultiPoly":
        """const + sum_i coeffs[i] x_i"""
        nvars = len(coeffs)
        terms = {(0,) * nvars: Fraction(const)}
        for i, c in enumerate(coeffs):
            exps = [0] * nvars
            exps[i] = 1
            terms[tuple(exps)] = Fraction(c)
        return cls(nvars, terms)

    @classmethod
    def univariate(cls, coeffs: Sequence) -> "MultiPoly":
        """Polynomial in one variable from ascending coefficients"""
        return cls(1, {(k,): Fraction(c) for k, c in enumerate(coeffs)})

    def coefficients(self) -> List[Fraction]:
        """Ascending coefficients of a univariate polynomial"""
        if self.nvars != 1:
            raise ValueError("Only univariate polynomials have a coefficient list")
        if not self.terms:
            return []
        out = [Fraction(0)] * (self.degree() + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    def coefficient(self, exps: Exponents) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.terms!r})"

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("Polynomials live in different numbers of variables")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, 0) + c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            factor = Fraction(other)
            return MultiPoly(self.nvars, {e: factor * c for e, c in self.terms.items()})
        other = self._coerce(other)
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(point, exps):
                if e:
                    term *= Fraction(x) ** e
            total += term
        return total

    def compose(self, inner: "MultiPoly") -> "MultiPoly":
        """p(inner) for univariate p, by Horner"""
        coeffs = self.coefficients()
        result = MultiPoly(inner.nvars)
        for c in reversed(coeffs):
            result = result * inner + c
        return result

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable i by images[i]"""
        if len(images) != self.nvars:
            raise ValueError("Need one image per variable")
        nvars = images[0].nvars
        powers: Dict[Tuple[int, int], MultiPoly] = {}

        def power(i, e):
            if (i, e) not in powers:
                powers[(i, e)] = images[i] ** e
            return powers[(i, e)]

        result = MultiPoly(nvars)
        for exps, c in self.terms.items():
            term = MultiPoly.constant(nvars, c)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result


@functools.cache
def bernoulli_polynomial(k: int) -> MultiPoly:
    """B_k(x) = sum_j C(k, j) B_j x^(k-j)"""
    coeffs = [Fraction(0)] * (k + 1)
    for j in range(k + 1):
        coeffs[k - j] = math.comb(k, j) * bernoulli_number(j)
    return MultiPoly.univariate(coeffs)


def zeta_neg_int(k: int) -> Fraction:
    """Riemann zeta at -k for k >= 0"""
    if k < 0:
        raise ValueError("zeta_neg_int takes k >= 0")
    if k == 0:
        return Fraction(-1, 2)
    return -bernoulli_number(k + 1) / (k + 1)


def hurwitz_neg_int(n: int, a) -> Fraction:
    """Hurwitz zeta at -n: -B_{n+1}(a)/(n+1)"""
    return -bernoulli_polynomial(n + 1).evaluate([Fraction(a)]) / (n + 1)


def monomial_simplex_integral(exponents: Sequence[int]) -> Fraction:
    """Integral of prod x_i^a_i over the standard simplex in R^d"""
    d = len(exponents)
    numerator = 1
    for a in exponents:
        numerator *= factorial(a)
    return Fraction(numerator, factorial(d + sum(exponents)))


def integrate_standard(p: MultiPoly) -> Fraction:
    """Integral over the standard simplex {t >= 0, sum t <= 1}"""
    return sum((c * monomial_simplex_integral(e) for e, c in p.terms.items()), Fraction(0))


def _vertices(s) -> List[Tuple[Fraction, ...]]:
    vertices = getattr(s, "vertices", s)
    return [tuple(Fraction(x) for x in v) for v in vertices]


def edge_matrix(vertices: Sequence[Sequence[Fraction]]) -> ExactMatrix:
    """Columns v_i - v_0"""
    v0 = vertices[0]
    return ExactMatrix.from_columns([[a - b for a, b in zip(v, v0)] for v in vertices[1:]])


def pullback_affine(coeffs: Sequence, const, vertices: Sequence[Sequence[Fraction]]) -> MultiPoly:
    """Affine form const + coeffs.x written in the simplex coordinates t,
    where x = v_0 + sum_i t_i (v_i - v_0)"""
    v0 = vertices[0]
    base = Fraction(const) + sum((Fraction(c) * x for c, x in zip(coeffs, v0)), Fraction(0))
    slopes = [
        sum((Fraction(c) * (a - b) for c, a, b in zip(coeffs, v, v0)), Fraction(0))
        for v in vertices[1:]
    ]
    return MultiPoly.affine(slopes, base)


def jacobian(vertices: Sequence[Sequence[Fraction]]) -> Fraction:
    if len(vertices) == 1:
        return Fraction(1)
    det = abs(edge_matrix(vertices).det())
    if det == 0:
        raise DegenerateSimplex("Simplex vertices are affinely dependent")
    return det


def integrate_over_simplex(p: MultiPoly, s) -> Fraction:
    """Exact integral of p over a rational simplex (anything with .vertices)"""
    vertices = _vertices(s)
    d = len(vertices) - 1
    if p.nvars != d:
        raise ValueError(f"Polynomial in {p.nvars} variables over a {d}-simplex")
    jac = jacobian(vertices)
    images = [pullback_affine([int(i == j) for j in range(d)], 0, vertices) for i in range(d)]
    return jac * integrate_standard(p.substitute(images))


def series_mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> List[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[:order + 1]):
        if x:
            for j, y in enumerate(b[:order + 1 - i]):
                out[i + j] += x * y
    return out


def series_pow(a: Sequence[Fraction], k: int, order: int) -> List[Fraction]:
    result = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(k):
        result = series_mul(result, a, order)
    return result


def _padded(coeffs: Sequence, order: int) -> List[Fraction]:
    out = [Fraction(c) for c in coeffs[:order + 1]]
    return out + [Fraction(0)] * (order + 1 - len(out))


@dataclass(frozen=True)
class LogSeries:
    """plain(x) + log_part(x) * Λ truncated at x^order, Λ an opaque constant"""
    order: int
    plain: Tuple[Fraction, ...]
    log_part: Tuple[Fraction, ...]
    log_constant: Fraction = Fraction(1)  # Λ = log(log_constant)

    def coefficient(self, k: int) -> Tuple[Fraction, Fraction]:
        """(rational part, Λ part) of the x^k coefficient"""
        if k > self.order:
            raise ValueError(f"Coefficient x^{k} beyond truncation order {self.order}")
        return self.plain[k], self.log_part[k]

    def times(self, series: Sequence) -> "LogSeries":
        """Product with an ordinary power series"""
        series = _padded(series, self.order)
        return LogSeries(
            order=self.order,
            plain=tuple(series_mul(self.plain, series, self.order)),
            log_part=tuple(series_mul(self.log_part, series, self.order)),
            log_constant=self.log_constant,
        )


def log_series(f: MultiPoly, order: int) -> LogSeries:
    """log f(x) up to x^order, with log f(0) kept symbolic"""
    coeffs = _padded(f.coefficients(), order)
    c = coeffs[0]
    if c <= 0:
        raise NonPositiveConstantTerm(f"Constant term {c} is not positive")
    g = [x / c for x in coeffs]
    plain = [Fraction(0)] * (order + 1)
    for k in range(1, order + 1):
        acc = k * g[k]
        for j in range(1, k):
            acc -= j * plain[j] * g[k - j]
        plain[k] = acc / k
    log_part = [Fraction(0)] * (order + 1)
    if c != 1:
        log_part[0] = Fraction(1)
    return LogSeries(order=order, plain=tuple(plain), log_part=tuple(log_part), log_constant=c)


def exp_series(a: Sequence[Fraction], order: int) -> List[Fraction]:
    """exp of a series with zero constant term"""
    a = _padded(a, order)
    if a[0] != 0:
        raise ValueError("exp_series needs a zero constant term")
    out = [Fraction(1)] + [Fraction(0)] * order
    for k in range(1, order + 1):
        out[k] = sum((j * a[j] * out[k - j] for j in range(1, k + 1)), Fraction(0)) / k
    return out


def power_series(f: MultiPoly, power: int, order: int) -> List[Fraction]:
    """Coefficients of f(x)^power up to x^order"""
    return series_pow(_padded(f.coefficients(), order), power, order)


def product_of_linear(factors: Iterable[Tuple[int, int]]) -> MultiPoly:
    """prod (a + b x) for (a, b) pairs"""
    result = MultiPoly.univariate([1])
    for a, b in factors:
        result = result * MultiPoly.univariate([a, b])
    return result
