"""Witten zeta values of a root system.

zeta_Phi(s) = K^s sum over strongly dominant lambda of prod_{alpha > 0}
(lambda, alpha^vee)^{-s}. At positive even s the integral representation
over the unit cube of dimension r - n turns into a piecewise polynomial
integral with rational value, which is what exact_even_value evaluates.
The rank-two identities and the A2 pole coefficient are exact Bernoulli and
zeta bookkeeping; the rest is checked numerically.
"""
from __future__ import annotations

import math
import time
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath

from .errors import ComputationError
from .lattice import DEFAULT_BUDGET, levels_of_submatrices
from .linalg import ExactMatrix
from .logging import debug
from .numeric import (
    DEFAULT_PRECISION, Estimate, NotConvergent, Precision, cells_quadrature, gamma,
    hurwitz_at, poincare_exponential, poincare_sine_factor, riemann_zeta,
    singular_grading, to_mpf, zeta_value,
)
from .parallel import parallel_map
from .polyseries import (
    MultiPoly, bernoulli_polynomial, factorial, integrate_standard, jacobian,
    log_series, power_series, product_of_linear, pullback_affine, zeta_neg_int,
)
from .rootsystem import RootSystem, build_from_label, k_phi, pairing_matrix, weyl_order
from .triangulation import BandedCell, band_triangulate, barycentric_subdivide


MAX_EXACT_DIMENSION = 4

# residual accepted by integral_rep_check, by dimension of the cube
REP_CHECK_TOLERANCE = {1: mpmath.mpf(10) ** -6, 2: mpmath.mpf(10) ** -4}


class DimensionUnsupported(ComputationError):
    pass


@dataclass(frozen=True)
class IntegrandSpec:
    """Linear forms of the cube integrand, one column per positive root.

    The first r - n columns are the coordinates x_alpha of the non-simple
    roots, the last n are the wrapped forms -sum_alpha (lambda_i, alpha^vee) x_alpha
    whose fractional parts enter the integrand.
    """
    phi: str
    dim: int
    forms: ExactMatrix
    identity_count: int
    wrapped_count: int

    def wrapped(self, i: int) -> Tuple[Fraction, ...]:
        return self.forms.column(self.identity_count + i)


@dataclass
class WittenReport:
    phi: str
    quantity: str
    exact: Optional[Fraction] = None
    pi_power: int = 0
    numeric: Optional[Estimate] = None
    normalization: str = "zeta"
    metadata: Dict = field(default_factory=dict)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    n: int
    holds: bool
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class PoleCoefficient:
    m: int
    terms: Tuple[Tuple[Fraction, Tuple[int, ...]], ...]
    collected: Dict[Tuple[int, ...], Fraction]
    numeric: Estimate


@dataclass(frozen=True)
class OnoderaReport:
    m: int
    terms_match: bool
    closed_form: Dict[Tuple[int, ...], Fraction]
    derived: Dict[Tuple[int, ...], Fraction]
    closed_value: Estimate
    derived_value: Estimate
    relative_difference: mpmath.mpf


@dataclass(frozen=True)
class IntegralRepCheck:
    phi: str
    s: mpmath.mpf
    lhs: mpmath.mpc
    rhs: mpmath.mpc
    sine_lhs: mpmath.mpc
    residual: mpmath.mpf
    integral: Estimate
    multisum: Estimate
    threshold: mpmath.mpf
    holds: bool


def integrand_spec(rs: RootSystem) -> IntegrandSpec:
    m = pairing_matrix(rs)
    n, r = m.rows, m.cols
    dim = r - n
    identity = [[int(a == b) for b in range(dim)] for a in range(dim)]
    wrapped = [[-m[i, n + a] for a in range(dim)] for i in range(n)]
    return IntegrandSpec(
        phi=rs.label,
        dim=dim,
        forms=ExactMatrix.from_columns(identity + wrapped) if dim else ExactMatrix(0, r, []),
        identity_count=dim,
        wrapped_count=n,
    )


def _hurwitz_factor(m: int) -> MultiPoly:
    """zeta(1-2m, y) = -B_2m(y)/(2m) as a polynomial in y"""
    return bernoulli_polynomial(2 * m) * Fraction(-1, 2 * m)


def _integrate_cell(args) -> Fraction:
    vertices, bands, columns, m = args
    factor = _hurwitz_factor(m)
    d = len(vertices) - 1
    product = MultiPoly.constant(d, 1)
    for coeffs, band in zip(columns, bands):
        shifted = pullback_affine(coeffs, -band, vertices)
        product = product * factor.compose(shifted)
    return jacobian(vertices) * integrate_standard(product)


def banded_cells(spec: IntegrandSpec, threads: int = 1, max_cells: int = 20_000,
                 refine: bool = False) -> List[BandedCell]:
    levels, _ = levels_of_submatrices(spec.forms, DEFAULT_BUDGET, threads)
    cells = band_triangulate(spec.forms, expected_denoms=levels, threads=threads, max_cells=max_cells)
    if refine:
        cells = [BandedCell(simplex=piece, bands=cell.bands)
                 for cell in cells for piece in barycentric_subdivide(cell.simplex)]
    return cells


def cube_integral(spec: IntegrandSpec, m: int, threads: int = 1, max_cells: int = 20_000,
                  refine: bool = False) -> Tuple[Fraction, int]:
    """I(2m): the cube integral of prod zeta(1-2m, {form}), and the number of cells used"""
    if spec.dim == 0:
        # no variables: every wrapped form is 0 and B_2m(0) = B_2m(1)
        return _hurwitz_factor(m).evaluate([0]) ** spec.wrapped_count, 1
    cells = banded_cells(spec, threads, max_cells, refine)
    columns = [spec.forms.column(j) for j in range(spec.forms.cols)]
    chunks = [(c.simplex.vertices, c.bands, columns, m) for c in cells]
    total = sum(parallel_map(_integrate_cell, chunks, threads), Fraction(0))
    return total, len(cells)


def a2_integral(m: int) -> Fraction:
    """I_A2(2m) from the one-variable integrand zeta(1-2m, x) zeta(1-2m, 1-x)^2"""
    factor = _hurwitz_factor(m)
    one_minus_x = MultiPoly.univariate([1, -1])
    return integrate_standard(factor * factor.compose(one_minus_x) ** 2)


def a2_generic_integral(m: int, threads: int = 1) -> Fraction:
    """I_A2(2m) through the banded triangulation, for comparison with a2_integral"""
    value, _ = cube_integral(integrand_spec(build_from_label("A2")), m, threads)
    return value


def even_value_from_integral(rs: RootSystem, m: int, integral: Fraction) -> Fraction:
    """zeta(2m) / pi^{2mr} = K^{2m} ((-1)^m 2^{2m} / (2m-1)!)^r I(2m) / |W|"""
    gamma_factor = Fraction((-1) ** m * 2 ** (2 * m), factorial(2 * m - 1))
    return Fraction(k_phi(rs)) ** (2 * m) * gamma_factor ** rs.r * integral / weyl_order(rs)


def exact_even_value(rs: RootSystem, s: int, threads: int = 1, max_cells: int = 20_000,
                     refine: bool = False) -> WittenReport:
    """Exact rational q with zeta_Phi(s) = q pi^{s r}, for s positive and even"""
    if s < 2 or s % 2:
        raise ValueError(f"Exact values need a positive even s, got {s}")
    m = s // 2
    spec = integrand_spec(rs)
    if spec.dim > MAX_EXACT_DIMENSION:
        raise DimensionUnsupported(
            f"{rs.label} needs a {spec.dim}-dimensional triangulation, above {MAX_EXACT_DIMENSION}")
    started = time.perf_counter()
    if rs.label == "A2" and not refine:
        integral, cells = a2_integral(m), 1
    else:
        integral, cells = cube_integral(spec, m, threads, max_cells, refine)
    value = even_value_from_integral(rs, m, integral)
    debug(f"zeta_{rs.label}({s}) = {value} pi^{s * rs.r} from {cells} cells")
    return WittenReport(
        phi=rs.label,
        quantity="even_value",
        exact=value,
        pi_power=s * rs.r,
        metadata=dict(integral=integral, cells=cells,
                      seconds=round(time.perf_counter() - started, 3)),
    )


def even_value_table(labels: Sequence[str], m_max: int, threads: int = 1,
                     max_cells: int = 20_000) -> List[WittenReport]:
    reports = []
    for label in labels:
        rs = build_from_label(label)
        for m in range(1, m_max + 1):
            reports.append(exact_even_value(rs, 2 * m, threads, max_cells))
    return reports


def _tail_bound(columns: Sequence[Sequence[int]], n: int, s, cutoff: int, zeta_s):
    """Bound for the terms with some coordinate above cutoff.

    If m_j is the largest coordinate, every root whose coroot involves
    alpha_j^vee contributes a factor at most m_j^{-s}; the other coordinates
    are summed freely.
    """
    bound = mpmath.mpf(0)
    for j in range(n):
        c = sum(1 for col in columns if col[j] > 0)
        exponent = s * c
        bound += zeta_s ** (n - 1) * mpmath.mpf(cutoff) ** (1 - exponent) / (exponent - 1)
    return bound


def numeric_multisum(rs: RootSystem, s, cutoff: int = 200,
                     prec: Precision = DEFAULT_PRECISION) -> Estimate:
    """zeta_Phi(s) summed over strongly dominant weights with coordinates up to cutoff"""
    with prec.context():
        s = to_mpf(s)
        if mpmath.im(s) != 0 or s <= 1:
            raise NotConvergent(f"The multiple sum is only used for real s > 1, got {mpmath.nstr(s, 10)}")
        m = pairing_matrix(rs)
        n = m.rows
        columns = [tuple(int(x) for x in m.column(j)) for j in range(m.cols)]
        largest = sum(max(col[i] for col in columns) for i in range(n)) * cutoff
        powers = [mpmath.mpf(0)] + [mpmath.mpf(k) ** (-s) for k in range(1, largest + 1)]

        def terms():
            for weight in _grid(n, cutoff):
                term = mpmath.mpf(1)
                for col in columns:
                    term *= powers[sum(w * c for w, c in zip(weight, col))]
                yield term

        partial = mpmath.fsum(terms())
        tail = _tail_bound(columns, n, s, cutoff, riemann_zeta(s, prec).value)
        scale = mpmath.mpf(k_phi(rs)) ** s
        return Estimate(value=scale * partial, error=scale * tail)


def _grid(n: int, cutoff: int):
    if n == 0:
        yield ()
        return
    for head in range(1, cutoff + 1):
        for rest in _grid(n - 1, cutoff):
            yield (head,) + rest


ZetaTerm = Tuple[Fraction, Tuple[int, ...]]


def _collect(terms: Sequence[ZetaTerm]) -> Dict[Tuple[int, ...], Fraction]:
    collected: Dict[Tuple[int, ...], Fraction] = defaultdict(Fraction)
    for coefficient, arguments in terms:
        collected[tuple(sorted(arguments))] += coefficient
    return {k: v for k, v in sorted(collected.items()) if v}


def a2_pole_terms(m: int) -> List[ZetaTerm]:
    """Closed form of [I_A2(s)][(s+m)^{-1}]:
    sum_j C(m+j,j) C(2m-j,m-j) zeta(1+m+j) zeta(1+2m-j) (1+2(-1)^j)
    + C(3m+1,2m+1)/2 zeta(3m+2)"""
    if m < 1:
        raise ValueError("The pole coefficient is defined for m >= 1")
    terms = [
        (Fraction(math.comb(m + j, j) * math.comb(2 * m - j, m - j) * (1 + 2 * (-1) ** j)),
         (1 + m + j, 1 + 2 * m - j))
        for j in range(m + 1)
    ]
    terms.append((Fraction(math.comb(3 * m + 1, 2 * m + 1), 2), (3 * m + 2,)))
    return terms


def _shifted_zeta_series(m: int, sign: int, order: int) -> List[Dict[Tuple[int, ...], Fraction]]:
    """Taylor coefficients of zeta(1+m, 1 + sign x) = sum_k C(m+k,k) (-sign)^k zeta(1+m+k) x^k"""
    return [{(1 + m + k,): Fraction(math.comb(m + k, k) * (-sign) ** k)} for k in range(order + 1)]


def _symbolic_product(a: Dict, b: Dict) -> Dict:
    out: Dict[Tuple[int, ...], Fraction] = defaultdict(Fraction)
    for ka, va in a.items():
        for kb, vb in b.items():
            out[tuple(sorted(ka + kb))] += va * vb
    return out


def _series_coefficient(a: List[Dict], b: List[Dict], k: int) -> Dict:
    out: Dict[Tuple[int, ...], Fraction] = defaultdict(Fraction)
    for i in range(k + 1):
        for key, value in _symbolic_product(a[i], b[k - i]).items():
            out[key] += value
    return out


def a2_pole_terms_derived(m: int) -> List[ZetaTerm]:
    """[I_A2(s)][(s+m)^{-1}] from the expansion
    [zeta(1+m,1-x)^2][x^m] + 2[zeta(1+m,1-x) zeta(1+m,1+x)][x^m] + [zeta(1+m,1-x)][x^{2m+1}]/2"""
    left = _shifted_zeta_series(m, -1, 2 * m + 1)
    right = _shifted_zeta_series(m, 1, m)
    terms: List[ZetaTerm] = []
    for key, value in _series_coefficient(left, left, m).items():
        terms.append((value, key))
    for key, value in _series_coefficient(left, right, m).items():
        terms.append((2 * value, key))
    for key, value in left[2 * m + 1].items():
        terms.append((value / 2, key))
    return terms


def a2_pole_coefficient(m: int, prec: Precision = DEFAULT_PRECISION) -> PoleCoefficient:
    terms = a2_pole_terms(m)
    return PoleCoefficient(
        m=m,
        terms=tuple(terms),
        collected=_collect(terms),
        numeric=zeta_value(terms, prec),
    )


def _cube_prefactor(m: int, prec: Precision):
    """((-2 pi i)^{-m} m!)^3"""
    with prec.context():
        return ((-2j * mpmath.pi) ** (-m) * factorial(m)) ** 3


def _scaled(estimate: Estimate, factor, prec: Precision) -> Estimate:
    """factor times an estimate, with one more rounding"""
    value = factor * estimate.value
    return Estimate(value=value,
                    error=abs(factor) * estimate.error + abs(value) * mpmath.mpf(10) ** (1 - prec.working_digits))


def a2_leading_derivative(m: int, prec: Precision = DEFAULT_PRECISION) -> Dict[str, object]:
    """First non-vanishing derivative of xi_A2 (and zeta_A2) at -m, as estimates"""
    coefficient = zeta_value(a2_pole_terms_derived(m), prec)
    with prec.context():
        prefactor = _cube_prefactor(m, prec)
        if m % 2 == 0:
            # prefactor is real for even m
            order, factor = 2, mpmath.re(prefactor) / 3
        else:
            order, factor = 1, mpmath.re(1j / mpmath.pi * prefactor)
        xi = _scaled(coefficient, factor, prec)
        return dict(order=order, xi=xi, zeta=_scaled(xi, 1 / mpmath.mpf(2) ** m, prec))


def onodera_consistency(m: int, prec: Precision = DEFAULT_PRECISION) -> OnoderaReport:
    """zeta''_A2(-m) from the closed bracket against the pole-coefficient expansion"""
    if m < 2 or m % 2:
        raise ValueError(f"The second-derivative formula needs an even m >= 2, got {m}")
    closed = a2_pole_terms(m)
    derived = a2_pole_terms_derived(m)
    with prec.context():
        # (2 pi)^{3m} 2^m / (m!)^3 zeta''(-m) = (-1)^{m/2} / 3 [bracket]
        scale = factorial(m) ** 3 / ((2 * mpmath.pi) ** (3 * m) * mpmath.mpf(2) ** m)
        closed_value = _scaled(zeta_value(closed, prec), scale * (-1) ** (m // 2) / 3, prec)
        derived_value = a2_leading_derivative(m, prec)["zeta"]
        relative = abs(closed_value.value - derived_value.value) / abs(closed_value.value)
    return OnoderaReport(
        m=m,
        terms_match=_collect(closed) == _collect(derived),
        closed_form=_collect(closed),
        derived=_collect(derived),
        closed_value=closed_value,
        derived_value=derived_value,
        relative_difference=relative,
    )


def _f_identity(name: str, n: int, f: MultiPoly, divisor: int, base: int, exponent: int) -> IdentityCheck:
    """Identity of the shape, with d = deg f and t = 2d + 2,

        zeta(-(t+2)n - 1) / divisor * (1 + base^{-1-exponent n}) [f^{2n} log f][x^{1+tn}]
          = sum_{k <= 2dn} [f^{2n}][x^k] zeta(-k-2n) zeta(k-tn)
    """
    degree = f.degree()
    t = 2 * degree + 2
    order = 1 + t * n
    powered = power_series(f, 2 * n, order)
    plain, log_part = log_series(f, order).times(powered).coefficient(order)
    if log_part != 0:
        raise ComputationError(f"log f(0) survives in the x^{order} coefficient of {name}")
    lhs = (zeta_neg_int((t + 2) * n + 1) / divisor
           * (1 + Fraction(1, base ** (1 + exponent * n))) * plain)
    rhs = sum((powered[k] * zeta_neg_int(k + 2 * n) * zeta_neg_int(t * n - k)
               for k in range(2 * degree * n + 1)), Fraction(0))
    return IdentityCheck(name=name, n=n, holds=lhs == rhs, lhs=lhs, rhs=rhs)


def identity_a2(n: int) -> IdentityCheck:
    """(2n)!/(4n+1)! zeta(-6n-1) = sum_{k<=2n} zeta(-k-2n) zeta(k-4n) / (k! (2n-k)!)"""
    if n < 1:
        raise ValueError("Identities are indexed from n = 1")
    lhs = Fraction(factorial(2 * n), factorial(4 * n + 1)) * zeta_neg_int(6 * n + 1)
    rhs = sum((zeta_neg_int(k + 2 * n) * zeta_neg_int(4 * n - k)
               / (factorial(k) * factorial(2 * n - k)) for k in range(2 * n + 1)), Fraction(0))
    return IdentityCheck(name="a2", n=n, holds=lhs == rhs, lhs=lhs, rhs=rhs)


def identity_b2(n: int) -> IdentityCheck:
    """f_B = (1+x)(1+2x): zeta(-8n-1)/3 (1 + 2^{-1-4n}) [f^{2n} log f][x^{1+6n}]
    = sum_{k<=4n} [f^{2n}][x^k] zeta(-k-2n) zeta(k-6n)"""
    if n < 1:
        raise ValueError("Identities are indexed from n = 1")
    return _f_identity("b2", n, product_of_linear([(1, 1), (1, 2)]), divisor=3, base=2, exponent=4)


def identity_g2(n: int) -> IdentityCheck:
    """f_G = (1+x)(1+2x)(1+3x)(2+3x): zeta(-12n-1)/5 (1 + 3^{-1-6n}) [f^{2n} log f][x^{1+10n}]
    = sum_{k<=8n} [f^{2n}][x^k] zeta(-k-2n) zeta(k-10n)"""
    if n < 1:
        raise ValueError("Identities are indexed from n = 1")
    return _f_identity("g2", n, product_of_linear([(1, 1), (1, 2), (1, 3), (2, 3)]),
                       divisor=5, base=3, exponent=6)


def integral_rep_check(rs: RootSystem, s, quad_nodes: int = 12, cutoff: int = 200,
                       prec: Precision = DEFAULT_PRECISION, threads: int = 1) -> IntegralRepCheck:
    """P(s) zeta_Phi(s) / K^s against ((2 pi i)^s / Gamma(s))^r I(s) for real s > 1.

    P(s) is also evaluated in its sine form e^{pi i s r/2} prod sin(pi s d/2)/sin(pi s/2)
    and reported next to the exponential sum.
    """
    spec = integrand_spec(rs)
    if spec.dim not in (1, 2):
        raise DimensionUnsupported(f"Quadrature of the cube integral is done for r - n <= 2, {rs.label} has {spec.dim}")
    multisum = numeric_multisum(rs, s, cutoff, prec)
    cells = banded_cells(spec, threads)
    columns = [spec.forms.column(j) for j in range(spec.forms.cols)]
    with prec.context():
        s_value = to_mpf(s)

        def integrand(x, bands):
            value = mpmath.mpf(1)
            for coeffs, band in zip(columns, bands):
                y = mpmath.fsum(to_mpf(c) * xi for c, xi in zip(coeffs, x)) - band
                value *= hurwitz_at(s_value, y)
            return value

        integral = cells_quadrature(integrand, cells, quad_nodes, prec, tolerance=mpmath.mpf(10) ** -8,
                                    grading=singular_grading(s))
        xi = multisum.value / mpmath.mpf(k_phi(rs)) ** s_value
        lhs = poincare_exponential(rs, s_value, prec) * xi
        sine_lhs = mpmath.expjpi(s_value * rs.r / 2) * poincare_sine_factor(rs, s, prec) * xi
        rhs = ((2j * mpmath.pi) ** s_value / gamma(s_value, prec)) ** rs.r * integral.value
        # P(s) vanishes at some odd s (A2 at 3), so measure against xi as well
        residual = abs(lhs - rhs) / max(abs(lhs), abs(rhs), abs(xi))
    return IntegralRepCheck(phi=rs.label, s=s_value, lhs=lhs, rhs=rhs, sine_lhs=sine_lhs,
                            residual=residual, integral=integral, multisum=multisum,
                            threshold=REP_CHECK_TOLERANCE[spec.dim],
                            holds=residual < REP_CHECK_TOLERANCE[spec.dim])
