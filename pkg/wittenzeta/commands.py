"""The computations behind each subcommand, returning CommandResult payloads."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from . import lattice, numeric, rootsystem, triangulation, witten
from .cache import ResultCache
from .numeric import Precision
from .report import CommandResult, decimal, estimate, exact, exact_set, zeta_terms
from .rootsystem import RootSystem


@dataclass
class Settings:
    """Configuration for one invocation, after applying global flags"""
    json: bool = False
    precision: Precision = numeric.DEFAULT_PRECISION
    cache: Optional[ResultCache] = None
    threads: int = 1
    budget: int = lattice.DEFAULT_BUDGET
    weyl_budget: int = 100_000
    cell_budget: int = 20_000
    cutoff: int = 200
    quad_nodes: int = 12

    @property
    def digits(self) -> int:
        return self.precision.target_digits


class Roots:
    """Root data of an irreducible root system"""

    TEMPLATE = """
    Root system {{ label }}: rank {{ rank }}, {{ r }} positive roots
    Cartan matrix:       {{ cartan }}
    Positive roots:      {{ positive_roots }}
    Highest root:        {{ highest_root }}  (H = {{ H }})
    Weyl degrees:        {{ degrees }}  (|W| = {{ weyl_order }})
    Poincare polynomial: {{ poincare }}
    K:                   {{ K }}
    Pairing matrix M:    {{ pairing_matrix }}
    Vanishing orders:    at least {{ vanishing_orders.even }} at negative even, {{ vanishing_orders.odd }} at negative odd integers
    Bad primes:          {{ bad_primes if bad_primes else "none" }}
    """

    @classmethod
    def run(cls, settings: Settings, rs: RootSystem) -> CommandResult:
        return CommandResult(
            command="roots",
            inputs=dict(type=rs.label),
            payload=dict(
                label=rs.label,
                family=rs.family,
                rank=rs.rank,
                r=rs.r,
                cartan=[list(row) for row in rs.cartan],
                positive_roots=[list(beta) for beta in rs.positive_roots],
                highest_root=list(rootsystem.highest_root(rs)),
                H=rootsystem.highest_root_coeffs(rs),
                degrees=list(rootsystem.weyl_degrees(rs)),
                weyl_order=rootsystem.weyl_order(rs),
                poincare=list(rootsystem.poincare_poly(rs, settings.weyl_budget)),
                K=rootsystem.k_phi(rs),
                pairing_matrix=rootsystem.pairing_matrix(rs).int_rows(),
                vanishing_orders=rootsystem.vanishing_orders(rs),
                bad_primes=rootsystem.bad_primes(rs),
            ),
        )


class InvariantSetCommand:
    """D, E, H or T of a root system"""

    TEMPLATE = """
    {{ kind }}({{ phi }}) = { {{- values | join(", ") -}} }
    {%- if budget_spent %}  ({{ budget_spent }} subsets){% endif %}
    """

    @classmethod
    def run(cls, settings: Settings, kind: str, rs: RootSystem) -> CommandResult:
        if kind == "dset":
            result = lattice.dset(rs, settings.budget, settings.threads, settings.cache)
        elif kind == "eset":
            result = lattice.eset(rs, settings.budget, settings.threads, settings.cache)
        elif kind == "hset":
            result = lattice.hset(rs)
        else:
            result = lattice.tset(rs)
        return CommandResult(
            command=kind,
            inputs=dict(type=rs.label, budget=settings.budget),
            payload=dict(kind=result.kind, phi=result.phi, values=exact_set(result.values),
                         budget_spent=result.budget_spent),
        )


class VerifyCommand:
    """E = H u {1} or D = E(dual)"""

    TEMPLATE = """
    {{ phi }}: {{ name }} {{ "holds" if holds else "FAILS" }}
      {{ left.kind }} = { {{- left["values"] | join(", ") -}} }
      {{ right.kind }} = { {{- right["values"] | join(", ") -}} }
    {%- for note in notes %}
      {{ note }}
    {%- endfor %}
    """

    @classmethod
    def run(cls, settings: Settings, which: str, rs: RootSystem) -> CommandResult:
        if which == "verify-eh":
            check = lattice.verify_eh(rs, settings.budget, settings.threads, settings.cache)
        else:
            check = lattice.verify_de(rs, settings.budget, settings.threads, settings.cache)
        sides = [dict(kind=side.kind, phi=side.phi, values=exact_set(side.values))
                 for side in (check.left, check.right)]
        return CommandResult(
            command=which,
            inputs=dict(type=rs.label, budget=settings.budget),
            payload=dict(name=check.name, phi=check.phi, holds=check.holds,
                         left=sides[0], right=sides[1], notes=check.notes),
            holds=check.holds,
        )


class EvenValue:
    """Exact zeta_Phi(2m) as a rational multiple of a power of pi"""

    TEMPLATE = """
    {%- for value in values %}
    zeta_{{ value.phi }}({{ value.s }}) = {{ value.exact }} * pi^{{ value.pi_power }}  ~ {{ value.numeric.value }} +- {{ value.numeric.error }}
      cube integral I({{ value.s }}) = {{ value.integral }} over {{ value.cells }} cells
    {%- endfor %}
    """

    @classmethod
    def run(cls, settings: Settings, rs: RootSystem, s: int, refine: bool, all_values: bool) -> CommandResult:
        if all_values:
            reports = witten.even_value_table([rs.label], s // 2, settings.threads, settings.cell_budget)
        else:
            reports = [witten.exact_even_value(rs, s, settings.threads, settings.cell_budget, refine)]
        values = []
        for report in reports:
            with settings.precision.context():
                approx = numeric.to_mpf(report.exact) * mpmath.pi ** report.pi_power
                rounding = abs(approx) * mpmath.mpf(10) ** (1 - settings.precision.working_digits)
            values.append(dict(
                phi=report.phi,
                s=report.pi_power // rs.r,
                exact=exact(report.exact),
                pi_power=report.pi_power,
                integral=exact(report.metadata["integral"]),
                cells=report.metadata["cells"],
                numeric=estimate(numeric.Estimate(approx, rounding), settings.digits),
            ))
        return CommandResult(
            command="even-value",
            inputs=dict(type=rs.label, s=s, refine=refine, all=all_values),
            payload=dict(values=values),
        )


class Multisum:
    """Truncated sum over strongly dominant weights with a tail bound"""

    TEMPLATE = """
    zeta_{{ phi }}({{ s }}) = {{ value }} +- {{ error }}  (coordinates up to {{ cutoff }})
    """

    @classmethod
    def run(cls, settings: Settings, rs: RootSystem, s: str, cutoff: int) -> CommandResult:
        result = witten.numeric_multisum(rs, s, cutoff, settings.precision)
        return CommandResult(
            command="multisum",
            inputs=dict(type=rs.label, s=s, cutoff=cutoff),
            payload=dict(phi=rs.label, s=s, cutoff=cutoff, **estimate(result, settings.digits)),
        )


class Identity:
    """Bernoulli identities equivalent to the vanishing in rank two"""

    TEMPLATE = """
    identity {{ name }} at n = {{ n }}: {{ "holds" if holds else "FAILS" }}
      lhs = {{ lhs }}
      rhs = {{ rhs }}
    """

    CHECKS = dict(a2=witten.identity_a2, b2=witten.identity_b2, g2=witten.identity_g2)

    @classmethod
    def run(cls, settings: Settings, name: str, n: int) -> CommandResult:
        check = cls.CHECKS[name](n)
        return CommandResult(
            command="identity",
            inputs=dict(name=name, n=n),
            payload=dict(name=check.name, n=check.n, holds=check.holds,
                         lhs=exact(check.lhs), rhs=exact(check.rhs)),
            holds=check.holds,
        )


class PoleCoeffA2:
    """[I_A2(s)][(s+m)^-1] as a combination of zeta products"""

    TEMPLATE = """
    [I_A2(s)][(s+{{ m }})^-1] =
    {%- for term in collected %}
      {{ term.coefficient }} * {% for a in term.zeta %}zeta({{ a }}){% endfor %}
    {%- endfor %}
      ~ {{ numeric.value }} +- {{ numeric.error }}
    derivative of order {{ derivative_order }} at -{{ m }}:
      xi   = {{ xi_derivative.value }} +- {{ xi_derivative.error }}
      zeta = {{ zeta_derivative.value }} +- {{ zeta_derivative.error }}
    """

    @classmethod
    def run(cls, settings: Settings, m: int) -> CommandResult:
        pole = witten.a2_pole_coefficient(m, settings.precision)
        leading = witten.a2_leading_derivative(m, settings.precision)
        return CommandResult(
            command="pole-coeff-a2",
            inputs=dict(m=m),
            payload=dict(
                m=m,
                terms=zeta_terms(pole.terms),
                collected=zeta_terms((c, args) for args, c in pole.collected.items()),
                numeric=estimate(pole.numeric, settings.digits),
                derivative_order=leading["order"],
                xi_derivative=estimate(leading["xi"], settings.digits),
                zeta_derivative=estimate(leading["zeta"], settings.digits),
            ),
        )


class Onodera:
    """zeta''_A2(-m) from the closed bracket against the pole-coefficient route"""

    TEMPLATE = """
    zeta''_A2(-{{ m }}): terms {{ "match" if terms_match else "DIFFER" }}, relative difference {{ relative_difference }}
      closed form: {{ closed_value.value }} +- {{ closed_value.error }}
      derived:     {{ derived_value.value }} +- {{ derived_value.error }}
    """

    @classmethod
    def run(cls, settings: Settings, m: int) -> CommandResult:
        report = witten.onodera_consistency(m, settings.precision)
        tolerance = mpmath.mpf(10) ** (5 - settings.digits)
        holds = report.terms_match and report.relative_difference < tolerance
        return CommandResult(
            command="onodera",
            inputs=dict(m=m),
            payload=dict(
                m=m,
                holds=holds,
                terms_match=report.terms_match,
                closed_value=estimate(report.closed_value, settings.digits),
                derived_value=estimate(report.derived_value, settings.digits),
                relative_difference=mpmath.nstr(report.relative_difference, 5),
            ),
            holds=holds,
        )


class IntRepCheck:
    """Numeric check of the integral representation at real s > 1"""

    TEMPLATE = """
    {{ phi }} at s = {{ s }}: relative residual {{ residual }} ({{ "holds" if holds else "FAILS" }} below {{ threshold }})
      P(s) zeta(s) / K^s             = {{ lhs }}
      ((2 pi i)^s / Gamma(s))^r I(s) = {{ rhs }}
      sine form of the lhs           = {{ sine_lhs }}
    """

    @classmethod
    def run(cls, settings: Settings, rs: RootSystem, s: str) -> CommandResult:
        check = witten.integral_rep_check(rs, s, settings.quad_nodes, settings.cutoff,
                                          settings.precision, settings.threads)
        digits = min(settings.digits, 20)
        return CommandResult(
            command="int-rep-check",
            inputs=dict(type=rs.label, s=s),
            payload=dict(
                phi=rs.label,
                s=s,
                lhs=decimal(check.lhs, digits),
                rhs=decimal(check.rhs, digits),
                residual=mpmath.nstr(check.residual, 5),
                threshold=mpmath.nstr(check.threshold, 1),
                holds=check.holds,
                sine_lhs=decimal(check.sine_lhs, digits),
                integral=estimate(check.integral, digits),
                multisum=estimate(check.multisum, digits),
            ),
            holds=check.holds,
        )


class Triangulate:
    """Band triangulation of the cube integrand of a root system"""

    TEMPLATE = """
    {{ phi }}: {{ cell_count }} simplices in dimension {{ dim }}, total volume {{ volume }}
      levels of the forms: { {{- levels | join(", ") -}} }, vertex denominators: { {{- denominators | join(", ") -}} }
    {%- for region in regions %}
      bands {{ region.bands }}: volume {{ region.volume }}
    {%- endfor %}
    """

    @classmethod
    def run(cls, settings: Settings, rs: RootSystem, emit_cells: bool) -> CommandResult:
        spec = witten.integrand_spec(rs)
        cells, levels = [], set()
        if spec.dim:
            cells = witten.banded_cells(spec, settings.threads, settings.cell_budget)
            levels, _ = lattice.levels_of_submatrices(spec.forms, settings.budget, settings.threads)
        payload = dict(
            phi=rs.label,
            dim=spec.dim,
            forms=[[exact(x) for x in spec.forms.column(j)] for j in range(spec.forms.cols)],
            cell_count=len(cells),
            volume=exact(sum((triangulation.volume(c.simplex) for c in cells), Fraction(0))),
            levels=sorted(levels),
            denominators=sorted(triangulation.vertex_denominators(cells)),
            regions=[dict(bands=list(bands), volume=exact(v))
                     for bands, v in triangulation.band_regions(cells).items()],
        )
        if emit_cells:
            payload["cells"] = [
                dict(bands=list(c.bands), vertices=[[exact(x) for x in v] for v in c.simplex.vertices])
                for c in cells
            ]
        return CommandResult(
            command="triangulate",
            inputs=dict(type=rs.label, emit_cells=emit_cells),
            payload=payload,
        )
