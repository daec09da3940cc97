import math
import random
from fractions import Fraction

import pytest

from wittenzeta.errors import BudgetExceeded
from wittenzeta.lattice import levels_of_submatrices
from wittenzeta.linalg import ExactMatrix, inverse
from wittenzeta.polyseries import MultiPoly, edge_matrix, integrate_over_simplex
from wittenzeta.triangulation import (
    DegenerateSimplex, NoIdentityBlock, Simplex, band_regions, band_triangulate,
    barycentric_subdivide, cut_hyperplanes, vertex_denominators, volume,
)
from wittenzeta.witten import integrand_spec
from wittenzeta.rootsystem import build_from_label


# x1, x2, x1 + x2, x1 + 2 x2
B2_FORMS = ExactMatrix.from_rows([[1, 0, 1, 1], [0, 1, 1, 2]])


def test_simplex_basics():
    s = Simplex.standard(2)
    assert s.vertices == ((0, 0), (1, 0), (0, 1))
    assert volume(s) == Fraction(1, 2)
    assert volume(Simplex.standard(3)) == Fraction(1, 6)
    assert s.centroid() == (Fraction(1, 3), Fraction(1, 3))
    assert not s.is_degenerate()
    assert Simplex.of([(0, 0), (1, 1), (2, 2)]).is_degenerate()
    with pytest.raises(ValueError):
        Simplex(dim=2, vertices=((0, 0), (1, 0)))


def test_barycentric_subdivision():
    s = Simplex.of([(0, 0), (1, 0), (0, 1)])
    pieces = barycentric_subdivide(s)
    assert len(pieces) == 6
    assert all(volume(p) == Fraction(1, 12) for p in pieces)
    assert all(p.distinguished_vertex == 0 for p in pieces)
    assert {p.vertices[0] for p in pieces} == set(s.vertices)
    assert all(p.vertices[-1] == s.centroid() for p in pieces)
    assert len(barycentric_subdivide(Simplex.standard(3))) == 24
    with pytest.raises(DegenerateSimplex):
        barycentric_subdivide(Simplex.of([(0, 0), (1, 1), (2, 2)]))


def test_cut_hyperplanes():
    assert cut_hyperplanes(B2_FORMS) == [(2, 1), (3, 1), (3, 2)]
    assert cut_hyperplanes(ExactMatrix.from_rows([[1, -1, -1]])) == []


def test_interval():
    cells = band_triangulate(ExactMatrix.from_rows([[1, 2]]))
    assert [c.bands for c in cells] == [(0, 0), (0, 1)]
    assert [sorted(c.simplex.vertices) for c in cells] == [
        [(0,), (Fraction(1, 2),)],
        [(Fraction(1, 2),), (1,)],
    ]


def test_b2_square():
    cells = band_triangulate(B2_FORMS, expected_denoms={1, 2})
    regions = band_regions(cells)
    assert regions == {
        (0, 0, 0, 0): Fraction(1, 4),
        (0, 0, 0, 1): Fraction(1, 4),
        (0, 0, 1, 1): Fraction(1, 4),
        (0, 0, 1, 2): Fraction(1, 4),
    }
    assert len(cells) == 4
    assert vertex_denominators(cells) == {1, 2}


def test_cells_are_sorted_and_reproducible():
    first = band_triangulate(B2_FORMS)
    second = band_triangulate(B2_FORMS)
    assert first == second
    assert [c.bands for c in first] == sorted(c.bands for c in first)


def test_root_system_integrands():
    for label in ["B2", "A3"]:
        spec = integrand_spec(build_from_label(label))
        levels, _ = levels_of_submatrices(spec.forms)
        cells = band_triangulate(spec.forms, expected_denoms=levels)
        assert sum(volume(c.simplex) for c in cells) == 1
        assert all(any(level % q == 0 for level in levels) for q in vertex_denominators(cells))
    a3 = integrand_spec(build_from_label("A3"))
    assert vertex_denominators(band_triangulate(a3.forms)) == {1}


def test_identity_block_is_required():
    with pytest.raises(NoIdentityBlock):
        band_triangulate(ExactMatrix.from_rows([[1, 1, 1], [1, 2, 0]]))
    with pytest.raises(NoIdentityBlock):
        band_triangulate(ExactMatrix.from_rows([[1, 0], [0, 1]]))


def test_cell_budget():
    with pytest.raises(BudgetExceeded):
        band_triangulate(B2_FORMS, max_cells=2)


@pytest.mark.slow
def test_g2_integrand():
    spec = integrand_spec(build_from_label("G2"))
    cells = band_triangulate(spec.forms)
    assert sum(volume(c.simplex) for c in cells) == 1
    assert vertex_denominators(cells) <= {1, 2, 3}


@pytest.mark.parametrize("vertices", [
    [(0, 0), (1, 0), (0, 1)],
    [(Fraction(1, 3), 0), (2, Fraction(1, 2)), (-1, 3)],
    [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
    [(1, 1, 0), (0, 2, 1), (Fraction(1, 2), 0, 0), (3, 1, 2)],
])
def test_integrals_add_up_over_subdivision(vertices):
    s = Simplex.of(vertices)
    x = [MultiPoly.variable(i, s.dim) for i in range(s.dim)]
    p = x[0] ** 3 * x[1] - 2 * x[1] ** 2 + 5
    if s.dim == 3:
        p = p * (x[2] + 1)
    pieces = barycentric_subdivide(s)
    assert sum((volume(piece) for piece in pieces), Fraction(0)) == volume(s)
    assert sum((integrate_over_simplex(p, piece) for piece in pieces), Fraction(0)) == integrate_over_simplex(p, s)


def _contains(s: Simplex, point) -> bool:
    """Closed simplex membership through barycentric coordinates"""
    offsets = [Fraction(x) - v for x, v in zip(point, s.vertices[0])]
    weights = inverse(edge_matrix(s.vertices)) @ ExactMatrix.from_columns([offsets])
    coords = weights.column(0)
    return all(c >= 0 for c in coords) and sum(coords) <= 1


@pytest.mark.parametrize("label", ["B2", "A3"])
def test_cells_tile_the_cube(label):
    spec = integrand_spec(build_from_label(label))
    cells = band_triangulate(spec.forms)
    rng = random.Random(label)
    # distinct prime denominators keep the points off every cell facet
    primes = [1009, 1013, 1019][:spec.dim]
    for _ in range(25):
        point = [Fraction(rng.randrange(1, p), p) for p in primes]
        containing = [cell for cell in cells if _contains(cell.simplex, point)]
        assert len(containing) == 1
        expected = tuple(
            math.floor(sum((c * x for c, x in zip(spec.forms.column(j), point)), Fraction(0)))
            for j in range(spec.forms.cols)
        )
        assert containing[0].bands == expected
