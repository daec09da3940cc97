"""Rational simplices, barycentric subdivision and the band triangulation of
the unit cube.

A band triangulation tiles [0,1]^d by simplices on each of which every
given integral linear form l stays inside one unit band N <= l(x) <= N+1.
It is built by slicing the cube with every hyperplane l(x) = N that meets
its interior, then triangulating each convex piece by pulling from its
lexicographically least vertex.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import BudgetExceeded, ComputationError
from .linalg import ExactMatrix
from .logging import debug, warn
from .parallel import parallel_map
from .polyseries import DegenerateSimplex, edge_matrix, factorial


__all__ = [
    "BandedCell", "DegenerateSimplex", "NoIdentityBlock", "Simplex",
    "band_regions", "band_triangulate", "barycentric_subdivide",
    "cut_hyperplanes", "vertex_denominators", "volume",
]


Point = Tuple[Fraction, ...]


class NoIdentityBlock(ComputationError):
    pass


@dataclass(frozen=True)
class Simplex:
    dim: int
    vertices: Tuple[Point, ...]
    distinguished_vertex: Optional[int] = None

    def __post_init__(self):
        if len(self.vertices) != self.dim + 1:
            raise ValueError(f"A {self.dim}-simplex has {self.dim + 1} vertices, got {len(self.vertices)}")
        if any(len(v) != self.dim for v in self.vertices):
            raise ValueError(f"Vertices of a {self.dim}-simplex must lie in R^{self.dim}")

    @classmethod
    def of(cls, vertices: Iterable[Sequence], distinguished_vertex: Optional[int] = None) -> "Simplex":
        points = tuple(tuple(Fraction(x) for x in v) for v in vertices)
        return cls(dim=len(points) - 1, vertices=points, distinguished_vertex=distinguished_vertex)

    @classmethod
    def standard(cls, dim: int) -> "Simplex":
        return cls.of([[0] * dim] + [[int(i == j) for j in range(dim)] for i in range(dim)])

    def centroid(self) -> Point:
        n = len(self.vertices)
        return tuple(sum(coords, Fraction(0)) / n for coords in zip(*self.vertices))

    def is_degenerate(self) -> bool:
        return self.dim > 0 and edge_matrix(self.vertices).det() == 0


@dataclass(frozen=True)
class BandedCell:
    simplex: Simplex
    bands: Tuple[int, ...]


def volume(s: Simplex) -> Fraction:
    """|det(edge matrix)| / d!"""
    if s.dim == 0:
        return Fraction(1)
    return abs(edge_matrix(s.vertices).det()) / factorial(s.dim)


def barycentric_subdivide(s: Simplex) -> List[Simplex]:
    """(d+1)! simplices, one per ordering of the vertices.

    The piece for the ordering v_0, v_1, ... has vertices the barycenters of
    {v_0}, {v_0, v_1}, ...; its distinguished vertex is v_0, listed first.
    """
    if s.is_degenerate():
        raise DegenerateSimplex("Cannot subdivide a degenerate simplex")
    pieces = []
    for order in itertools.permutations(range(s.dim + 1)):
        barycenters = []
        for k in range(1, s.dim + 2):
            chosen = [s.vertices[i] for i in order[:k]]
            barycenters.append(tuple(sum(c, Fraction(0)) / k for c in zip(*chosen)))
        pieces.append(Simplex(dim=s.dim, vertices=tuple(barycenters), distinguished_vertex=0))
    return pieces


def _dot(coeffs: Sequence, point: Sequence[Fraction]) -> Fraction:
    return sum((c * x for c, x in zip(coeffs, point)), Fraction(0))


def _affine_dim(points: Sequence[Point]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    if not diffs:
        return 0
    return ExactMatrix.from_rows(diffs).rank()


def _rank(vectors: Sequence[Sequence]) -> int:
    return ExactMatrix.from_rows(vectors).rank() if vectors else 0


# A convex polytope is kept as (vertices, constraints) with constraints a.x <= b
Constraint = Tuple[Tuple[Fraction, ...], Fraction]


@dataclass(frozen=True)
class _Polytope:
    vertices: Tuple[Point, ...]
    constraints: Tuple[Constraint, ...]

    def tight(self, point: Point) -> FrozenSet[int]:
        return frozenset(k for k, (a, b) in enumerate(self.constraints) if _dot(a, point) == b)


def _unit_cube(d: int) -> _Polytope:
    vertices = tuple(tuple(Fraction(x) for x in corner) for corner in itertools.product((0, 1), repeat=d))
    constraints = []
    for i in range(d):
        unit = tuple(Fraction(int(i == j)) for j in range(d))
        constraints.append((tuple(-x for x in unit), Fraction(0)))
        constraints.append((unit, Fraction(1)))
    return _Polytope(vertices, tuple(constraints))


def _slice(poly: _Polytope, coeffs: Tuple[Fraction, ...], level: Fraction, d: int) -> List[_Polytope]:
    """Split poly by coeffs.x = level, or return it whole if the plane misses its interior"""
    sides = [_dot(coeffs, v) - level for v in poly.vertices]
    if all(x >= 0 for x in sides) or all(x <= 0 for x in sides):
        return [poly]
    tight = [poly.tight(v) for v in poly.vertices]
    normals = [a for a, _ in poly.constraints]
    crossing = []
    for i, j in itertools.combinations(range(len(poly.vertices)), 2):
        if sides[i] * sides[j] >= 0:
            continue
        common = tight[i] & tight[j]
        if _rank([normals[k] for k in common]) < d - 1:
            continue
        u, v = poly.vertices[i], poly.vertices[j]
        t = sides[i] / (sides[i] - sides[j])
        crossing.append(tuple(a + t * (b - a) for a, b in zip(u, v)))
    on_plane = [v for v, x in zip(poly.vertices, sides) if x == 0]
    below = [v for v, x in zip(poly.vertices, sides) if x < 0]
    above = [v for v, x in zip(poly.vertices, sides) if x > 0]
    cut = list(dict.fromkeys(on_plane + crossing))
    neg = tuple(-c for c in coeffs)
    return [
        _Polytope(tuple(below + cut), poly.constraints + ((coeffs, level),)),
        _Polytope(tuple(above + cut), poly.constraints + ((neg, -level),)),
    ]


def _facets(poly: _Polytope, face: FrozenSet[int], dim: int) -> List[FrozenSet[int]]:
    found = []
    for a, b in poly.constraints:
        sub = frozenset(k for k in face if _dot(a, poly.vertices[k]) == b)
        if sub == face or sub in found:
            continue
        if _affine_dim([poly.vertices[k] for k in sorted(sub)]) == dim - 1:
            found.append(sub)
    return found


def _pull(poly: _Polytope, face: FrozenSet[int], dim: int) -> List[Tuple[int, ...]]:
    """Pulling triangulation of a face, as tuples of vertex indices"""
    if dim == 0:
        return [(min(face),)]
    apex = min(face, key=lambda k: poly.vertices[k])
    simplices = []
    for facet in _facets(poly, face, dim):
        if apex in facet:
            continue
        for s in _pull(poly, facet, dim - 1):
            simplices.append(s + (apex,))
    return simplices


def _triangulate_polytope(poly: _Polytope) -> List[Tuple[Point, ...]]:
    d = len(poly.vertices[0])
    simplices = _pull(poly, frozenset(range(len(poly.vertices))), d)
    return [tuple(poly.vertices[k] for k in s) for s in simplices]


def _check_identity_block(forms: ExactMatrix) -> None:
    d, m = forms.rows, forms.cols
    if m <= d:
        raise NoIdentityBlock(f"Need more than {d} forms in {d} variables, got {m}")
    columns = {forms.column(j) for j in range(m)}
    for i in range(d):
        unit = tuple(Fraction(int(i == j)) for j in range(d))
        if unit not in columns:
            raise NoIdentityBlock(f"Form matrix has no identity column e_{i + 1}")


def cut_hyperplanes(forms: ExactMatrix) -> List[Tuple[int, int]]:
    """(form index, N) for every hyperplane l(x) = N crossing the open unit cube"""
    cuts = []
    for j in range(forms.cols):
        c = forms.column(j)
        low = sum((min(x, 0) for x in c), Fraction(0))
        high = sum((max(x, 0) for x in c), Fraction(0))
        for n in range(math.floor(low) + 1, math.ceil(high)):
            cuts.append((j, n))
    return cuts


def _band_of(forms: ExactMatrix, s: Simplex) -> Tuple[int, ...]:
    centre = s.centroid()
    bands = []
    for j in range(forms.cols):
        c = forms.column(j)
        n = math.floor(_dot(c, centre))
        values = [_dot(c, v) for v in s.vertices]
        if min(values) < n or max(values) > n + 1:
            raise ComputationError(f"Form {j} leaves its band [{n}, {n + 1}] on a cell")
        bands.append(n)
    return tuple(bands)


def vertex_denominators(cells: Iterable[BandedCell]) -> Set[int]:
    return {x.denominator for cell in cells for v in cell.simplex.vertices for x in v}


def band_regions(cells: Iterable[BandedCell]) -> Dict[Tuple[int, ...], Fraction]:
    """Total volume of the cells sharing each band signature"""
    regions: Dict[Tuple[int, ...], Fraction] = defaultdict(Fraction)
    for cell in cells:
        regions[cell.bands] += volume(cell.simplex)
    return dict(sorted(regions.items()))


def band_triangulate(forms: ExactMatrix, expected_denoms: Optional[Set[int]] = None,
                     threads: int = 1, max_cells: int = 20_000) -> List[BandedCell]:
    """Band triangulation of [0,1]^d for the columns of a d x m integer matrix.

    Vertex denominators are compared with expected_denoms (the levels of the
    invertible d x d submatrices of forms); a mismatch is reported, not fatal.
    """
    _check_identity_block(forms)
    d = forms.rows
    pieces = [_unit_cube(d)]
    for j, n in cut_hyperplanes(forms):
        coeffs = forms.column(j)
        pieces = [part for poly in pieces for part in _slice(poly, coeffs, Fraction(n), d)]
        if len(pieces) > max_cells:
            raise BudgetExceeded(f"Slicing produced more than {max_cells} pieces")
    debug(f"Cube sliced into {len(pieces)} convex pieces")

    cells = []
    for simplices in parallel_map(_triangulate_polytope, pieces, threads):
        for vertices in simplices:
            s = Simplex(dim=d, vertices=tuple(vertices))
            cells.append(BandedCell(simplex=s, bands=_band_of(forms, s)))
        if len(cells) > max_cells:
            raise BudgetExceeded(f"Triangulation needs more than {max_cells} simplices")
    cells.sort(key=lambda c: (c.bands, sorted(c.simplex.vertices)))

    if expected_denoms is not None:
        bad = {q for q in vertex_denominators(cells) if not any(e % q == 0 for e in expected_denoms)}
        if bad:
            warn(f"Vertex denominators {sorted(bad)} divide no level in {sorted(expected_denoms)}")
    debug(f"Band triangulation has {len(cells)} simplices")
    return cells
