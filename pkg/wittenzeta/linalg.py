"""Exact dense linear algebra over the integers and the rationals.

Matrices are small (rank at most 8, a few hundred columns at most), so
everything is plain Python integers and Fractions with no floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .errors import ComputationError


class Singular(ComputationError):
    pass


class NonIntegral(ComputationError):
    pass


class NotFullRank(ComputationError):
    pass


class ShapeMismatch(ComputationError):
    pass


class ExactMatrix:
    """Immutable rows x cols matrix of reduced Fractions, stored row-major"""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        values = tuple(Fraction(e) for e in entries)
        if rows * cols != len(values):
            raise ShapeMismatch(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(values)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", values)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeMismatch("Rows have different lengths")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "ExactMatrix":
        return cls.from_rows(list(zip(*columns))) if columns else cls(0, 0, [])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.to_lists()!r})"

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> List[List]:
        """Rows as lists, with integral entries given as int"""
        return [[int(e) if e.denominator == 1 else e for e in self.row(i)] for i in range(self.rows)]

    def int_rows(self) -> List[List[int]]:
        if not self.is_integral():
            raise NonIntegral("Matrix has non-integral entries")
        return [[int(e) for e in self.row(i)] for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        return ExactMatrix(self.rows, other.cols, [
            sum((self[i, k] * other[k, j] for k in range(self.cols)), Fraction(0))
            for i in range(self.rows) for j in range(other.cols)
        ])

    def select_columns(self, indices: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix.from_columns([self.column(j) for j in indices])

    def delete(self, row: int, column: int) -> "ExactMatrix":
        """Minor obtained by deleting one row and one column"""
        return ExactMatrix.from_rows([
            [e for j, e in enumerate(self.row(i)) if j != column]
            for i in range(self.rows) if i != row
        ])

    def rank(self) -> int:
        return len(_echelon_pivots([list(self.row(i)) for i in range(self.rows)]))

    def det(self) -> Fraction:
        if not self.is_square():
            raise ShapeMismatch("Determinant of a non-square matrix")
        if self.is_integral():
            return Fraction(int_det(self.int_rows()))
        a = [list(self.row(i)) for i in range(self.rows)]
        n, sign, result = self.rows, 1, Fraction(1)
        for k in range(n):
            pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != k:
                a[k], a[pivot] = a[pivot], a[k]
                sign = -sign
            result *= a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] / a[k][k]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return sign * result


def _echelon_pivots(a: List[List[Fraction]]) -> List[int]:
    """Row reduce a in place, return pivot columns"""
    pivots = []
    r = 0
    rows = len(a)
    cols = len(a[0]) if a else 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, rows):
            if a[i][c] != 0:
                f = Fraction(a[i][c]) / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def int_det(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix"""
    m = [list(r) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(m: ExactMatrix) -> ExactMatrix:
    """Gauss-Jordan inverse over the rationals"""
    if not m.is_square():
        raise ShapeMismatch("Only square matrices can be inverted")
    n = m.rows
    a = [list(m.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            raise Singular("Matrix is singular")
        a[c], a[pivot] = a[pivot], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return ExactMatrix(n, n, [a[i][n + j] for i in range(n) for j in range(n)])


@dataclass(frozen=True)
class SnfResult:
    d: Tuple[int, ...]
    u: ExactMatrix
    v: ExactMatrix


def _smith(a: List[List[int]], track: bool):
    """In-place Smith reduction, returning (diagonal, u, v) with u, v as lists

    The pivot is always the entry of smallest nonzero absolute value in the
    remaining block, which keeps entry growth small.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)] if track else None
    v = [[int(i == j) for j in range(cols)] for i in range(cols)] if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(target, source, q):
        # row_target -= q * row_source
        a[target] = [x - q * y for x, y in zip(a[target], a[source])]
        if track:
            u[target] = [x - q * y for x, y in zip(u[target], u[source])]

    def add_col(target, source, q):
        for row in a:
            row[target] -= q * row[source]
        if track:
            for row in v:
                row[target] -= q * row[source]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                d = [a[i][i] for i in range(min(rows, cols))]
                return d, u, v
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            pivot = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // pivot)
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // pivot)
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, rows)
                        if any(a[i][j] % pivot for j in range(t + 1, cols))), None)
            if bad is None:
                break
            add_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                u[t] = [-x for x in u[t]]
    d = [a[i][i] for i in range(min(rows, cols))]
    return d, u, v


def smith_normal_form(m: ExactMatrix) -> SnfResult:
    """Invariant factors d with unimodular u, v such that u*m*v = diag(d)"""
    rows = m.int_rows()
    d, u, v = _smith(rows, track=True)
    return SnfResult(
        d=tuple(d),
        u=ExactMatrix.from_rows(u) if u else ExactMatrix(0, 0, []),
        v=ExactMatrix.from_rows(v) if v else ExactMatrix(0, 0, []),
    )


def invariant_factors(rows: Sequence[Sequence[int]]) -> List[int]:
    """Invariant factors of an integer matrix given as lists, without transforms"""
    d, _, _ = _smith([list(r) for r in rows], track=False)
    return d


def int_level(rows: Sequence[Sequence[int]]) -> int:
    """Level of a square integer matrix given as lists; 0 when singular"""
    det = int_det(rows)
    if det == 0:
        return 0
    if det in (1, -1):
        return 1
    return invariant_factors(rows)[-1]


def _peel_unit_columns(a: ExactMatrix) -> ExactMatrix:
    """Drop row i and column j while column j is +-e_i; the level does not change"""
    while a.rows > 1:
        unit = None
        for j in range(a.cols):
            support = [i for i, e in enumerate(a.column(j)) if e]
            if len(support) == 1 and abs(a[support[0], j]) == 1:
                unit = (support[0], j)
                break
        if unit is None:
            break
        a = a.delete(*unit)
    return a


def level(a: ExactMatrix) -> int:
    """Smallest N such that N * a^-1 is integral"""
    if not a.is_square():
        raise ShapeMismatch("Level is only defined for square matrices")
    result = int_level(_peel_unit_columns(a).int_rows())

    if result == 0:
        raise Singular("Matrix is singular")
    return result


def level_by_inverse(a: ExactMatrix) -> int:
    """Level as the lcm of the denominators of the inverse"""
    inv = inverse(a)
    return math.lcm(*(e.denominator for e in inv.entries))


def lattice_quotient_exponent(gens: Sequence[Sequence[int]], ambient_rank: int) -> int:
    """Exponent of Z^n modulo the lattice spanned by gens"""
    if any(len(g) != ambient_rank for g in gens):
        raise ShapeMismatch(f"Generators must have length {ambient_rank}")
    if not gens:
        raise NotFullRank("No generators")
    columns = ExactMatrix.from_columns(gens)
    if not columns.is_integral():
        raise NonIntegral("Generators must be integral")
    d = invariant_factors(columns.int_rows())
    if len(d) < ambient_rank or d[ambient_rank - 1] == 0:
        raise NotFullRank(f"Generators span a lattice of rank < {ambient_rank}")
    return abs(d[ambient_rank - 1])
