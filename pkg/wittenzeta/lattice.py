"""Lattice invariants of a root system: the level set D, the exponent set E,
the highest-root coefficient set H and the denominator set T."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Set, Tuple

from .cache import ResultCache
from .errors import BudgetExceeded
from .linalg import ExactMatrix, int_level
from .logging import debug, info
from .parallel import parallel_map
from .rootsystem import RootSystem, dual, highest_root_coeffs, pairing_matrix


DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class InvariantSet:
    kind: str
    values: Tuple
    phi: str
    budget_spent: int = 0

    def as_set(self) -> Set:
        return set(self.values)


@dataclass(frozen=True)
class PropositionCheck:
    """Outcome of comparing two invariant sets that a proposition says are equal"""
    name: str
    phi: str
    holds: bool
    left: InvariantSet
    right: InvariantSet
    notes: List[str] = field(default_factory=list)


def _reduce(vector: List[int], basis: List[Tuple[int, List[int]]]) -> List[int]:
    """Fraction-free elimination of vector against an echelon basis"""
    for pivot, row in basis:
        x = vector[pivot]
        if x:
            p = row[pivot]
            vector = [p * a - x * b for a, b in zip(vector, row)]
    g = math.gcd(*vector)
    if g > 1:
        vector = [a // g for a in vector]
    return vector


def _levels_with_first(args) -> Tuple[Set[int], int]:
    """Levels of all invertible n-subsets of columns whose smallest index is first"""
    columns, n, first = args
    m = len(columns)
    levels: Set[int] = set()
    examined = 0

    def descend(chosen, basis, start):
        nonlocal examined
        if len(chosen) == n:
            examined += 1
            rows = [[columns[j][i] for j in chosen] for i in range(n)]
            levels.add(int_level(rows))
            return
        needed = n - len(chosen)
        for j in range(start, m - needed + 1):
            reduced = _reduce(list(columns[j]), basis)
            if not any(reduced):
                # every subset through this prefix and column j is singular
                examined += math.comb(m - j - 1, needed - 1)
                continue
            pivot = next(i for i, a in enumerate(reduced) if a)
            descend(chosen + [j], basis + [(pivot, reduced)], j + 1)

    first_column = list(columns[first])
    if any(first_column):
        pivot = next(i for i, a in enumerate(first_column) if a)
        descend([first], [(pivot, first_column)], first + 1)
    else:
        examined += math.comb(m - first - 1, n - 1)
    return levels, examined


def levels_of_submatrices(matrix: ExactMatrix, budget: int = DEFAULT_BUDGET,
                          threads: int = 1) -> Tuple[Set[int], int]:
    """D(B): levels of all invertible n x n column submatrices of an n x m matrix B"""
    n, m = matrix.rows, matrix.cols
    total = math.comb(m, n)
    if total > budget:
        raise BudgetExceeded(f"C({m},{n}) = {total} submatrices exceed the budget {budget}")
    columns = [tuple(int(e) for e in matrix.column(j)) for j in range(m)]
    chunks = [(columns, n, first) for first in range(m - n + 1)]
    levels: Set[int] = set()
    examined = 0
    for chunk_levels, chunk_examined in parallel_map(_levels_with_first, chunks, threads):
        levels |= chunk_levels
        examined += chunk_examined
    levels.discard(0)
    return levels, examined


def _cached_levels(kind: str, rs: RootSystem, matrix: ExactMatrix, budget: int,
                   threads: int, cache: Optional[ResultCache]) -> InvariantSet:
    total = math.comb(matrix.cols, matrix.rows)
    key = ResultCache.key(kind, matrix) if cache else None
    if cache:
        values = cache.load(key, kind)
        if values is not None:
            return InvariantSet(kind=kind, values=tuple(values), phi=rs.label, budget_spent=total)
    if total > budget:
        raise BudgetExceeded(
            f"{kind}({rs.label}) needs C({matrix.cols},{matrix.rows}) = {total} subsets, "
            f"over the budget {budget}")
    if total > 100_000:
        info(f"Enumerating {total} subsets for {kind}({rs.label})")
    levels, examined = levels_of_submatrices(matrix, budget, threads)
    debug(f"{kind}({rs.label}) = {sorted(levels)} after {examined} subsets")
    if cache:
        cache.store(key, kind, sorted(levels), family=rs.family, rank=rs.rank)
    return InvariantSet(kind=kind, values=tuple(sorted(levels)), phi=rs.label, budget_spent=examined)


def dset(rs: RootSystem, budget: int = DEFAULT_BUDGET, threads: int = 1,
         cache: Optional[ResultCache] = None) -> InvariantSet:
    """D(Phi): levels of the invertible n x n submatrices of the pairing matrix"""
    return _cached_levels("D", rs, pairing_matrix(rs), budget, threads, cache)


def root_matrix(rs: RootSystem) -> ExactMatrix:
    """Positive roots as columns, in simple-root coordinates"""
    return ExactMatrix.from_columns(rs.positive_roots)


def eset(rs: RootSystem, budget: int = DEFAULT_BUDGET, threads: int = 1,
         cache: Optional[ResultCache] = None) -> InvariantSet:
    """E(Phi): exponents of L(Phi)/Span S over spanning n-subsets S of positive roots

    For n generators the exponent of Z^n/Span S is the last invariant factor
    of the square matrix with columns S, which is its level.
    """
    return _cached_levels("E", rs, root_matrix(rs), budget, threads, cache)


def hset(rs: RootSystem) -> InvariantSet:
    return InvariantSet(kind="H", values=tuple(highest_root_coeffs(rs)), phi=rs.label)


def tset(rs: RootSystem) -> InvariantSet:
    """Rationals p/q in (0,1] with q a highest-root coefficient"""
    values = {Fraction(p, q) for q in highest_root_coeffs(rs) for p in range(1, q + 1)}
    return InvariantSet(kind="T", values=tuple(sorted(values)), phi=rs.label)


def verify_eh(rs: RootSystem, budget: int = DEFAULT_BUDGET, threads: int = 1,
              cache: Optional[ResultCache] = None) -> PropositionCheck:
    """E(Phi) = H(Phi) u {1}"""
    exponents = eset(rs, budget, threads, cache)
    h = hset(rs)
    h_with_one = InvariantSet(kind="H+1", values=tuple(sorted(set(h.values) | {1})), phi=rs.label)
    return PropositionCheck(
        name="E = H u {1}",
        phi=rs.label,
        holds=exponents.as_set() == h_with_one.as_set(),
        left=exponents,
        right=h_with_one,
    )


def verify_de(rs: RootSystem, budget: int = DEFAULT_BUDGET, threads: int = 1,
              cache: Optional[ResultCache] = None) -> PropositionCheck:
    """D(Phi) = E(Phi^vee)"""
    coroots = dual(rs)
    levels = dset(rs, budget, threads, cache)
    exponents = eset(coroots, budget, threads, cache)
    return PropositionCheck(
        name="D = E(dual)",
        phi=rs.label,
        holds=levels.as_set() == exponents.as_set(),
        left=levels,
        right=exponents,
        notes=[f"dual of {rs.label} is {coroots.label}"],
    )


def form_matrix(rs: RootSystem) -> ExactMatrix:
    """(I_{r-n} | C^T) where the pairing matrix is (I_n | C)

    Columns are the coefficient vectors of the linear forms x_alpha (alpha
    not simple) and sum_alpha (lambda_i, alpha^vee) x_alpha.
    """
    m = pairing_matrix(rs)
    n, r = m.rows, m.cols
    k = r - n
    identity = [[int(i == j) for j in range(k)] for i in range(k)]
    wrapped = [[int(m[i, n + a]) for a in range(k)] for i in range(n)]
    return ExactMatrix.from_columns(identity + wrapped)


def dset_of_forms(rs: RootSystem, budget: int = DEFAULT_BUDGET, threads: int = 1) -> InvariantSet:
    """D of the form matrix; its block structure gives the same levels as the pairing matrix"""
    matrix = form_matrix(rs)
    levels, examined = levels_of_submatrices(matrix, budget, threads)
    return InvariantSet(kind="D", values=tuple(sorted(levels)), phi=rs.label, budget_spent=examined)
