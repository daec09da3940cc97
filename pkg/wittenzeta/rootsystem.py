"""Irreducible root systems in simple-root coordinates.

Simple roots are numbered as in Bourbaki, which reproduces the table of
highest roots:

    A_n  1 - 2 - ... - n
    B_n  1 - 2 - ... - (n-1) => n        (alpha_n short)
    C_n  1 - 2 - ... - (n-1) <= n        (alpha_n long)
    D_n  1 - 2 - ... - (n-2) - (n-1), (n-2) - n
    E_n  1 - 3 - 4 - 5 - 6 - 7 - 8, 2 - 4
    F_4  1 - 2 => 3 - 4                  (alpha_3, alpha_4 short)
    G_2  1 <= 2                          (alpha_1 short)

Long roots have squared length 2 and a bond between alpha_i and alpha_j has
inner product -max(d_i, d_j), so the Gram matrix is determined by the half
squared lengths d_i alone.
"""
from __future__ import annotations

import functools
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from sympy import primefactors

from .errors import ComputationError, BudgetExceeded
from .linalg import ExactMatrix


class InvalidType(ComputationError):
    pass


Vector = Tuple[int, ...]

FAMILIES = "ABCDEFG"

WEYL_DEGREES = dict(
    G2=(2, 6),
    F4=(2, 6, 8, 12),
    E6=(2, 5, 6, 8, 9, 12),
    E7=(2, 6, 8, 10, 12, 14, 18),
    E8=(2, 8, 12, 14, 18, 20, 24, 30),
)

DUAL_FAMILY = dict(A="A", B="C", C="B", D="D", E="E", F="F", G="G")


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    cartan: Tuple[Tuple[int, ...], ...]
    symmetrizer: Tuple[Fraction, ...]
    positive_roots: Tuple[Vector, ...]

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def r(self) -> int:
        return len(self.positive_roots)

    def gram(self, i: int, j: int) -> Fraction:
        """(alpha_i, alpha_j)"""
        return self.cartan[i][j] * self.symmetrizer[j]

    def norm(self, beta: Sequence[int]) -> Fraction:
        """(beta, beta)"""
        n = self.rank
        return sum((beta[i] * beta[j] * self.gram(i, j)
                    for i in range(n) for j in range(n) if beta[i] and beta[j]), Fraction(0))

    def coroot(self, beta: Sequence[int]) -> Vector:
        """beta^vee in simple-coroot coordinates, i.e. the pairings (lambda_i, beta^vee)"""
        half_norm = self.norm(beta) / 2
        coords = [Fraction(c) * self.symmetrizer[i] / half_norm for i, c in enumerate(beta)]
        return tuple(int(c) for c in coords)

    def pair_coroot(self, beta: Sequence[int], i: int) -> int:
        """<beta, alpha_i^vee>"""
        return sum(c * self.cartan[k][i] for k, c in enumerate(beta))

    def __str__(self) -> str:
        return self.label


def parse_type(label: str) -> Tuple[str, int]:
    """'A2', 'g2', 'E_6' -> (family, rank)"""
    match = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", label)
    if match is None:
        raise InvalidType(f"Not a root system type: {label!r}")
    return match[1].upper(), int(match[2])


def _validate(family: str, rank: int) -> None:
    valid = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if not valid.get(family, False):
        raise InvalidType(f"No irreducible root system of type {family}{rank}")


def _diagram(family: str, n: int) -> Tuple[List[Fraction], List[Tuple[int, int]]]:
    """Half squared lengths and bonds (0-based) of the Dynkin diagram"""
    one, half, third = Fraction(1), Fraction(1, 2), Fraction(1, 3)
    chain = [(i, i + 1) for i in range(n - 1)]
    if family == "A":
        return [one] * n, chain
    if family == "B":
        return [one] * (n - 1) + [half], chain
    if family == "C":
        return [half] * (n - 1) + [one], chain
    if family == "D":
        return [one] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if family == "E":
        bonds = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
        return [one] * n, bonds
    if family == "F":
        return [one, one, half, half], chain
    if family == "G":
        return [third, one], chain
    raise InvalidType(f"Unknown family {family}")


def cartan_from_diagram(lengths: Sequence[Fraction], bonds: Sequence[Tuple[int, int]]) -> Tuple[Tuple[int, ...], ...]:
    n = len(lengths)
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = 2 * lengths[i]
    for i, j in bonds:
        gram[i][j] = gram[j][i] = -max(lengths[i], lengths[j])
    # C[i][j] = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)
    return tuple(tuple(int(2 * gram[i][j] / gram[j][j]) for j in range(n)) for i in range(n))


def _generate_positive_roots(cartan, rank: int) -> Tuple[Vector, ...]:
    """Root-string closure starting from the simple roots"""
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        following = []
        for beta in layer:
            for i in range(rank):
                p = 0
                lowered = list(beta)
                while True:
                    lowered[i] -= 1
                    if tuple(lowered) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(c * cartan[k][i] for k, c in enumerate(beta))
                if p - pairing > 0:
                    raised = list(beta)
                    raised[i] += 1
                    raised = tuple(raised)
                    if raised not in roots:
                        roots.add(raised)
                        following.append(raised)
        layer = following
    return tuple(sorted(roots, key=root_order))


def root_order(beta: Sequence[int]):
    """Ascending height, then alpha_1 before alpha_2 and so on"""
    return (sum(beta), tuple(-c for c in beta))


def from_cartan(family: str, rank: int, cartan, symmetrizer) -> RootSystem:
    cartan = tuple(tuple(int(x) for x in row) for row in cartan)
    symmetrizer = tuple(Fraction(d) for d in symmetrizer)
    for i in range(rank):
        for j in range(rank):
            if cartan[i][j] * symmetrizer[j] != cartan[j][i] * symmetrizer[i]:
                raise InvalidType("Cartan matrix is not symmetrized by the given lengths")
    return RootSystem(
        family=family,
        rank=rank,
        cartan=cartan,
        symmetrizer=symmetrizer,
        positive_roots=_generate_positive_roots(cartan, rank),
    )


@functools.cache
def build(family: str, rank: int) -> RootSystem:
    family = family.upper()
    _validate(family, rank)
    lengths, bonds = _diagram(family, rank)
    return from_cartan(family, rank, cartan_from_diagram(lengths, bonds), lengths)


def build_from_label(label: str) -> RootSystem:
    return build(*parse_type(label))


def pairing_matrix(rs: RootSystem) -> ExactMatrix:
    """n x r matrix M with entries (lambda_i, alpha_j^vee)"""
    return ExactMatrix.from_columns([rs.coroot(beta) for beta in rs.positive_roots])


def highest_root(rs: RootSystem) -> Vector:
    return rs.positive_roots[-1]


def highest_root_coeffs(rs: RootSystem) -> List[int]:
    return sorted(set(highest_root(rs)))


def weyl_degrees(rs: RootSystem) -> Tuple[int, ...]:
    n = rs.rank
    if rs.family == "A":
        return tuple(range(2, n + 2))
    if rs.family in "BC":
        return tuple(range(2, 2 * n + 1, 2))
    if rs.family == "D":
        return tuple(range(2, 2 * n - 1, 2)) + (n,)
    return WEYL_DEGREES[rs.label]


def weyl_order(rs: RootSystem) -> int:
    order = 1
    for d in weyl_degrees(rs):
        order *= d
    return order


def k_phi(rs: RootSystem) -> int:
    """prod over positive roots of (delta, alpha^vee)"""
    result = 1
    for beta in rs.positive_roots:
        result *= sum(rs.coroot(beta))
    return result


def vanishing_orders(rs: RootSystem) -> Dict[str, int]:
    """Lower bounds for the vanishing order at negative even and odd integers"""
    return dict(
        even=rs.rank,
        odd=sum(1 for d in weyl_degrees(rs) if d % 2 == 1),
    )


def bad_primes(rs: RootSystem) -> List[int]:
    return sorted({p for c in highest_root_coeffs(rs) for p in primefactors(c)})


@dataclass(frozen=True)
class WeylElement:
    matrix: Tuple[Tuple[int, ...], ...]
    length: int

    def apply(self, beta: Sequence[int]) -> Vector:
        return tuple(sum(row[k] * beta[k] for k in range(len(beta))) for row in self.matrix)


def simple_reflection(rs: RootSystem, i: int) -> Tuple[Tuple[int, ...], ...]:
    """s_i(beta) = beta - <beta, alpha_i^vee> alpha_i as a matrix on coordinates"""
    n = rs.rank
    rows = [[int(a == b) for b in range(n)] for a in range(n)]
    for k in range(n):
        rows[i][k] -= rs.cartan[k][i]
    return tuple(tuple(row) for row in rows)


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _length(rs: RootSystem, matrix) -> int:
    length = 0
    for beta in rs.positive_roots:
        image = [sum(row[k] * beta[k] for k in range(rs.rank)) for row in matrix]
        if any(c < 0 for c in image):
            length += 1
    return length


def weyl_enumerate(rs: RootSystem, max_order: int = 100_000) -> List[WeylElement]:
    """All Weyl group elements, by breadth-first closure under simple reflections"""
    if weyl_order(rs) > max_order:
        raise BudgetExceeded(
            f"|W({rs.label})| = {weyl_order(rs)} exceeds the enumeration budget {max_order}")
    generators = [simple_reflection(rs, i) for i in range(rs.rank)]
    identity = tuple(tuple(int(i == j) for j in range(rs.rank)) for i in range(rs.rank))
    seen = {identity}
    queue = deque([identity])
    while queue:
        w = queue.popleft()
        for s in generators:
            ws = _matmul(w, s)
            if ws not in seen:
                seen.add(ws)
                queue.append(ws)
    return sorted((WeylElement(matrix=m, length=_length(rs, m)) for m in seen),
                  key=lambda e: (e.length, e.matrix))


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poincare_product(rs: RootSystem) -> Tuple[int, ...]:
    """prod_k (q^{d_k} - 1)/(q - 1), ascending coefficients"""
    result = [1]
    for d in weyl_degrees(rs):
        result = _poly_mul(result, [1] * d)
    return tuple(result)


def poincare_enumerated(rs: RootSystem, max_order: int = 100_000) -> Tuple[int, ...]:
    """sum over W of q^{l(w)}, ascending coefficients"""
    coeffs = [0] * (rs.r + 1)
    for w in weyl_enumerate(rs, max_order):
        coeffs[w.length] += 1
    return tuple(coeffs)


def poincare_poly(rs: RootSystem, max_order: int = 100_000) -> Tuple[int, ...]:
    """Length generating function of W, enumerated when the group is small enough"""
    if weyl_order(rs) <= max_order:
        return poincare_enumerated(rs, max_order)
    return poincare_product(rs)


def dual(rs: RootSystem) -> RootSystem:
    """Root system of the coroots: transposed Cartan matrix, reciprocal lengths"""
    n = rs.rank
    cartan = tuple(tuple(rs.cartan[j][i] for j in range(n)) for i in range(n))
    inverse_lengths = [1 / d for d in rs.symmetrizer]
    longest = max(inverse_lengths)
    return from_cartan(DUAL_FAMILY[rs.family], n, cartan, [d / longest for d in inverse_lengths])
