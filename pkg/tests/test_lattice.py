import math
from fractions import Fraction

import pytest

from wittenzeta.cache import ResultCache
from wittenzeta.errors import BudgetExceeded
from wittenzeta.lattice import (
    dset, dset_of_forms, eset, form_matrix, hset, levels_of_submatrices,
    root_matrix, tset, verify_de, verify_eh,
)
from wittenzeta.linalg import ExactMatrix
from wittenzeta.rootsystem import build_from_label


@pytest.mark.parametrize("label, levels", [
    ("A1", {1}), ("A2", {1}), ("A3", {1}), ("A4", {1}),
    ("B2", {1, 2}), ("B3", {1, 2}), ("C3", {1, 2}), ("D4", {1, 2}),
    ("G2", {1, 2, 3}), ("F4", {1, 2, 3, 4}),
])
def test_dset(label, levels):
    rs = build_from_label(label)
    result = dset(rs)
    assert result.as_set() == levels
    assert result.budget_spent == math.comb(rs.r, rs.rank)


def test_dset_examples():
    g2 = dset(build_from_label("G2"))
    assert g2.values == (1, 2, 3)
    assert g2.budget_spent == 15
    b3 = dset(build_from_label("B3"))
    assert b3.values == (1, 2)
    assert b3.budget_spent == 84


PROPOSITION_TYPES = [
    "A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "C3", "C4", "D4", "D5", "G2", "F4",
    pytest.param("E6", marks=pytest.mark.slow),
]


@pytest.mark.parametrize("label", PROPOSITION_TYPES)
def test_exponents_are_highest_root_coefficients_and_one(label):
    check = verify_eh(build_from_label(label))
    assert check.holds
    assert check.left.kind == "E"
    assert check.right.kind == "H+1"


@pytest.mark.parametrize("label", PROPOSITION_TYPES)
def test_levels_are_exponents_of_the_dual(label):
    check = verify_de(build_from_label(label))
    assert check.holds


def test_eset_of_b3():
    assert eset(build_from_label("B3")).as_set() == {1, 2}
    assert root_matrix(build_from_label("A2")).to_lists() == [[1, 0, 1], [0, 1, 1]]


def test_hset_and_tset():
    g2 = build_from_label("G2")
    assert hset(g2).values == (2, 3)
    assert tset(g2).values == (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1))
    assert tset(build_from_label("A3")).values == (Fraction(1),)
    assert hset(build_from_label("E8")).values == (2, 3, 4, 5, 6)


def test_form_matrix_has_the_same_levels():
    for label in ["B3", "G2", "C3"]:
        rs = build_from_label(label)
        forms = form_matrix(rs)
        assert (forms.rows, forms.cols) == (rs.r - rs.rank, rs.r)
        assert dset_of_forms(rs).as_set() == dset(rs).as_set()


def test_levels_of_small_matrices():
    levels, examined = levels_of_submatrices(ExactMatrix.from_rows([[1, 0, 1, 1], [0, 1, 1, 2]]))
    assert levels == {1, 2}
    assert examined == 6
    levels, _ = levels_of_submatrices(ExactMatrix.from_rows([[1, 0, 2], [0, 1, 2]]))
    assert levels == {1, 2}
    levels, examined = levels_of_submatrices(ExactMatrix.from_rows([[0, 0, 1], [0, 0, 1]]))
    assert levels == set()
    assert examined == 3


def test_parallel_enumeration_agrees():
    matrix = form_matrix(build_from_label("B3"))
    assert levels_of_submatrices(matrix, threads=2) == levels_of_submatrices(matrix, threads=1)


def test_budget():
    with pytest.raises(BudgetExceeded):
        dset(build_from_label("E6"), budget=1000)
    with pytest.raises(BudgetExceeded):
        eset(build_from_label("E8"))
    with pytest.raises(BudgetExceeded):
        dset(build_from_label("E7"))


def test_cached_levels(tmp_path):
    cache = ResultCache(tmp_path)
    rs = build_from_label("G2")
    first = dset(rs, cache=cache)
    assert len(list(tmp_path.glob("*.json"))) == 1
    second = dset(rs, cache=cache)
    assert second == first


@pytest.mark.slow
def test_dset_e6():
    e6 = dset(build_from_label("E6"))
    assert e6.as_set() == {1, 2, 3}
    assert e6.budget_spent == 1947792
