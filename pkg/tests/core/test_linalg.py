# tests/core/test_linalg.py

from fractions import Fraction

from semiarith.core.linalg import RATIONAL_OPS, det, independent_subset, nullspace, rank, solve


def test_rank_and_nullspace_over_q():
    """
    A rank-2 3×3 matrix has a one-dimensional kernel.
    """
    rows = [[Fraction(c) for c in row] for row in ([1, 2, 3], [2, 4, 6], [0, 1, 1])]
    assert rank(rows, RATIONAL_OPS) == 2
    kernel = nullspace(rows, 3, RATIONAL_OPS)
    assert len(kernel) == 1
    v = kernel[0]
    assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)


def test_solve_consistent_and_inconsistent():
    """
    solve returns a solution or None.
    """
    rows = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
    assert solve(rows, [Fraction(3), Fraction(1)], RATIONAL_OPS) == [2, 1]
    singular = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
    assert solve(singular, [Fraction(1), Fraction(3)], RATIONAL_OPS) is None


def test_det_over_finite_field(f7):
    """
    Elimination works over F_7 through the FieldOps protocol.
    """
    assert det([[2, 3], [1, 4]], f7) == 5
    assert det([[1, 2], [2, 4]], f7) == 0


def test_det_over_number_field(q_sqrt2):
    """
    det [[√2, 1], [1, √2]] = 1.
    """
    r = q_sqrt2.gen
    assert det([[r, q_sqrt2.one], [q_sqrt2.one, r]], q_sqrt2.ops) == 1


def test_independent_subset():
    """
    Dependent vectors are skipped greedily.
    """
    vectors = [[Fraction(1), Fraction(0)], [Fraction(2), Fraction(0)], [Fraction(0), Fraction(1)]]
    assert independent_subset(vectors, RATIONAL_OPS) == [0, 2]
