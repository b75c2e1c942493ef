# src/semiarith/core/linalg.py
"""Gaussian elimination over exact fields.

The routines work for any element type through a small ``FieldOps`` adapter:
``Fraction`` and ``AlgebraicNumber`` use their Python operators, finite fields
pass themselves (``FiniteField`` implements the same protocol on int codes).
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from typing import Any, Generic, Protocol, TypeVar

E = TypeVar("E")


class FieldOps(Protocol[E]):
    """Arithmetic needed by the elimination routines."""

    def zero(self) -> E: ...

    def one(self) -> E: ...

    def add(self, a: E, b: E) -> E: ...

    def sub(self, a: E, b: E) -> E: ...

    def mul(self, a: E, b: E) -> E: ...

    def div(self, a: E, b: E) -> E: ...

    def is_zero(self, a: E) -> bool: ...


class NativeOps(Generic[E]):
    """Adapter for element types with Python arithmetic operators."""

    def __init__(self, zero: E, one: E) -> None:
        self._zero = zero
        self._one = one

    def zero(self) -> E:
        return self._zero

    def one(self) -> E:
        return self._one

    def add(self, a: Any, b: Any) -> E:
        return a + b  # type: ignore[no-any-return]

    def sub(self, a: Any, b: Any) -> E:
        return a - b  # type: ignore[no-any-return]

    def mul(self, a: Any, b: Any) -> E:
        return a * b  # type: ignore[no-any-return]

    def div(self, a: Any, b: Any) -> E:
        return a / b  # type: ignore[no-any-return]

    def is_zero(self, a: Any) -> bool:
        return not a


RATIONAL_OPS: NativeOps[Fraction] = NativeOps(Fraction(0), Fraction(1))


def rref(
    rows: Sequence[Sequence[E]], ops: FieldOps[E]
) -> tuple[list[list[E]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    matrix = [list(row) for row in rows]
    if not matrix:
        return [], []
    n_cols = len(matrix[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next(
            (i for i in range(r, len(matrix)) if not ops.is_zero(matrix[i][c])), None
        )
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        lead = matrix[r][c]
        matrix[r] = [ops.div(x, lead) for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and not ops.is_zero(matrix[i][c]):
                factor = matrix[i][c]
                matrix[i] = [
                    ops.sub(x, ops.mul(factor, y)) for x, y in zip(matrix[i], matrix[r])
                ]
        pivots.append(c)
        r += 1
        if r == len(matrix):
            break
    return matrix[:r], pivots


def rank(rows: Sequence[Sequence[E]], ops: FieldOps[E]) -> int:
    return len(rref(rows, ops)[1])


def nullspace(rows: Sequence[Sequence[E]], n_cols: int, ops: FieldOps[E]) -> list[list[E]]:
    """Basis of {x : rows · x = 0}, one vector per free column."""
    reduced, pivots = rref(rows, ops)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ops.zero() for _ in range(n_cols)]
        vec[fc] = ops.one()
        for row, pc in zip(reduced, pivots):
            vec[pc] = ops.sub(ops.zero(), row[fc])
        basis.append(vec)
    return basis


def solve(
    rows: Sequence[Sequence[E]], rhs: Sequence[E], ops: FieldOps[E]
) -> list[E] | None:
    """One solution of rows · x = rhs, or None if the system is inconsistent.

    Free variables are set to zero.
    """
    if not rows:
        return []
    n_cols = len(rows[0])
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ops)
    if n_cols in pivots:
        return None
    x = [ops.zero() for _ in range(n_cols)]
    for row, pc in zip(reduced, pivots):
        x[pc] = row[n_cols]
    return x


def det(rows: Sequence[Sequence[E]], ops: FieldOps[E]) -> E:
    matrix = [list(row) for row in rows]
    n = len(matrix)
    result = ops.one()
    for c in range(n):
        pivot = next((i for i in range(c, n) if not ops.is_zero(matrix[i][c])), None)
        if pivot is None:
            return ops.zero()
        if pivot != c:
            matrix[c], matrix[pivot] = matrix[pivot], matrix[c]
            result = ops.sub(ops.zero(), result)
        lead = matrix[c][c]
        result = ops.mul(result, lead)
        for i in range(c + 1, n):
            if not ops.is_zero(matrix[i][c]):
                factor = ops.div(matrix[i][c], lead)
                matrix[i] = [
                    ops.sub(x, ops.mul(factor, y)) for x, y in zip(matrix[i], matrix[c])
                ]
    return result


def independent_subset(
    vectors: Sequence[Sequence[E]], ops: FieldOps[E]
) -> list[int]:
    """Indices of a greedily chosen linearly independent subsequence."""
    chosen: list[int] = []
    basis: list[list[E]] = []
    for idx, vec in enumerate(vectors):
        trial = basis + [list(vec)]
        if rank(trial, ops) > len(basis):
            chosen.append(idx)
            basis = trial
    return chosen
