# src/semiarith/fuchsian/group.py
"""Finitely generated subgroups of PSL(2, R) with entries in a number field."""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

from ..core.errors import DeterminantError, FieldError, PreconditionError
from ..core.numfield import AlgebraicNumber, NumberField, compare_real
from .words import Word, enumerate_words

logger = logging.getLogger(__name__)


class Matrix(NamedTuple):
    """[[a, b], [c, d]] over a number field."""

    a: AlgebraicNumber
    b: AlgebraicNumber
    c: AlgebraicNumber
    d: AlgebraicNumber

    @classmethod
    def identity(cls, field: NumberField) -> Matrix:
        return cls(field.one, field.zero, field.zero, field.one)

    def __matmul__(self, other: Matrix) -> Matrix:
        return Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def adjugate(self) -> Matrix:
        """Inverse for determinant one."""
        return Matrix(self.d, -self.b, -self.c, self.a)

    def scale(self, s: AlgebraicNumber | int | Fraction) -> Matrix:
        return Matrix(self.a * s, self.b * s, self.c * s, self.d * s)

    def negate(self) -> Matrix:
        return Matrix(-self.a, -self.b, -self.c, -self.d)

    @property
    def trace(self) -> AlgebraicNumber:
        return self.a + self.d

    @property
    def det(self) -> AlgebraicNumber:
        return self.a * self.d - self.b * self.c

    @property
    def is_scalar(self) -> bool:
        return self.b.is_zero and self.c.is_zero and self.a == self.d

    @property
    def is_projective_identity(self) -> bool:
        """±I."""
        return self.is_scalar and (self.a == 1 or self.a == -1)

    def rows(self) -> list[list[AlgebraicNumber]]:
        return [[self.a, self.b], [self.c, self.d]]

    def format(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


class ElementType(str, Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


class WordValue(NamedTuple):
    matrix: Matrix
    tr2: AlgebraicNumber


class FuchsianRep:
    """Generator matrices (one sign lift each) over a totally real field.

    Relators, when given, must evaluate to ±I; they are verified on construction.
    """

    def __init__(
        self,
        field: NumberField,
        generators: Sequence[Matrix],
        labels: Sequence[str] | None = None,
        relators: Sequence[Word] = (),
        name: str | None = None,
    ) -> None:
        if not field.totally_real:
            raise FieldError(f"entry field {field} is not totally real")
        if not generators:
            raise PreconditionError("a group needs at least one generator")
        labels = list(labels) if labels is not None else [f"g{i}" for i in range(len(generators))]
        if len(labels) != len(generators) or len(set(labels)) != len(labels):
            raise PreconditionError("labels must be distinct, one per generator")
        for label, g in zip(labels, generators):
            if any(x.field != field for x in g):
                raise FieldError(f"entries of {label} lie outside {field}")
            if g.det != 1:
                raise DeterminantError(f"det {label} = {g.det}, expected 1")
        self.field = field
        self.generators = tuple(generators)
        self.labels = tuple(labels)
        self.name = name
        self._inverses = tuple(g.adjugate() for g in self.generators)
        self.relators = tuple(relators)
        for r in self.relators:
            if r.max_index >= len(self.generators):
                raise PreconditionError(f"relator {r.format()} uses an unknown generator")
            if not self.evaluate(r).is_projective_identity:
                raise PreconditionError(
                    f"relator {r.format(self.labels)} does not evaluate to the identity"
                )

    def __repr__(self) -> str:
        return f"FuchsianRep({self.name or '?'}, {len(self.generators)} generators over {self.field})"

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def evaluate(self, w: Word) -> Matrix:
        result = Matrix.identity(self.field)
        for index, exponent in w:
            g = self.generators[index] if exponent > 0 else self._inverses[index]
            for _ in range(abs(exponent)):
                result = result @ g
        return result

    def trace(self, w: Word) -> AlgebraicNumber:
        return self.evaluate(w).trace

    def format_word(self, w: Word) -> str:
        return w.format(self.labels)

    def iter_words(self, max_length: int, min_length: int = 0) -> Iterator[tuple[Word, Matrix]]:
        """Reduced words up to max_length in shortlex order with their matrices."""
        cache: dict[Word, Matrix] = {Word(): Matrix.identity(self.field)}
        for w in enumerate_words(self.n_generators, max_length):
            if w not in cache:
                letters = w.letters()
                prefix = Word.from_letters(letters[:-1])
                x = letters[-1]
                g = self.generators[x - 1] if x > 0 else self._inverses[-x - 1]
                cache[w] = cache[prefix] @ g
            if len(w) >= min_length:
                yield w, cache[w]

    def words(self, max_length: int, min_length: int = 0) -> list[tuple[Word, Matrix]]:
        return list(self.iter_words(max_length, min_length))


def _entry(field: NumberField, value: object) -> AlgebraicNumber:
    if isinstance(value, AlgebraicNumber):
        if value.field != field:
            raise FieldError(f"{value} lies outside {field}")
        return value
    if isinstance(value, int | Fraction):
        return field(value)
    if isinstance(value, Sequence) and not isinstance(value, str):
        return field.element([Fraction(c) for c in value])
    raise FieldError(f"cannot read {value!r} as an element of {field}")


def load_group(
    entry_field: NumberField,
    matrices: Sequence[Sequence[Sequence[object]]],
    labels: Sequence[str] | None = None,
    relators: Sequence[Word] = (),
    name: str | None = None,
) -> FuchsianRep:
    """Validated rep from 2×2 matrices of field elements, rationals or coordinate vectors."""
    generators = []
    for m in matrices:
        if len(m) != 2 or any(len(row) != 2 for row in m):
            raise PreconditionError("generators must be 2x2 matrices")
        generators.append(Matrix(*(_entry(entry_field, x) for row in m for x in row)))
    rep = FuchsianRep(entry_field, generators, labels, relators, name)
    logger.debug(f"Loaded {rep!r}")
    return rep


def word_eval(rep: FuchsianRep, w: Word) -> WordValue:
    """Matrix of w and its squared trace."""
    m = rep.evaluate(w)
    t = m.trace
    return WordValue(m, t * t)


def classify_matrix(m: Matrix) -> ElementType:
    if m.is_projective_identity:
        return ElementType.IDENTITY
    t = m.trace
    order = compare_real(t * t, 0, t.field(4), 0)
    if order < 0:
        return ElementType.ELLIPTIC
    if order == 0:
        return ElementType.PARABOLIC
    return ElementType.HYPERBOLIC


def classify(rep: FuchsianRep, w: Word) -> ElementType:
    """Element type from tr² compared with 4 at the identity embedding."""
    return classify_matrix(rep.evaluate(w))


def galois_conjugate(rep: FuchsianRep, embedding: int) -> FuchsianRep:
    """The rep with σ_embedding applied entrywise.

    The conjugate lives over the same minimal polynomial with another root
    distinguished, so entries keep their coordinates.
    """
    if not 0 <= embedding < rep.field.n_embeddings:
        raise PreconditionError(f"embedding index {embedding} out of range")
    if embedding == 0:
        return rep
    target = rep.field.conjugate(embedding)
    generators = [Matrix(*(target.element(x.coords) for x in g)) for g in rep.generators]
    name = f"{rep.name}^sigma{embedding}" if rep.name else None
    return FuchsianRep(target, generators, rep.labels, rep.relators, name)
