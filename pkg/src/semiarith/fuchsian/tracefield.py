# src/semiarith/fuchsian/tracefield.py
"""Trace fields, the squares subgroup and semi-arithmeticity."""

from __future__ import annotations

import logging
import random
from collections.abc import Callable, Sequence
from itertools import product
from typing import NamedTuple

from ..core.errors import EnumerationCapExceeded, InternalConsistencyError, StabilizationError
from ..core.linalg import RATIONAL_OPS, independent_subset
from ..core.numfield import AlgebraicNumber, Subfield, generated_subfield
from ..core.operations.models import SemiarithConfig, default_config
from .group import FuchsianRep, Matrix
from .words import Word, random_word

logger = logging.getLogger(__name__)


def _span_basis(values: Sequence[AlgebraicNumber]) -> list[AlgebraicNumber]:
    unique = list(dict.fromkeys(values))
    keep = independent_subset([list(v.coords) for v in unique], RATIONAL_OPS)
    return [unique[i] for i in keep]


def _generated_field(
    rep: FuchsianRep,
    config: SemiarithConfig,
    value: Callable[[Matrix], AlgebraicNumber],
    what: str,
    name: str,
) -> Subfield:
    """Field generated by value(γ) over short words, cross-checked on random longer ones.

    Raises:
        StabilizationError: a sampled value lies outside the computed field
    """
    values = [value(m) for _, m in rep.words(config.search.trace_word_length, min_length=1)]
    k = generated_subfield(rep.field, _span_basis(values), name=name)
    rng = random.Random(config.sampling.seed)
    for _ in range(config.sampling.stabilization_words):
        w = random_word(rep.n_generators, config.sampling.stabilization_word_length, rng)
        if not k.contains(value(rep.evaluate(w))):
            raise StabilizationError(
                f"{what} of {rep.format_word(w)} lies outside the field generated by short words"
            )
    logger.info(f"{name} of {rep.name or 'group'}: degree {k.degree}")
    return k


def trace_field(rep: FuchsianRep, config: SemiarithConfig | None = None) -> Subfield:
    """Q(tr Γ) as a subfield of the entry field."""
    return _generated_field(rep, config or default_config(), lambda m: m.trace, "trace", "k")


# squares subgroup


class SquaresSubgroup(NamedTuple):
    """Γ^(2) with its Schreier generators as words in the parent generators."""

    group: FuchsianRep
    words: tuple[Word, ...]
    index: int


def _rref_mod2(vectors: Sequence[Sequence[int]], n: int) -> tuple[list[list[int]], list[int]]:
    rows = [list(v) for v in vectors if any(v)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [(x + y) % 2 for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


class _CosetTable:
    """Cosets of the kernel of Γ → (Z/2)^m / ⟨relator images⟩."""

    def __init__(self, n_generators: int, relators: Sequence[Word]) -> None:
        self.m = n_generators
        self.rows, self.pivots = _rref_mod2([r.mod2_vector(n_generators) for r in relators], n_generators)
        self.free = [i for i in range(n_generators) if i not in self.pivots]
        self.cosets = list(product((0, 1), repeat=len(self.free)))

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            if v[pc]:
                v = [(x + y) % 2 for x, y in zip(v, row)]
        return tuple(v[i] for i in self.free)

    def step(self, coset: tuple[int, ...], i: int) -> tuple[int, ...]:
        v = [0] * self.m
        for bit, j in zip(coset, self.free):
            v[j] = bit
        v[i] ^= 1
        return self.reduce(v)

    def transversal(self, coset: tuple[int, ...]) -> Word:
        return Word((j, 1) for bit, j in zip(coset, self.free) if bit)


def squares_subgroup(rep: FuchsianRep, config: SemiarithConfig | None = None) -> SquaresSubgroup:
    """The subgroup generated by all squares, by Reidemeister–Schreier.

    Γ^(2) is the kernel of the mod-2 abelianization; supplied relators shrink
    the quotient. Relators of the subgroup are the rewritten conjugates of the
    parent relators.
    """
    config = config or default_config()
    cap = config.search.max_square_generators
    if rep.n_generators > cap:
        raise EnumerationCapExceeded(
            f"{rep.n_generators} generators exceed the squares-subgroup cap {cap}",
            size=rep.n_generators,
            cap=cap,
        )
    table = _CosetTable(rep.n_generators, rep.relators)
    index = len(table.cosets)
    if index == 1:
        return SquaresSubgroup(rep, tuple(Word.generator(i) for i in range(rep.n_generators)), 1)

    words: list[Word] = []
    position: dict[Word, int] = {}
    schreier: dict[tuple[tuple[int, ...], int], int | None] = {}
    for c in table.cosets:
        for i in range(rep.n_generators):
            w = table.transversal(c) * Word.generator(i) * table.transversal(table.step(c, i)).inverse()
            if not w:
                schreier[c, i] = None
                continue
            if w not in position:
                position[w] = len(words)
                words.append(w)
            schreier[c, i] = position[w]

    def rewrite(r: Word, start: tuple[int, ...]) -> Word:
        current = start
        out: list[tuple[int, int]] = []
        for x in r.letters():
            i = abs(x) - 1
            if x > 0:
                s = schreier[current, i]
                if s is not None:
                    out.append((s, 1))
                current = table.step(current, i)
            else:
                previous = table.step(current, i)
                s = schreier[previous, i]
                if s is not None:
                    out.append((s, -1))
                current = previous
        if current != start:
            raise InternalConsistencyError("relator does not close up in the coset table")
        return Word(out)

    relators = list(dict.fromkeys(w for r in rep.relators for c in table.cosets if (w := rewrite(r, c))))
    labels = [f"s{j + 1}" for j in range(len(words))]
    name = f"{rep.name}^(2)" if rep.name else None
    group = FuchsianRep(rep.field, [rep.evaluate(w) for w in words], labels, relators, name)
    logger.info(f"Squares subgroup: index {index}, {len(words)} Schreier generators")
    return SquaresSubgroup(group, tuple(words), index)


def squared_trace_field(rep: FuchsianRep, config: SemiarithConfig | None = None) -> Subfield:
    """Q(tr²γ : γ ∈ Γ); equals the invariant trace field for non-elementary Γ."""
    return _generated_field(
        rep, config or default_config(), lambda m: m.trace * m.trace, "squared trace", "kΓ"
    )


def invariant_trace_field(
    rep: FuchsianRep,
    config: SemiarithConfig | None = None,
    trace_field_data: Subfield | None = None,
) -> Subfield:
    """Trace field of Γ^(2), read off the squares subgroup.

    Squared traces of short words of Γ are checked to lie in the result.

    Raises:
        InternalConsistencyError: some tr²γ lies outside the trace field of Γ^(2)
    """
    config = config or default_config()
    k = trace_field_data or trace_field(rep, config)
    if k.degree == 1:
        return k
    k2 = trace_field(squares_subgroup(rep, config).group, config)
    for w, m in rep.words(config.search.trace_word_length, min_length=1):
        if not k2.contains(m.trace * m.trace):
            raise InternalConsistencyError(
                f"tr² of {rep.format_word(w)} lies outside the trace field of the squares subgroup"
            )
    logger.info(f"kΓ of {rep.name or 'group'}: degree {k2.degree}")
    return k2


class TraceFieldCondition(NamedTuple):
    trace_field: Subfield
    invariant_trace_field: Subfield
    holds: bool


def trace_field_condition(
    rep: FuchsianRep, config: SemiarithConfig | None = None
) -> TraceFieldCondition:
    """Whether Q(tr Γ) equals Q(tr Γ^(2)); the second is always contained in the first."""
    k = trace_field(rep, config)
    k2 = invariant_trace_field(rep, config, trace_field_data=k)
    return TraceFieldCondition(k, k2, k.degree == k2.degree)


class SemiArithmeticity(NamedTuple):
    semi_arithmetic: bool
    totally_real: bool
    integral: bool
    non_integral_word: Word | None
    invariant_trace_field: Subfield


def is_semi_arithmetic(
    rep: FuchsianRep,
    config: SemiarithConfig | None = None,
    trace_field_data: TraceFieldCondition | None = None,
) -> SemiArithmeticity:
    """Integral traces and a totally real invariant trace field.

    Integrality is checked on words up to the trace word length; the trace
    recursion tr(AB) + tr(AB⁻¹) = tr(A)·tr(B) carries it to all words.
    """
    config = config or default_config()
    data = trace_field_data or trace_field_condition(rep, config)
    k = data.trace_field
    witness = None
    for w, m in rep.words(config.search.trace_word_length, min_length=1):
        t = k.to_subfield(m.trace)
        if t is None:
            raise InternalConsistencyError(f"trace of {rep.format_word(w)} lies outside k")
        if not t.is_integral():
            witness = w
            break
    totally_real = data.invariant_trace_field.field.totally_real
    integral = witness is None
    return SemiArithmeticity(
        totally_real and integral, totally_real, integral, witness, data.invariant_trace_field
    )
