# src/semiarith/fuchsian/arithmeticity.py
"""Quaternion symbols, arithmeticity and the modular embedding obstruction."""

from __future__ import annotations

import logging
import random
from typing import NamedTuple

from ..core.errors import InternalConsistencyError, PreconditionError, SearchExhaustedError
from ..core.numfield import AlgebraicNumber, Subfield, compare_abs, sign_at
from ..core.operations.models import SemiarithConfig, default_config
from .group import ElementType, FuchsianRep, classify_matrix
from .tracefield import (
    SemiArithmeticity,
    TraceFieldCondition,
    is_semi_arithmetic,
    squares_subgroup,
    trace_field_condition,
)
from .words import Word, random_word

logger = logging.getLogger(__name__)


class QuaternionSymbol(NamedTuple):
    """B = (a, b | k) with a = tr²x − 4 and b = tr[x, y] − 2."""

    a: AlgebraicNumber
    b: AlgebraicNumber
    x: Word
    y: Word
    ramified: tuple[bool, ...]
    r_split: int


def _in_k(k: Subfield, value: AlgebraicNumber) -> AlgebraicNumber:
    image = k.to_subfield(value)
    if image is None:
        raise PreconditionError("trace lies outside the trace field; is the trace-field condition met?")
    return image


def quaternion_symbol(
    rep: FuchsianRep, k: Subfield, config: SemiarithConfig | None = None
) -> QuaternionSymbol:
    """A symbol for the quaternion algebra k[Γ] and its real ramification.

    Raises:
        SearchExhaustedError: no x with tr²x ≠ 4 paired with y, tr[x, y] ≠ 2
    """
    config = config or default_config()
    length = config.search.symbol_word_length
    for x, mx in rep.iter_words(length, min_length=1):
        t = mx.trace
        a = _in_k(k, t * t) - 4
        if a.is_zero:
            continue
        for y, my in rep.iter_words(length, min_length=1):
            c = mx @ my @ mx.adjugate() @ my.adjugate()
            b = _in_k(k, c.trace) - 2
            if b.is_zero:
                continue
            ramified = tuple(
                sign_at(a, i) < 0 and sign_at(b, i) < 0 for i in range(k.field.n_embeddings)
            )
            symbol = QuaternionSymbol(a, b, x, y, ramified, ramified.count(False))
            logger.debug(
                f"Symbol ({a}, {b}) from x = {rep.format_word(x)}, y = {rep.format_word(y)}"
            )
            return symbol
    raise SearchExhaustedError(
        f"no words x, y up to length {config.search.symbol_word_length} with "
        "tr²x ≠ 4 and tr[x, y] ≠ 2; the group is reducible or elementary"
    )


class TraceBoundWitness(NamedTuple):
    word: Word
    embedding: int


class ArithmeticityReport:
    """Outcome of the arithmeticity test.

    When Γ fails the trace-field condition the analysis runs on Γ^(2)
    (``used_squares``), which is arithmetic exactly when Γ is.
    """

    def __init__(
        self,
        condition: TraceFieldCondition,
        used_squares: bool,
        semi: SemiArithmeticity,
        symbol: QuaternionSymbol,
        trace_bound_witness: TraceBoundWitness | None,
        analysed: FuchsianRep,
    ) -> None:
        self.trace_field = condition.trace_field
        self.invariant_trace_field = condition.invariant_trace_field
        self.tfc = condition.holds
        self.used_squares = used_squares
        self.semi_arithmetic = semi.semi_arithmetic
        self.non_integral_word = semi.non_integral_word
        self.symbol = symbol
        self.ramified_at = symbol.ramified
        self.r_split = symbol.r_split
        self.arithmetic = self.semi_arithmetic and all(symbol.ramified[1:])
        self.trace_bound_witness = trace_bound_witness
        self.analysed = analysed

    def __repr__(self) -> str:
        return (
            f"ArithmeticityReport(k degree {self.trace_field.degree}, tfc={self.tfc}, "
            f"semi_arithmetic={self.semi_arithmetic}, arithmetic={self.arithmetic})"
        )


def _trace_bound_witness(
    rep: FuchsianRep, k: Subfield, config: SemiarithConfig
) -> TraceBoundWitness | None:
    """First word with |σ(tr γ)| > 2 at some σ ≠ id, among short and sampled words."""
    if k.degree == 1:
        return None
    candidates = [w for w, _ in rep.iter_words(config.sampling.obstruction_word_length, min_length=1)]
    rng = random.Random(config.sampling.seed)
    candidates += [
        random_word(rep.n_generators, config.sampling.stabilization_word_length, rng)
        for _ in range(config.sampling.stabilization_words)
    ]
    for w in candidates:
        t = _in_k(k, rep.trace(w))
        for i in range(1, k.field.n_embeddings):
            if compare_abs(t, k.field(2), i, i) > 0:
                return TraceBoundWitness(w, i)
    return None


def is_arithmetic(rep: FuchsianRep, config: SemiarithConfig | None = None) -> ArithmeticityReport:
    """Arithmetic iff semi-arithmetic and B ramified at every σ ≠ id."""
    config = config or default_config()
    condition = trace_field_condition(rep, config)
    analysed = rep
    working = condition
    if not condition.holds:
        analysed = squares_subgroup(rep, config).group
        working = TraceFieldCondition(
            condition.invariant_trace_field, condition.invariant_trace_field, True
        )
        logger.info("Trace-field condition fails; analysing the squares subgroup")
    semi = is_semi_arithmetic(analysed, config, working)
    k = working.trace_field
    symbol = quaternion_symbol(analysed, k, config)
    if symbol.ramified[0]:
        logger.warning("The algebra is ramified at the identity embedding; input is not Fuchsian")
    witness = _trace_bound_witness(analysed, k, config) if semi.semi_arithmetic else None
    report = ArithmeticityReport(
        condition, not condition.holds, semi, symbol, witness, analysed
    )
    if report.arithmetic and witness is not None:
        raise InternalConsistencyError(
            f"arithmetic group with |σ(tr)| > 2 at {rep.format_word(witness.word)}"
        )
    logger.info(f"{rep.name or 'group'}: {report!r}")
    return report


class ObstructionResult(NamedTuple):
    """Outcome of the |σ(tr γ)| < |tr γ| check; passing is necessary evidence only."""

    passed: bool
    word: Word | None
    embedding: int | None
    checked: int


def modular_embedding_obstruction(
    rep: FuchsianRep,
    k: Subfield | None = None,
    config: SemiarithConfig | None = None,
) -> ObstructionResult:
    """Check |σ(tr γ)| < |tr γ| for hyperbolic γ among short words and every σ ≠ id.

    A failure certifies that no modular embedding exists.
    """
    config = config or default_config()
    if k is None:
        condition = trace_field_condition(rep, config)
        if not condition.holds:
            raise PreconditionError("the modular embedding check needs the trace-field condition")
        k = condition.trace_field
    checked = 0
    if k.degree == 1:
        return ObstructionResult(True, None, None, checked)
    for w, m in rep.words(config.sampling.obstruction_word_length, min_length=1):
        if classify_matrix(m) is not ElementType.HYPERBOLIC:
            continue
        checked += 1
        t = _in_k(k, m.trace)
        for i in range(1, k.field.n_embeddings):
            if compare_abs(t, t, i, 0) >= 0:
                logger.info(f"Obstruction at {rep.format_word(w)}, embedding {i}")
                return ObstructionResult(False, w, i, checked)
    return ObstructionResult(True, None, None, checked)
