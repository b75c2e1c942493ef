# src/semiarith/rigidity.py
"""Comparison of two groups through the characteristic polynomials of squared traces.

If f: Γ₁ → Γ₂ maps Γ₁(p) onto a congruence subgroup, then χ(tr²γ) ≡ χ(tr²f(γ))
mod p for every γ; a single word whose polynomials differ mod p rules p out.
"""

from __future__ import annotations

import logging
import sys
from collections.abc import Sequence
from fractions import Fraction

from pydantic import BaseModel, Field
from sympy import primerange
from tqdm import tqdm

from .core.errors import FieldError, PreconditionError
from .core.numfield import AlgebraicNumber, Subfield, format_poly
from .core.operations.models import SemiarithConfig, default_config
from .fuchsian.conjugacy import conjugator
from .fuchsian.group import FuchsianRep
from .fuchsian.tracefield import trace_field_condition
from .fuchsian.words import Word

logger = logging.getLogger(__name__)


class WordComparison(BaseModel):
    word: str
    image: str
    tr2_a: str
    tr2_b: str
    char_poly_a: str
    char_poly_b: str
    agree: bool = Field(description="The characteristic polynomials are equal")
    disagreeing_primes: list[int] = Field(default_factory=list)


class PrimeVerdict(BaseModel):
    p: int
    contradicted: bool
    witness: str | None = None


class RigidityReport(BaseModel):
    """Word-by-word comparison of χ(tr²) in two groups under a generator correspondence."""

    group_a: str | None = None
    group_b: str | None = None
    correspondence: list[int]
    max_length: int
    p_max: int
    squares_only: bool = Field(description="Words restricted to Γ^(2)")
    words: list[WordComparison] = Field(default_factory=list)
    primes: list[PrimeVerdict] = Field(default_factory=list)
    congruence_possible: bool
    witness_word: str | None = None
    witness_prime: int | None = None
    conjugator: list[list[str]] | None = None
    conjugator_signs: list[int] | None = None

    @property
    def contradicted_primes(self) -> list[int]:
        return [v.p for v in self.primes if v.contradicted]


def _reduce_poly(coeffs: Sequence[Fraction], p: int) -> tuple[int, ...] | None:
    if any(c.denominator % p == 0 for c in coeffs):
        return None
    return tuple(c.numerator * pow(c.denominator, -1, p) % p for c in coeffs)


def _squared_trace(rep: FuchsianRep, k: Subfield, w: Word) -> AlgebraicNumber:
    t = rep.trace(w)
    value = k.to_subfield(t * t)
    if value is None:
        raise PreconditionError(f"tr² of {rep.format_word(w)} lies outside the invariant trace field")
    return value


def _translate(w: Word, correspondence: Sequence[int]) -> Word:
    return Word((correspondence[i], e) for i, e in w)


def rigidity(
    rep_a: FuchsianRep,
    rep_b: FuchsianRep,
    correspondence: Sequence[int] | None = None,
    max_length: int = 3,
    p_max: int = 31,
    config: SemiarithConfig | None = None,
) -> RigidityReport:
    """Compare χ(tr²γ) with χ(tr²f(γ)) on all words up to max_length.

    ``correspondence[i]`` is the index in rep_b of the image of rep_a's i-th
    generator. When either group fails the trace-field condition only words in
    Γ^(2) are compared. Good primes are odd primes not dividing the
    discriminant of either invariant trace field; for each the verdict is
    whether some word's polynomials differ mod p.
    """
    config = config or default_config()
    n = rep_a.n_generators
    correspondence = list(correspondence) if correspondence is not None else list(range(n))
    if sorted(correspondence) != list(range(rep_b.n_generators)) or len(correspondence) != n:
        raise PreconditionError("the correspondence must be a bijection on generators")
    cond_a = trace_field_condition(rep_a, config)
    cond_b = trace_field_condition(rep_b, config)
    k_a, k_b = cond_a.invariant_trace_field, cond_b.invariant_trace_field
    squares_only = not (cond_a.holds and cond_b.holds)
    bad = {p for k in (k_a, k_b) for p in range(2, p_max + 1) if k.field.discriminant % p == 0}
    primes = [int(p) for p in primerange(3, p_max + 1) if p not in bad]

    words = [
        w
        for w, _ in rep_a.iter_words(max_length, min_length=1)
        if not squares_only or not any(w.mod2_vector(n))
    ]
    comparisons: list[WordComparison] = []
    contradictions: dict[int, str] = {}
    for w in tqdm(words, desc="Words", leave=False, file=sys.stderr, disable=not config.runtime.progress):
        image = _translate(w, correspondence)
        x, y = _squared_trace(rep_a, k_a, w), _squared_trace(rep_b, k_b, image)
        chi_a, chi_b = x.char_poly(), y.char_poly()
        disagreeing = [p for p in primes if _reduce_poly(chi_a, p) != _reduce_poly(chi_b, p)]
        label = rep_a.format_word(w)
        for p in disagreeing:
            contradictions.setdefault(p, label)
        comparisons.append(
            WordComparison(
                word=label,
                image=rep_b.format_word(image),
                tr2_a=str(x),
                tr2_b=str(y),
                char_poly_a=format_poly(chi_a),
                char_poly_b=format_poly(chi_b),
                agree=chi_a == chi_b,
                disagreeing_primes=disagreeing,
            )
        )

    witness = next((c for c in comparisons if c.disagreeing_primes or not c.agree), None)
    report = RigidityReport(
        group_a=rep_a.name,
        group_b=rep_b.name,
        correspondence=correspondence,
        max_length=max_length,
        p_max=p_max,
        squares_only=squares_only,
        words=comparisons,
        primes=[PrimeVerdict(p=p, contradicted=p in contradictions, witness=contradictions.get(p)) for p in primes],
        congruence_possible=witness is None,
        witness_word=witness.word if witness else None,
        witness_prime=witness.disagreeing_primes[0] if witness and witness.disagreeing_primes else None,
    )
    if witness is None:
        try:
            found = conjugator(rep_a, rep_b, correspondence, config)
        except (FieldError, PreconditionError) as e:
            logger.info(f"No conjugator computed: {e}")
            found = None
        if found is not None:
            report.conjugator = [[str(x) for x in row] for row in found.matrix.rows()]
            report.conjugator_signs = list(found.signs)
    logger.info(
        f"Rigidity {rep_a.name or 'A'} vs {rep_b.name or 'B'}: "
        f"{len(report.contradicted_primes)} of {len(primes)} primes contradicted"
    )
    return report
