# src/semiarith/synthetic/groups.py
"""Built-in group corpus and random conjugates of its members."""

from __future__ import annotations

import logging
from collections.abc import Callable
from functools import lru_cache
from typing import NamedTuple

from pydantic import Field, field_validator

from ..core.errors import PreconditionError
from ..core.numfield import AlgebraicNumber, NumberField, compositum, field_create, rational_field
from ..fuchsian.group import FuchsianRep, Matrix, load_group
from ..fuchsian.tracefield import squares_subgroup
from ..fuchsian.words import Word, commutator
from .base import SyntheticConfig, SyntheticGenerator

logger = logging.getLogger(__name__)


class TakeuchiField(NamedTuple):
    field: NumberField
    sqrt2: AlgebraicNumber
    sqrt3: AlgebraicNumber
    sqrt5: AlgebraicNumber


@lru_cache(maxsize=None)
def takeuchi_field() -> TakeuchiField:
    """Q(√2, √3, √5), degree 8, with a computed primitive element."""
    q2 = field_create([1, 0, -2], (1, 2), name="Q(sqrt2)")
    step = compositum(q2, [1, 0, -3], (1, 2), name="Q(sqrt2,sqrt3)")
    top = compositum(step.field, [1, 0, -5], (2, 3), name="Q(sqrt2,sqrt3,sqrt5)")
    return TakeuchiField(
        top.field,
        step.theta.substitute(top.theta),
        step.beta.substitute(top.theta),
        top.beta,
    )


def _signature_relator() -> Word:
    """(αβα⁻¹β⁻¹)² for the genus-one, one-cone-point-of-order-2 signature."""
    return commutator(Word.generator(0), Word.generator(1)) ** 2


def _modular() -> FuchsianRep:
    S, T = Word.generator(1), Word.generator(0)
    return load_group(
        rational_field(),
        [[[1, 1], [0, 1]], [[0, -1], [1, 0]]],
        labels=["T", "S"],
        relators=[S**2, (S * T) ** 3],
        name="modular",
    )


def _hecke_5() -> FuchsianRep:
    K = field_create([1, -1, -1], (1, 2), name="Q(phi)")
    phi = K.gen
    S, T = Word.generator(1), Word.generator(0)
    return load_group(
        K,
        [[[1, phi], [0, 1]], [[0, -1], [1, 0]]],
        labels=["T", "S"],
        relators=[S**2, (S * T) ** 5],
        name="hecke-5",
    )


def _takeuchi_a() -> FuchsianRep:
    K = takeuchi_field()
    r2, r3, r5 = K.sqrt2, K.sqrt3, K.sqrt5
    zero = K.field.zero
    alpha = [[(r5 + 1) / 2, zero], [zero, (r5 - 1) / 2]]
    beta = [[r3, r2], [r2, r3]]
    return load_group(
        K.field, [alpha, beta], ["alpha", "beta"], [_signature_relator()], "takeuchi-A"
    )


def _takeuchi_b() -> FuchsianRep:
    K = takeuchi_field()
    r2, r6 = K.sqrt2, K.sqrt2 * K.sqrt3
    zero = K.field.zero
    alpha = [[r2 + 1, zero], [zero, r2 - 1]]
    beta = [[r6 / 2, r2 / 2], [r2 / 2, r6 / 2]]
    return load_group(
        K.field, [alpha, beta], ["alpha", "beta"], [_signature_relator()], "takeuchi-B"
    )


def _conj_sqrt2_demo() -> FuchsianRep:
    """tr x = 2√2 is hyperbolic with |σ(tr x)| = |tr x|; tr² y = 6 + 4√2 keeps the trace-field condition."""
    K = field_create([1, 0, -2], (1, 2), name="Q(sqrt2)")
    r = K.gen
    return load_group(
        K,
        [[[r + 1, 0], [0, r - 1]], [[r + 1, 1], [r, 1]]],
        labels=["x", "y"],
        name="conj-sqrt2-demo",
    )


def _squares_of(base: str, name: str) -> Callable[[], FuchsianRep]:
    def build() -> FuchsianRep:
        g = squares_subgroup(builtin_group(base)).group
        return FuchsianRep(g.field, g.generators, g.labels, g.relators, name)

    return build


BUILTIN_GROUPS: dict[str, Callable[[], FuchsianRep]] = {
    "modular": _modular,
    "hecke-5": _hecke_5,
    "takeuchi-A": _takeuchi_a,
    "takeuchi-B": _takeuchi_b,
    "takeuchi-A2": _squares_of("takeuchi-A", "takeuchi-A2"),
    "takeuchi-B2": _squares_of("takeuchi-B", "takeuchi-B2"),
    "conj-sqrt2-demo": _conj_sqrt2_demo,
}


def builtin_names() -> list[str]:
    return list(BUILTIN_GROUPS)


@lru_cache(maxsize=None)
def builtin_group(name: str) -> FuchsianRep:
    """A member of the built-in corpus; one shared instance per name.

    Raises:
        PreconditionError: unknown name
    """
    try:
        builder = BUILTIN_GROUPS[name]
    except KeyError:
        raise PreconditionError(
            f"unknown built-in group {name!r}; known: {', '.join(BUILTIN_GROUPS)}"
        ) from None
    rep = builder()
    logger.debug(f"Built {rep!r}")
    return rep


# random conjugates


class ConjugateConfig(SyntheticConfig):
    """Configuration for random conjugates of a group."""

    entry_bound: int = Field(3, description="Conjugator coordinates are drawn from [-bound, bound]")
    flip_signs: bool = Field(True, description="Negate generator lifts at random")

    @field_validator("entry_bound")
    def validate_bound(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Entry bound must be positive")
        return v


class ConjugatePair(NamedTuple):
    """conjugate.generators[i] = signs[i]·c·g_i·c⁻¹."""

    original: FuchsianRep
    conjugate: FuchsianRep
    matrix: Matrix
    signs: tuple[int, ...]


class ConjugateGenerator(SyntheticGenerator):
    """Conjugates a group by random invertible matrices over its entry field."""

    def __init__(self, rep: FuchsianRep, config: ConjugateConfig | None = None) -> None:
        super().__init__(config or ConjugateConfig())
        self.config: ConjugateConfig = self.config  # type: ignore[assignment]
        self.rep = rep

    def _random_entry(self) -> AlgebraicNumber:
        bound = self.config.entry_bound
        return self.rep.field.element(
            [self.rng.randint(-bound, bound) for _ in range(self.rep.field.degree)]
        )

    def random_matrix(self) -> Matrix:
        while True:
            c = Matrix(*(self._random_entry() for _ in range(4)))
            if not c.det.is_zero:
                return c

    def generate(self) -> ConjugatePair:
        c = self.random_matrix()
        inverse = c.adjugate().scale(c.det.inverse())
        signs = tuple(
            self.rng.choice((1, -1)) if self.config.flip_signs else 1
            for _ in range(self.rep.n_generators)
        )
        generators = [
            m if s == 1 else m.negate()
            for m, s in zip((c @ g @ inverse for g in self.rep.generators), signs)
        ]
        name = self.config.name or (f"{self.rep.name}-conjugate" if self.rep.name else None)
        conjugate = FuchsianRep(self.rep.field, generators, self.rep.labels, self.rep.relators, name)
        return ConjugatePair(self.rep, conjugate, c, signs)
