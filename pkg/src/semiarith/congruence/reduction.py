# src/semiarith/congruence/reduction.py
"""Reduction maps Γ → PSL(2, o_k/𝔭) and congruence-quotient identification."""

from __future__ import annotations

import logging
from collections.abc import Sequence

from ..core.errors import (
    BadPrimeError,
    InternalConsistencyError,
    PreconditionError,
)
from ..core.numfield import PrimeIdealData, factor_prime
from ..core.operations.models import SemiarithConfig, default_config
from ..finite.field import split_prime_power
from ..finite.psl2 import (
    Automorphism,
    PSL2Element,
    group_closure,
    identity,
    match_automorphism,
    psl2_canonical,
    psl2_order,
)
from ..fuchsian.group import FuchsianRep
from ..fuchsian.words import Word
from .order import QuaternionOrderData, ResidueSplitting, order_basis, split_order_mod_p

logger = logging.getLogger(__name__)


def evaluate_images(images: Sequence[PSL2Element], w: Word) -> PSL2Element:
    """Image of a word under generator images."""
    result = identity(images[0].field)
    for index, exponent in w:
        result = result * images[index] ** exponent
    return result


class ReductionHom:
    """ρ_𝔭: Γ → PSL(2, q) by generator images.

    ``surjective`` and ``image_order`` are None when PSL(2, q) exceeds the
    closure cap.
    """

    def __init__(
        self,
        rep: FuchsianRep,
        prime: PrimeIdealData,
        splitting: ResidueSplitting,
        generator_images: Sequence[PSL2Element],
        image_order: int | None,
    ) -> None:
        self.rep = rep
        self.prime = prime
        self.splitting = splitting
        self.generator_images = tuple(generator_images)
        self.q = prime.norm
        self.image_order = image_order
        self.surjective = None if image_order is None else image_order == psl2_order(self.q)

    def __repr__(self) -> str:
        return (
            f"ReductionHom({self.rep.name or '?'} mod {self.prime}, "
            f"surjective={self.surjective}, image order {self.image_order})"
        )

    def image(self, w: Word) -> PSL2Element:
        return evaluate_images(self.generator_images, w)


def _generator_images(
    rep: FuchsianRep, splitting: ResidueSplitting
) -> list[PSL2Element]:
    F = splitting.field
    images = [psl2_canonical(F, splitting.reduce_matrix(g)) for g in rep.generators]
    for r in rep.relators:
        if not evaluate_images(images, r).is_identity:
            raise InternalConsistencyError(
                f"relator {rep.format_word(r)} does not reduce to the identity mod {splitting.prime}"
            )
    return images


def _order_for(
    rep: FuchsianRep, order: QuaternionOrderData | None, config: SemiarithConfig
) -> QuaternionOrderData:
    if order is None:
        return order_basis(rep, config)
    if order.rep is not rep:
        raise PreconditionError("the order belongs to a different group")
    return order


def reduction_hom(
    rep: FuchsianRep,
    prime: PrimeIdealData,
    order: QuaternionOrderData | None = None,
    config: SemiarithConfig | None = None,
) -> ReductionHom:
    """Generator images mod 𝔭 and surjectivity by closure.

    Raises:
        BadPrimeError: p ∈ S(Γ)
    """
    config = config or default_config()
    order = _order_for(rep, order, config)
    splitting = split_order_mod_p(order, prime)
    images = _generator_images(rep, splitting)
    q = prime.norm
    image_order = None
    if psl2_order(q) <= config.enumeration.psl_closure_cap:
        image_order = group_closure(images, config).order
    else:
        logger.warning(f"PSL(2,{q}) exceeds the closure cap; surjectivity undecided")
    hom = ReductionHom(rep, prime, splitting, images, image_order)
    logger.info(repr(hom))
    return hom


def in_congruence_subgroup(
    rep: FuchsianRep,
    prime: PrimeIdealData,
    w: Word,
    order: QuaternionOrderData | None = None,
    config: SemiarithConfig | None = None,
) -> bool:
    """Whether w lies in the principal congruence subgroup Γ(𝔭)."""
    config = config or default_config()
    splitting = split_order_mod_p(_order_for(rep, order, config), prime)
    return evaluate_images(_generator_images(rep, splitting), w).is_identity


def twist(hom: ReductionHom, alpha: Automorphism) -> list[PSL2Element]:
    """Generator images of α ∘ ρ_𝔭."""
    return [alpha.apply(g) for g in hom.generator_images]


def identify_quotient(
    rep: FuchsianRep,
    images: Sequence[PSL2Element],
    order: QuaternionOrderData | None = None,
    config: SemiarithConfig | None = None,
) -> PrimeIdealData:
    """The unique prime 𝔭 of norm q whose reduction matches the given epimorphism.

    The answer is conditional on the kernel being a congruence subgroup; only
    the consistency of the data can be checked.

    Raises:
        PreconditionError: q even, the images are no epimorphism, or nothing matches
        BadPrimeError: p ∈ S(Γ)
        InternalConsistencyError: more than one prime matches
    """
    config = config or default_config()
    if len(images) != rep.n_generators:
        raise PreconditionError("one image per generator is required")
    q = images[0].q
    p, f = split_prime_power(q)
    if p == 2:
        raise PreconditionError(f"q = {q} is even; only odd q are supported")
    order = _order_for(rep, order, config)
    if p in order.bad_primes:
        raise BadPrimeError(f"{p} ∈ S(Γ) = {sorted(order.bad_primes)}", prime=p)
    for r in rep.relators:
        if not evaluate_images(images, r).is_identity:
            raise PreconditionError(f"relator {rep.format_word(r)} is not mapped to the identity")
    if psl2_order(q) <= config.enumeration.psl_closure_cap:
        if group_closure(images, config).order != psl2_order(q):
            raise PreconditionError(f"the images do not generate PSL(2,{q})")
    candidates = [P for P in factor_prime(order.k.field, p) if P.residue_degree == f]
    matches = []
    for P in candidates:
        splitting = split_order_mod_p(order, P)
        if match_automorphism(_generator_images(rep, splitting), images) is not None:
            matches.append(P)
    logger.debug(f"{len(candidates)} primes of norm {q}, {len(matches)} matching")
    if not matches:
        raise PreconditionError(
            f"no prime of norm {q} matches; the kernel is not a congruence subgroup of prime level"
        )
    if len(matches) > 1:
        raise InternalConsistencyError(
            f"primes {', '.join(map(str, matches))} all match; uniqueness violated"
        )
    logger.info(f"Quotient identified with {rep.name or 'group'} mod {matches[0]}")
    return matches[0]
