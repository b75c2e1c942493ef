# src/semiarith/congruence/spectrum.py
"""Congruence spectra and the splitting data they determine."""

from __future__ import annotations

import logging
import sys
from collections import Counter

from pydantic import BaseModel, Field
from sympy import primerange
from tqdm import tqdm

from ..core.numfield import factor_prime
from ..core.operations.models import SemiarithConfig, default_config
from ..fuchsian.group import FuchsianRep
from .order import QuaternionOrderData, order_basis
from .reduction import reduction_hom

logger = logging.getLogger(__name__)


class PrimeQuotient(BaseModel):
    """Γ/Γ(𝔭) for one prime 𝔭 above p."""

    ideal: str
    residue_degree: int
    norm: int
    quotient: str = Field(description="PSL(2, q) label of the target")
    surjective: bool | None = Field(None, description="None when above the closure cap")


class SpectrumEntry(BaseModel):
    p: int
    quotients: list[PrimeQuotient]

    @property
    def residue_degrees(self) -> list[int]:
        return sorted(q.residue_degree for q in self.quotients)

    @property
    def degree_sum(self) -> int:
        return sum(q.residue_degree for q in self.quotients)


class SkippedPrime(BaseModel):
    p: int
    reason: str


class SpectrumReport(BaseModel):
    """Residue degrees and quotient verdicts for every good p up to p_max."""

    group: str | None = None
    degree: int = Field(description="[k:Q]")
    p_max: int
    closure_cap: int
    entries: list[SpectrumEntry] = Field(default_factory=list)
    skipped: list[SkippedPrime] = Field(default_factory=list)

    def splitting_types(self) -> dict[int, tuple[int, ...]]:
        return {e.p: tuple(e.residue_degrees) for e in self.entries}


def congruence_spectrum(
    rep: FuchsianRep,
    p_max: int,
    order: QuaternionOrderData | None = None,
    config: SemiarithConfig | None = None,
) -> SpectrumReport:
    """Reduce at every prime above every good p ≤ p_max; bad primes are listed, not raised."""
    config = config or default_config()
    order = order or order_basis(rep, config)
    entries: list[SpectrumEntry] = []
    skipped: list[SkippedPrime] = []
    primes = list(primerange(2, p_max + 1))
    for p in tqdm(
        primes, desc="Spectrum", leave=False, file=sys.stderr, disable=not config.runtime.progress
    ):
        p = int(p)
        if p in order.bad_primes:
            skipped.append(SkippedPrime(p=p, reason=f"{p} ∈ S(Γ)"))
            continue
        quotients = []
        for P in factor_prime(order.k.field, p):
            hom = reduction_hom(rep, P, order, config)
            quotients.append(
                PrimeQuotient(
                    ideal=str(P),
                    residue_degree=P.residue_degree,
                    norm=P.norm,
                    quotient=f"PSL(2,{P.norm})",
                    surjective=hom.surjective,
                )
            )
        entries.append(SpectrumEntry(p=p, quotients=quotients))
    report = SpectrumReport(
        group=rep.name,
        degree=order.k.degree,
        p_max=p_max,
        closure_cap=config.enumeration.psl_closure_cap,
        entries=entries,
        skipped=skipped,
    )
    logger.info(f"Spectrum of {rep.name or 'group'}: {len(entries)} primes, {len(skipped)} skipped")
    return report


class SplittingClass(BaseModel):
    residue_degrees: list[int]
    primes: list[int]


class FieldReconstruction(BaseModel):
    """Degree and splitting census read off one spectrum, optionally compared with another."""

    degree: int = Field(description="Majority of Σ f_i over the listed primes")
    consistent: bool
    inconsistent_primes: list[int] = Field(default_factory=list)
    census: list[SplittingClass]
    common_primes: list[int] | None = None
    similar: bool | None = Field(
        None, description="Splitting types agree at every commonly good prime"
    )
    differing_primes: list[int] | None = None


def _census(types: dict[int, tuple[int, ...]]) -> list[SplittingClass]:
    classes: dict[tuple[int, ...], list[int]] = {}
    for p in sorted(types):
        classes.setdefault(types[p], []).append(p)
    return [
        SplittingClass(residue_degrees=list(t), primes=ps) for t, ps in sorted(classes.items())
    ]


def reconstruct_field_data(
    spectrum: SpectrumReport, other: SpectrumReport | None = None
) -> FieldReconstruction:
    """[k:Q] and the splitting behaviour of primes from a congruence spectrum."""
    types = spectrum.splitting_types()
    sums = {p: sum(t) for p, t in types.items()}
    counts = Counter(sums.values())
    degree = counts.most_common(1)[0][0] if counts else spectrum.degree
    inconsistent = sorted(p for p, s in sums.items() if s != degree)
    if inconsistent:
        logger.warning(f"Degree {degree} contradicted at primes {inconsistent}")
    result = FieldReconstruction(
        degree=degree,
        consistent=not inconsistent,
        inconsistent_primes=inconsistent,
        census=_census(types),
    )
    if other is not None:
        other_types = other.splitting_types()
        common = sorted(set(types) & set(other_types))
        differing = [p for p in common if types[p] != other_types[p]]
        result.common_primes = common
        result.differing_primes = differing
        result.similar = not differing
    return result
