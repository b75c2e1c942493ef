# src/semiarith/synthetic/spectra.py
"""Synthetic congruence spectra of real quadratic fields."""

from __future__ import annotations

from pydantic import Field, field_validator
from sympy import factorint, legendre_symbol, primerange, sqrt_mod

from ..congruence.spectrum import PrimeQuotient, SkippedPrime, SpectrumEntry, SpectrumReport
from ..core.numfield import format_poly
from .base import SyntheticConfig, SyntheticGenerator


class QuadraticSpectrumConfig(SyntheticConfig):
    """Spectrum of a group with invariant trace field Q(√d)."""

    discriminant: int = Field(5, description="Squarefree d > 1")
    p_max: int = Field(100, description="Largest rational prime listed")
    corruption: float = Field(0.0, description="Probability of swapping split and inert at a prime")

    @field_validator("discriminant")
    def validate_discriminant(cls, v: int) -> int:
        if v < 2 or any(e > 1 for e in factorint(v).values()):
            raise ValueError("d must be a squarefree integer greater than 1")
        return v

    @field_validator("corruption")
    def validate_corruption(cls, v: float) -> float:
        if not 0.0 <= v <= 1.0:
            raise ValueError("Corruption must be a probability")
        return v


def _symmetric(coeffs: list[int], p: int) -> list[int]:
    return [c - p if c > p // 2 else c for c in coeffs]


class QuadraticSpectrumGenerator(SyntheticGenerator):
    """Residue degrees read off the Legendre symbol (d/p); no group is involved."""

    def __init__(self, config: QuadraticSpectrumConfig | None = None) -> None:
        super().__init__(config or QuadraticSpectrumConfig())
        self.config: QuadraticSpectrumConfig = self.config  # type: ignore[assignment]

    def _quotients(self, p: int, split: bool) -> list[PrimeQuotient]:
        d = self.config.discriminant
        if not split:
            label = format_poly(_symmetric([1, 0, (-d) % p], p), "t")
            return [
                PrimeQuotient(
                    ideal=f"({p}, {label})", residue_degree=2, norm=p * p, quotient=f"PSL(2,{p * p})"
                )
            ]
        r = sqrt_mod(d, p)
        # a corrupted entry may claim a split without a square root of d
        roots = [1, p - 1] if r is None else sorted({(-int(r)) % p, int(r) % p})
        return [
            PrimeQuotient(
                ideal=f"({p}, {format_poly(_symmetric([1, c], p), 't')})",
                residue_degree=1,
                norm=p,
                quotient=f"PSL(2,{p})",
            )
            for c in roots
        ]

    def generate(self) -> SpectrumReport:
        d = self.config.discriminant
        entries: list[SpectrumEntry] = []
        skipped: list[SkippedPrime] = []
        for p in primerange(2, self.config.p_max + 1):
            p = int(p)
            if p == 2 or d % p == 0:
                skipped.append(SkippedPrime(p=p, reason=f"{p} divides the discriminant of t^2 - {d}"))
                continue
            split = legendre_symbol(d % p, p) == 1
            if self.rng.random() < self.config.corruption:
                split = not split
            entries.append(SpectrumEntry(p=p, quotients=self._quotients(p, split)))
        return SpectrumReport(
            group=self.config.name,
            degree=2,
            p_max=self.config.p_max,
            closure_cap=0,
            entries=entries,
            skipped=skipped,
        )
