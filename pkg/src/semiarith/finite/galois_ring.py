# src/semiarith/finite/galois_ring.py
"""Residue rings Z/p^m and the quadratic Galois rings GR(p^m, 2).

GR(p^m, 2) = (Z/p^m)[w]/(w^2 + c1 w + c0), where x^2 + c1 x + c0 is the
modulus of F_{p^2} lifted to integers. Elements are pairs (x, y) for x + y w.
Scalar methods work on ints, the ``*_arrays`` variants on numpy arrays of
matching shape for the enumerations in ``congruence.local``.
"""

from __future__ import annotations

from collections.abc import Iterator

import numpy as np

from ..core.errors import BadPrimeError, UnsupportedError
from .field import finite_field

Pair = tuple[int, int]


class ResidueRing:
    """Z/p^m."""

    def __init__(self, p: int, m: int) -> None:
        if p == 2:
            raise BadPrimeError("Residue rings need an odd prime", prime=p)
        if m < 1:
            raise ValueError("Precision must be positive")
        self.p = p
        self.m = m
        self.modulus = p**m

    def __repr__(self) -> str:
        return f"ResidueRing({self.p}^{self.m})"

    def reduce(self, a: int) -> int:
        return a % self.modulus

    def is_unit(self, a: int) -> bool:
        return a % self.p != 0

    def inv(self, a: int) -> int:
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit mod {self.modulus}")
        return pow(a, -1, self.modulus)

    def valuation(self, a: int) -> int:
        """p-adic valuation of a, capped at the precision."""
        a %= self.modulus
        v = 0
        while a and a % self.p == 0 and v < self.m:
            a //= self.p
            v += 1
        return self.m if a == 0 else v


class GaloisRing:
    """GR(p^m, 2), the unramified quadratic extension of Z_p at precision m."""

    def __init__(self, p: int, m: int, f: int = 2) -> None:
        if f != 2:
            raise UnsupportedError("Only quadratic Galois rings are implemented")
        self.base = ResidueRing(p, m)
        self.p = p
        self.m = m
        self.f = f
        self.modulus = self.base.modulus
        _, c1, c0 = finite_field(p, 2).modulus
        self.c1 = int(c1)
        self.c0 = int(c0)

    def __repr__(self) -> str:
        return f"GaloisRing({self.p}^{self.m}, 2)"

    def __len__(self) -> int:
        return self.modulus**2

    def elements(self) -> Iterator[Pair]:
        for x in range(self.modulus):
            for y in range(self.modulus):
                yield x, y

    def add(self, a: Pair, b: Pair) -> Pair:
        return (a[0] + b[0]) % self.modulus, (a[1] + b[1]) % self.modulus

    def neg(self, a: Pair) -> Pair:
        return (-a[0]) % self.modulus, (-a[1]) % self.modulus

    def mul(self, a: Pair, b: Pair) -> Pair:
        x1, y1 = a
        x2, y2 = b
        yy = y1 * y2
        return (
            (x1 * x2 - self.c0 * yy) % self.modulus,
            (x1 * y2 + x2 * y1 - self.c1 * yy) % self.modulus,
        )

    def scale(self, c: int, a: Pair) -> Pair:
        return (c * a[0]) % self.modulus, (c * a[1]) % self.modulus

    def frobenius(self, a: Pair) -> Pair:
        """The automorphism w ↦ -c1 - w, reducing to x ↦ x^p."""
        x, y = a
        return (x - self.c1 * y) % self.modulus, (-y) % self.modulus

    def norm(self, a: Pair) -> int:
        x, y = a
        return (x * x - self.c1 * x * y + self.c0 * y * y) % self.modulus

    def trace(self, a: Pair) -> int:
        x, y = a
        return (2 * x - self.c1 * y) % self.modulus

    def is_unit(self, a: Pair) -> bool:
        return self.norm(a) % self.p != 0

    def reduce(self, a: Pair, m: int) -> Pair:
        """Image in GR(p^m', 2) for m' <= m."""
        n = self.p**m
        return a[0] % n, a[1] % n

    # vectorized forms
    def mul_arrays(
        self, x1: np.ndarray, y1: np.ndarray, x2: np.ndarray, y2: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        yy = y1 * y2
        return (
            (x1 * x2 - self.c0 * yy) % self.modulus,
            (x1 * y2 + x2 * y1 - self.c1 * yy) % self.modulus,
        )

    def frobenius_arrays(
        self, x: np.ndarray, y: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        return (x - self.c1 * y) % self.modulus, (-y) % self.modulus

    def norm_arrays(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return (x * x - self.c1 * x * y + self.c0 * y * y) % self.modulus
