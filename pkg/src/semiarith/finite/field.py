# src/semiarith/finite/field.py
"""Finite fields F_q, q = p^f, with elements encoded as integers.

An element c_0 + c_1 x + ... + c_{f-1} x^{f-1} of F_p[x]/(modulus) is stored
as the integer c_0 + c_1 p + ... + c_{f-1} p^{f-1}; that integer order is the
total order used for canonical PSL representatives. Multiplication in proper
extensions goes through exponent/log tables.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterator, Sequence
from functools import lru_cache

from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_irreducible_p,
    gf_mul,
    gf_pow_mod,
    gf_rem,
    gf_strip,
)

from ..core.errors import BadPrimeError, EnumerationCapExceeded
from ..core.operations.models import default_config

logger = logging.getLogger(__name__)


def least_irreducible(p: int, f: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree f over F_p.

    Candidates x^f + c_{f-1} x^{f-1} + ... + c_0 are ordered by the integer
    c_0 + c_1 p + ..., matching the element encoding.
    """
    if f == 1:
        return (1, 0)
    for n in range(p**f):
        low = [(n // p**i) % p for i in range(f)]
        candidate = [1] + low[::-1]
        if gf_irreducible_p(candidate, p, ZZ):
            return tuple(candidate)
    raise AssertionError(f"no irreducible polynomial of degree {f} over F_{p}")


class FiniteField:
    """The field with q = p^f elements."""

    def __init__(self, p: int, f: int = 1) -> None:
        if p == 2 or not isprime(p):
            raise BadPrimeError(f"Finite fields need an odd prime, got {p}", prime=p)
        if f < 1:
            raise ValueError("Extension degree must be positive")
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus = least_irreducible(p, f)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None

    def __repr__(self) -> str:
        return f"FiniteField({self.p}^{self.f})" if self.f > 1 else f"FiniteField({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self) -> int:
        return hash(("FiniteField", self.p, self.f))

    # encoding
    def coeffs(self, a: int) -> list[int]:
        """Coefficients c_0..c_{f-1} of an element."""
        out = []
        for _ in range(self.f):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        """Encode c_0 + c_1 x + ...; coefficients beyond degree f-1 are reduced."""
        poly = gf_strip([int(c) % self.p for c in reversed(list(coeffs))])
        if len(poly) > self.f:
            poly = gf_rem(poly, list(self.modulus), self.p, ZZ)
        return sum(c * self.p**i for i, c in enumerate(reversed(poly)))

    def from_int(self, n: int) -> int:
        return int(n) % self.p

    def _to_poly(self, a: int) -> list[int]:
        poly = self.coeffs(a)[::-1]
        while len(poly) > 1 and poly[0] == 0:
            poly.pop(0)
        return poly

    def _from_poly(self, poly: Sequence[int]) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(reversed(list(poly))))

    # FieldOps protocol
    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def is_zero(self, a: int) -> bool:
        return a == 0

    def add(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a + b) % self.p
        out, scale = 0, 1
        for _ in range(self.f):
            a, x = divmod(a, self.p)
            b, y = divmod(b, self.p)
            out += ((x + y) % self.p) * scale
            scale *= self.p
        return out

    def neg(self, a: int) -> int:
        if self.f == 1:
            return (-a) % self.p
        return self.from_coeffs([-c for c in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables()
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.f == 1:
            return pow(a, -1, self.p)
        exp, log = self._tables()
        return exp[(-log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if self.f == 1:
            if n < 0:
                return pow(self.inv(a), -n, self.p)
            return pow(a, n, self.p)
        if a == 0:
            if n <= 0:
                raise ZeroDivisionError("zero to a non-positive power")
            return 0
        exp, log = self._tables()
        return exp[(log[a] * n) % (self.q - 1)]

    # structure
    def _slow_mul(self, a: int, b: int) -> int:
        product = gf_mul(self._to_poly(a), self._to_poly(b), self.p, ZZ)
        return self._from_poly(gf_rem(product, list(self.modulus), self.p, ZZ))

    def _tables(self) -> tuple[list[int], list[int]]:
        if self._exp is None or self._log is None:
            cap = default_config().enumeration.residue_field_cap
            if self.q > cap:
                raise EnumerationCapExceeded(
                    f"F_{self.q} exceeds the residue field cap", size=self.q, cap=cap
                )
            g = self.primitive_element()
            exp = [1] * (self.q - 1)
            log = [0] * self.q
            for k in range(1, self.q - 1):
                exp[k] = self._slow_mul(exp[k - 1], g)
                log[exp[k]] = k
            self._exp, self._log = exp, log
            logger.debug(f"Built log tables for F_{self.q} with generator {g}")
        return self._exp, self._log

    @lru_cache(maxsize=None)  # noqa: B019
    def primitive_element(self) -> int:
        """Least-encoded generator of the multiplicative group."""
        order = self.q - 1
        prime_factors = list(factorint(order))
        for g in range(2, self.q):
            poly = self._to_poly(g)
            if all(
                gf_pow_mod(poly, order // r, list(self.modulus), self.p, ZZ) != [1]
                for r in prime_factors
            ):
                return g
        raise AssertionError(f"F_{self.q} has no primitive element")

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        if self.f == 1:
            g = self.primitive_element()
            if self._log is None:
                cap = default_config().enumeration.residue_field_cap
                if self.q > cap:
                    raise EnumerationCapExceeded(
                        f"F_{self.q} exceeds the residue field cap", size=self.q, cap=cap
                    )
                log = [0] * self.q
                x = 1
                for k in range(self.q - 1):
                    log[x] = k
                    x = (x * g) % self.p
                self._log = log
            return self._log[a]
        return self._tables()[1][a]

    def frobenius(self, a: int, e: int = 1) -> int:
        """a ↦ a^(p^e)."""
        e %= self.f
        if e == 0 or a == 0 or self.f == 1:
            return a
        return self.pow(a, self.p**e)

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a: int) -> int | None:
        """Least-encoded square root, or None for non-squares."""
        if a == 0:
            return 0
        if not self.is_square(a):
            return None
        if self.f == 1:
            from sympy.ntheory import sqrt_mod

            root = sqrt_mod(a, self.p)
            return min(root, (-root) % self.p)
        exp, log = self._tables()
        root = exp[(log[a] // 2) % (self.q - 1)]
        return min(root, self.neg(root))

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def random_element(self, rng: random.Random, nonzero: bool = False) -> int:
        return rng.randrange(1 if nonzero else 0, self.q)

    def poly_eval(self, coeffs: Sequence[int], a: int) -> int:
        """Evaluate an F_p-coefficient polynomial (high-to-low) at a."""
        acc = 0
        for c in coeffs:
            acc = self.add(self.mul(acc, a), self.from_int(c))
        return acc

    def roots(self, coeffs: Sequence[int]) -> list[int]:
        """All roots in F_q of an F_p-polynomial, ascending by encoding."""
        if len(coeffs) == 2:
            lead, const = int(coeffs[0]) % self.p, int(coeffs[1]) % self.p
            return [(-const * pow(lead, -1, self.p)) % self.p]
        cap = default_config().enumeration.residue_field_cap
        if self.q > cap:
            raise EnumerationCapExceeded(
                f"F_{self.q} exceeds the residue field cap", size=self.q, cap=cap
            )
        return [a for a in range(self.q) if self.poly_eval(coeffs, a) == 0]

    def format(self, a: int) -> str:
        if self.f == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.coeffs(a)):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "w" if i == 1 else f"w^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(reversed(terms)) or "0"


@lru_cache(maxsize=None)
def finite_field(p: int, f: int = 1) -> FiniteField:
    """Shared FiniteField instance for F_{p^f}."""
    return FiniteField(p, f)


def split_prime_power(q: int) -> tuple[int, int]:
    """(p, f) with q = p^f, or BadPrimeError."""
    factors = factorint(q)
    if len(factors) != 1:
        raise BadPrimeError(f"{q} is not a prime power")
    ((p, f),) = factors.items()
    return int(p), int(f)
