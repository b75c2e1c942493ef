# src/semiarith/finite/psl2.py
"""The groups SL(2, q) and PSL(2, q) over the finite fields of ``field.py``.

PSL elements are stored as the canonical representative of {M, -M}: the
first nonzero entry in row-major order has the smaller encoding of itself and
its negative.
"""

from __future__ import annotations

import logging
import random
from collections import deque
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, Field
from sympy import factorint

from ..core.errors import (
    BadPrimeError,
    DeterminantError,
    EnumerationCapExceeded,
    PreconditionError,
)
from ..core.linalg import nullspace
from ..core.operations.models import SemiarithConfig, default_config
from .field import FiniteField, finite_field, split_prime_power

logger = logging.getLogger(__name__)

Entries = tuple[int, int, int, int]


def _canonical(F: FiniteField, m: Entries) -> Entries:
    for e in m:
        if e:
            if F.neg(e) < e:
                return (F.neg(m[0]), F.neg(m[1]), F.neg(m[2]), F.neg(m[3]))
            return m
    raise DeterminantError("zero matrix has no PSL representative")


def mat_mul(F: FiniteField, x: Entries, y: Entries) -> Entries:
    if F.f == 1:
        p = F.p
        return (
            (x[0] * y[0] + x[1] * y[2]) % p,
            (x[0] * y[1] + x[1] * y[3]) % p,
            (x[2] * y[0] + x[3] * y[2]) % p,
            (x[2] * y[1] + x[3] * y[3]) % p,
        )
    add, mul = F.add, F.mul
    return (
        add(mul(x[0], y[0]), mul(x[1], y[2])),
        add(mul(x[0], y[1]), mul(x[1], y[3])),
        add(mul(x[2], y[0]), mul(x[3], y[2])),
        add(mul(x[2], y[1]), mul(x[3], y[3])),
    )


def mat_det(F: FiniteField, m: Entries) -> int:
    return F.sub(F.mul(m[0], m[3]), F.mul(m[1], m[2]))


def _adjugate(F: FiniteField, m: Entries) -> Entries:
    return (m[3], F.neg(m[1]), F.neg(m[2]), m[0])


class PSL2Element:
    """An element of PSL(2, q)."""

    __slots__ = ("field", "entries")

    def __init__(self, field: FiniteField, entries: Entries) -> None:
        self.field = field
        self.entries = _canonical(field, entries)

    @classmethod
    def _raw(cls, field: FiniteField, entries: Entries) -> PSL2Element:
        obj = cls.__new__(cls)
        obj.field = field
        obj.entries = entries
        return obj

    @property
    def q(self) -> int:
        return self.field.q

    def __mul__(self, other: PSL2Element) -> PSL2Element:
        return PSL2Element(self.field, mat_mul(self.field, self.entries, other.entries))

    def inverse(self) -> PSL2Element:
        return PSL2Element(self.field, _adjugate(self.field, self.entries))

    def __pow__(self, n: int) -> PSL2Element:
        base = self if n >= 0 else self.inverse()
        result = identity(self.field)
        for _ in range(abs(n)):
            result = result * base
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PSL2Element)
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.entries))

    def __repr__(self) -> str:
        a, b, c, d = (self.field.format(e) for e in self.entries)
        return f"[[{a}, {b}], [{c}, {d}]] mod ±1 in PSL(2,{self.q})"

    @property
    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)

    @property
    def trace(self) -> int:
        """Trace of the canonical representative (defined up to sign)."""
        return self.field.add(self.entries[0], self.entries[3])

    @property
    def matrix(self) -> list[list[int]]:
        a, b, c, d = self.entries
        return [[a, b], [c, d]]

    def frobenius(self, e: int = 1) -> PSL2Element:
        F = self.field
        return PSL2Element(F, tuple(F.frobenius(x, e) for x in self.entries))  # type: ignore[arg-type]


def identity(field: FiniteField) -> PSL2Element:
    return PSL2Element._raw(field, (1, 0, 0, 1))


def psl2_canonical(field: FiniteField, matrix: Sequence[Sequence[int]] | Sequence[int]) -> PSL2Element:
    """Validated PSL element from a 2×2 matrix of field codes."""
    flat = [x for row in matrix for x in row] if isinstance(matrix[0], Sequence) else list(matrix)  # type: ignore[union-attr]
    if len(flat) != 4:
        raise ValueError("expected a 2x2 matrix")
    entries: Entries = tuple(int(x) % field.q for x in flat)  # type: ignore[assignment]
    if mat_det(field, entries) != 1:
        raise DeterminantError(f"det {field.format(mat_det(field, entries))} != 1 over F_{field.q}")
    return PSL2Element(field, entries)


def _check_q(q: int) -> tuple[int, int]:
    p, f = split_prime_power(q)
    if p == 2:
        raise BadPrimeError(f"PSL(2, {q}) in characteristic 2 is not supported", prime=p)
    if q <= 3:
        raise BadPrimeError(f"PSL(2, {q}) is not simple; q must exceed 3", prime=p)
    return p, f


def psl2_order(q: int) -> int:
    """½q(q²−1)."""
    _check_q(q)
    return q * (q * q - 1) // 2


class ClosureResult(NamedTuple):
    order: int
    elements: frozenset[PSL2Element]


def group_closure(
    generators: Sequence[PSL2Element],
    config: SemiarithConfig | None = None,
) -> ClosureResult:
    """Subgroup generated by the given elements, by breadth-first multiplication."""
    if not generators:
        raise PreconditionError("group_closure needs at least one generator")
    F = generators[0].field
    config = config or default_config()
    cap = config.enumeration.psl_closure_cap
    bound = psl2_order(F.q)
    if bound > cap:
        raise EnumerationCapExceeded(
            f"PSL(2,{F.q}) has {bound} elements, above the cap {cap}", size=bound, cap=cap
        )
    gens = [g.entries for g in generators]
    start = (1, 0, 0, 1)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _canonical(F, mat_mul(F, x, g))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    logger.debug(f"Closure of {len(gens)} generators in PSL(2,{F.q}): {len(seen)} elements")
    return ClosureResult(len(seen), frozenset(PSL2Element._raw(F, e) for e in seen))


class TraceSquare(NamedTuple):
    value: int
    orbit: tuple[int, ...]


def tr2_finite(g: PSL2Element) -> TraceSquare:
    """(tr g)² and its Frobenius orbit (sorted encodings)."""
    F = g.field
    t = g.trace
    value = F.mul(t, t)
    orbit = tuple(sorted({F.frobenius(value, e) for e in range(F.f)}))
    return TraceSquare(value, orbit)


def standard_generators(field: FiniteField) -> list[PSL2Element]:
    """Generators of PSL(2, q): T, S for prime q; E12(1), E21(1), diag(w, 1/w) otherwise."""
    if field.f == 1:
        return [
            PSL2Element(field, (1, 1, 0, 1)),
            PSL2Element(field, (0, field.neg(1), 1, 0)),
        ]
    w = field.primitive_element()
    return [
        PSL2Element(field, (1, 1, 0, 1)),
        PSL2Element(field, (1, 0, 1, 1)),
        PSL2Element(field, (w, 0, 0, field.inv(w))),
    ]


class Automorphism:
    """g ↦ X · φ^e(g) · X⁻¹ with X in GL(2, q) normalized to first nonzero entry 1."""

    __slots__ = ("field", "frobenius_power", "conjugator")

    def __init__(self, field: FiniteField, frobenius_power: int, conjugator: Entries) -> None:
        if mat_det(field, conjugator) == 0:
            raise DeterminantError("conjugator must be invertible")
        lead = next(e for e in conjugator if e)
        inv = field.inv(lead)
        self.field = field
        self.frobenius_power = frobenius_power % field.f
        self.conjugator: Entries = tuple(field.mul(inv, e) for e in conjugator)  # type: ignore[assignment]

    @classmethod
    def identity(cls, field: FiniteField) -> Automorphism:
        return cls(field, 0, (1, 0, 0, 1))

    @classmethod
    def random(cls, field: FiniteField, rng: random.Random, frobenius_power: int = 0) -> Automorphism:
        while True:
            X = tuple(field.random_element(rng) for _ in range(4))
            if mat_det(field, X) != 0:  # type: ignore[arg-type]
                return cls(field, frobenius_power, X)  # type: ignore[arg-type]

    def apply(self, g: PSL2Element) -> PSL2Element:
        F = self.field
        h = g.frobenius(self.frobenius_power).entries if self.frobenius_power else g.entries
        X = self.conjugator
        m = mat_mul(F, mat_mul(F, X, h), _adjugate(F, X))
        s = F.inv(mat_det(F, X))
        return PSL2Element(F, tuple(F.mul(s, e) for e in m))  # type: ignore[arg-type]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Automorphism)
            and self.field == other.field
            and self.frobenius_power == other.frobenius_power
            and self.conjugator == other.conjugator
        )

    def __hash__(self) -> int:
        return hash((self.field, self.frobenius_power, self.conjugator))

    def __repr__(self) -> str:
        a, b, c, d = (self.field.format(e) for e in self.conjugator)
        return f"Automorphism(frobenius^{self.frobenius_power}, [[{a}, {b}], [{c}, {d}]])"


def _conjugacy_rows(F: FiniteField, A: Entries, B: Entries) -> list[list[int]]:
    """Rows of X·A − B·X = 0 in the unknowns (x11, x12, x21, x22)."""
    rows = []
    for r in range(2):
        for c in range(2):
            row = [0] * 4
            for u in range(2):
                for v in range(2):
                    coef = 0
                    if r == u:
                        coef = F.add(coef, A[2 * v + c])
                    if v == c:
                        coef = F.sub(coef, B[2 * r + u])
                    row[2 * u + v] = coef
            rows.append(row)
    return rows


def _sign_choices(F: FiniteField, A: Sequence[Entries], B: Sequence[Entries]) -> list[list[Entries]] | None:
    """All sign-adjusted target lists with tr(A_i) = tr(±B_i)."""
    options: list[list[Entries]] = []
    for a, b in zip(A, B):
        ta, tb = F.add(a[0], a[3]), F.add(b[0], b[3])
        neg_b: Entries = tuple(F.neg(x) for x in b)  # type: ignore[assignment]
        if ta == 0 and tb == 0:
            options.append([b, neg_b])
        elif ta == tb:
            options.append([b])
        elif ta == F.neg(tb):
            options.append([neg_b])
        else:
            return None
    choices: list[list[Entries]] = [[]]
    for opt in options:
        choices = [c + [o] for c in choices for o in opt]
    return choices


def match_automorphism(
    h1: Sequence[PSL2Element], h2: Sequence[PSL2Element]
) -> Automorphism | None:
    """An automorphism α of PSL(2, q) with α(h1_i) = h2_i for all i, if one exists."""
    if len(h1) != len(h2):
        raise PreconditionError("generator image lists differ in length")
    if not h1:
        return None
    F = h1[0].field
    if any(g.field != F for g in list(h1) + list(h2)):
        return None
    if any(tr2_finite(a).orbit != tr2_finite(b).orbit for a, b in zip(h1, h2)):
        return None
    B = [g.entries for g in h2]
    for e in range(F.f):
        A = [g.frobenius(e).entries for g in h1]
        choices = _sign_choices(F, A, B)
        if choices is None:
            continue
        for targets in choices:
            rows = [row for a, b in zip(A, targets) for row in _conjugacy_rows(F, a, b)]
            basis = nullspace(rows, 4, F)
            candidates = list(basis)
            if len(basis) > 1:
                candidates.append([F.add(x, y) for x, y in zip(basis[0], basis[1])])
            for vec in candidates:
                X: Entries = tuple(vec)  # type: ignore[assignment]
                if mat_det(F, X) == 0:
                    continue
                alpha = Automorphism(F, e, X)
                if all(alpha.apply(a) == b for a, b in zip(h1, h2)):
                    return alpha
    return None


def factor_product_epimorphism(
    factor_qs: Sequence[int],
    images: Sequence[Sequence[PSL2Element]],
    target_q: int,
    config: SemiarithConfig | None = None,
) -> tuple[int, Automorphism]:
    """Locate the factor j through which a surjection ∏ PSL(2, q_i) → PSL(2, q′) factors.

    ``images[i]`` are the images of ``standard_generators`` of factor i.
    Returns the 0-based factor index and the automorphism α with β = α ∘ pr_j.
    """
    if len(factor_qs) != len(images):
        raise PreconditionError("one image list per factor is required")
    if target_q not in factor_qs:
        raise PreconditionError(
            f"PSL(2,{target_q}) is not a composition factor of the product"
        )
    target = finite_field(*split_prime_power(target_q))
    flat = [g for imgs in images for g in imgs]
    if any(g.field != target for g in flat):
        raise PreconditionError(f"images must lie in PSL(2,{target_q})")
    config = config or default_config()
    if psl2_order(target_q) <= config.enumeration.psl_closure_cap:
        if group_closure(flat, config).order != psl2_order(target_q):
            raise PreconditionError("the map is not surjective")
    for j, (q_j, imgs) in enumerate(zip(factor_qs, images)):
        if q_j != target_q:
            continue
        others_trivial = all(
            g.is_identity for i, other in enumerate(images) if i != j for g in other
        )
        if not others_trivial:
            continue
        alpha = match_automorphism(standard_generators(target), imgs)
        if alpha is not None:
            return j, alpha
    raise PreconditionError("no factor carries the map; input is not a homomorphism")


class SimplicityCertificate(BaseModel):
    """Enumerative simplicity check for PSL(2, q)."""

    q: int
    order: int
    class_sizes: list[int] = Field(description="Conjugacy class sizes, ascending")
    simple: bool


def simplicity_certificate(q: int, config: SemiarithConfig | None = None) -> SimplicityCertificate:
    """Verify that every nontrivial normal closure is the whole group."""
    p, f = _check_q(q)
    F = finite_field(p, f)
    group = group_closure(standard_generators(F), config)
    elements = [g.entries for g in group.elements]
    inverses = {x: _canonical(F, _adjugate(F, x)) for x in elements}
    remaining = set(elements)
    remaining.discard((1, 0, 0, 1))
    sizes = [1]
    simple = True
    while remaining:
        x = min(remaining)
        conj_class = {
            _canonical(F, mat_mul(F, mat_mul(F, y, x), inverses[y])) for y in elements
        }
        remaining -= conj_class
        sizes.append(len(conj_class))
        normal = group_closure([PSL2Element._raw(F, c) for c in sorted(conj_class)], config)
        if normal.order != group.order:
            simple = False
    logger.info(f"PSL(2,{q}): {len(sizes)} classes, simple={simple}")
    return SimplicityCertificate(q=q, order=group.order, class_sizes=sorted(sizes), simple=simple)


# SL(2) over residue rings


def sl2_lift(matrix: Sequence[int], p: int, r: int, s: int) -> tuple[int, int, int, int]:
    """Lift M with det ≡ 1 mod p^r to det = 1 mod p^(r+s) without changing M mod p^r."""
    a, b, c, d = (int(x) for x in matrix)
    n = p ** (r + s)
    if (a * d - b * c - 1) % p**r:
        raise DeterminantError(f"det is not 1 mod {p}^{r}")
    delta_inv = pow((a * d - b * c) % n, -1, n)
    return (a * delta_inv) % n, (b * delta_inv) % n, c % n, d % n


def _unit_inverses(n: int, p: int) -> np.ndarray:
    """Lookup table x ↦ x⁻¹ mod n on units, 0 elsewhere."""
    return np.array([pow(x, -1, n) if x % p else 0 for x in range(n)], dtype=np.int64)


def sl2_elements(n: int, config: SemiarithConfig | None = None) -> np.ndarray:
    """All of SL(2, Z/n) as an (N, 4) array of (a, b, c, d).

    Prime powers use d = (1 + bc)/a for unit a and c = (ad − 1)/b otherwise;
    other moduli are enumerated by brute force.
    """
    config = config or default_config()
    factors = factorint(n)
    if len(factors) == 1:
        ((p, _),) = factors.items()
        size = n**3 - n**3 // p**2
        cap = config.enumeration.local_unramified_cap
        if size > cap:
            raise EnumerationCapExceeded(f"SL(2, Z/{n}) has {size} elements", size=size, cap=cap)
        grid = np.arange(n, dtype=np.int64)
        u, v = (x.ravel() for x in np.meshgrid(grid, grid, indexing="ij"))
        inverses = _unit_inverses(n, p)
        blocks = []
        for a in range(n):
            if a % p:
                # (b, c) free
                d = ((1 + u * v) * inverses[a]) % n
                blocks.append(np.stack([np.full_like(u, a), u, v, d], axis=1))
            else:
                # a non-unit forces b to be a unit; (b, d) free
                unit = u % p != 0
                b, d = u[unit], v[unit]
                c = ((a * d - 1) * inverses[b]) % n
                blocks.append(np.stack([np.full_like(b, a), b, c, d], axis=1))
        return np.concatenate(blocks)
    size = n**4
    if size > config.enumeration.crt_cap:
        raise EnumerationCapExceeded(
            f"brute force over (Z/{n})^4 has {size} cases", size=size, cap=config.enumeration.crt_cap
        )
    grid = np.arange(n, dtype=np.int64)
    a, b, c, d = (x.ravel() for x in np.meshgrid(grid, grid, grid, grid, indexing="ij"))
    keep = (a * d - b * c) % n == 1
    return np.stack([a[keep], b[keep], c[keep], d[keep]], axis=1)


def sl2_preimage_counts(
    p: int, r: int, s: int, config: SemiarithConfig | None = None
) -> dict[tuple[int, ...], int]:
    """Number of preimages in SL(2, Z/p^(r+s)) of each element of SL(2, Z/p^r)."""
    upper = sl2_elements(p ** (r + s), config) % p**r
    keys, counts = np.unique(upper, axis=0, return_counts=True)
    return {tuple(int(x) for x in k): int(c) for k, c in zip(keys, counts)}


def random_sl2(p: int, r: int, rng: random.Random) -> tuple[int, int, int, int]:
    """Random element of SL(2, Z/p^r) with a unit upper-left entry."""
    n = p**r
    while True:
        a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        if a % p:
            return a, b, c, ((1 + b * c) * pow(a, -1, n)) % n
