# src/semiarith/core/numfield.py
"""Exact arithmetic in number fields with a distinguished real embedding.

A field is Q[x]/(minpoly) together with one isolated real root, the identity
embedding. Elements are stored as sympy ``ANP`` values (dense coefficient
lists reduced modulo the minimal polynomial); coordinates are exposed as
``Fraction`` tuples in the power basis 1, θ, ..., θ^(d-1).

Real embeddings are indexed 0..r-1: index 0 is the distinguished root, the
remaining real roots follow in increasing order.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from fractions import Fraction
from typing import NamedTuple

from sympy import Poly, Rational, Symbol, isprime
from sympy.polys.domains import QQ, ZZ
from sympy.polys.euclidtools import dup_invert
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyclasses import ANP
from sympy.polys.polyerrors import NotInvertible

from .errors import BadPrimeError, FieldError, InternalConsistencyError
from .linalg import RATIONAL_OPS, NativeOps, independent_subset, rank, solve

logger = logging.getLogger(__name__)

X = Symbol("x")

RationalLike = int | Fraction
Interval = tuple[Fraction, Fraction]

# interval refinement stops here; no comparison of nonzero values at the
# sizes we handle comes anywhere near it
_MAX_PRECISION_BITS = 1 << 14


def _frac(c: object) -> Fraction:
    """Fraction from a sympy Rational or a ground-domain QQ element."""
    if hasattr(c, "p") and hasattr(c, "q"):
        return Fraction(int(c.p), int(c.q))  # type: ignore[attr-defined]
    return Fraction(int(c.numerator), int(c.denominator))  # type: ignore[attr-defined]


def _rat(c: RationalLike) -> Rational:
    c = Fraction(c)
    return Rational(c.numerator, c.denominator)


def _qq(c: RationalLike) -> object:
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def format_poly(coeffs: Sequence[RationalLike], var: str = "x") -> str:
    """Render a high-to-low coefficient list, e.g. ``x^2 - x - 1``."""
    n = len(coeffs) - 1
    terms: list[str] = []
    for k, c in enumerate(coeffs):
        c = Fraction(c)
        if c == 0:
            continue
        power = n - k
        mag = abs(c)
        if power == 0:
            body = str(mag)
        else:
            mono = var if power == 1 else f"{var}^{power}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms) or "0"


def _interval_horner(coords: Sequence[Fraction], lo: Fraction, hi: Fraction) -> Interval:
    acc_lo = acc_hi = coords[-1]
    for c in reversed(coords[:-1]):
        products = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo, acc_hi = min(products) + c, max(products) + c
    return acc_lo, acc_hi


class NumberField:
    """Q[x]/(minpoly) with a distinguished real root."""

    __slots__ = (
        "coeffs",
        "degree",
        "totally_real",
        "name",
        "_poly",
        "_roots",
        "_bits",
        "_order",
        "_mod",
        "_hash",
    )

    def __init__(
        self,
        coeffs: Sequence[int],
        distinguished: int,
        name: str | None = None,
        _roots: list[Interval] | None = None,
    ) -> None:
        self.coeffs: tuple[int, ...] = tuple(int(c) for c in coeffs)
        self.degree = len(self.coeffs) - 1
        self._poly = Poly(list(self.coeffs), X, domain=ZZ)
        if _roots is None:
            _roots = [
                (_frac(s), _frac(t)) for (s, t), _ in self._poly.intervals()
            ]
        self._roots = list(_roots)
        self._bits = [0] * len(self._roots)
        self.totally_real = len(self._roots) == self.degree
        self._order = [distinguished] + [
            i for i in range(len(self._roots)) if i != distinguished
        ]
        self._mod = [QQ(c) for c in self.coeffs]
        self.name = name
        self._hash = hash((self.coeffs, distinguished))

    # identity
    @property
    def distinguished_root(self) -> int:
        """Index of the distinguished root among the real roots in increasing order."""
        return self._order[0]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, NumberField)
            and self.coeffs == other.coeffs
            and self._order[0] == other._order[0]
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        lo, hi = self._roots[self._order[0]]
        return f"NumberField({format_poly(self.coeffs)}, root in [{lo}, {hi}])"

    def __str__(self) -> str:
        if self.is_rational:
            return "Q"
        return self.name or f"Q[x]/({format_poly(self.coeffs)})"

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def n_embeddings(self) -> int:
        """Number of real embeddings."""
        return len(self._roots)

    @property
    def discriminant(self) -> int:
        if self.degree == 1:
            return 1
        return int(self._poly.discriminant())

    @property
    def poly(self) -> Poly:
        return self._poly

    @property
    def ops(self) -> NativeOps[AlgebraicNumber]:
        return NativeOps(self.zero, self.one)

    # elements
    def element(self, coords: Sequence[RationalLike]) -> AlgebraicNumber:
        coords = list(coords)
        if len(coords) > self.degree:
            raise FieldError(
                f"{len(coords)} coordinates given for a degree-{self.degree} field"
            )
        if self.degree == 1:
            # the power basis of Q[x]/(x - a) is just 1
            return AlgebraicNumber(self, ANP([_qq(coords[0])] if coords else [], self._mod, QQ))
        rep = [_qq(c) for c in reversed(coords)]
        return AlgebraicNumber(self, ANP(rep, self._mod, QQ))

    def __call__(self, value: RationalLike | AlgebraicNumber) -> AlgebraicNumber:
        if isinstance(value, AlgebraicNumber):
            if value.field != self:
                raise FieldError(f"{value!r} does not belong to {self!r}")
            return value
        return self.element([value])

    @property
    def zero(self) -> AlgebraicNumber:
        return self.element([])

    @property
    def one(self) -> AlgebraicNumber:
        return self.element([1])

    @property
    def gen(self) -> AlgebraicNumber:
        """The primitive element θ."""
        if self.degree == 1:
            return self.element([-self.coeffs[1]])
        return self.element([0, 1])

    # embeddings
    def root_interval(self, i: int, bits: int = 0) -> Interval:
        """Isolating interval of σ_i(θ), refined to width at most 2^-bits."""
        k = self._order[i]
        s, t = self._roots[k]
        if s == t or self._bits[k] >= bits:
            return s, t
        S, T = self._poly.refine_root(_rat(s), _rat(t), eps=Rational(1, 2**bits))
        self._roots[k] = (_frac(S), _frac(T))
        self._bits[k] = bits
        return self._roots[k]

    def conjugate(self, i: int) -> NumberField:
        """The same field with the i-th real embedding made distinguished."""
        return NumberField(
            self.coeffs, self._order[i], name=self.name, _roots=list(self._roots)
        )

    def embedding_value(self, a: AlgebraicNumber, i: int, bits: int) -> Interval:
        """Rational interval containing σ_i(a)."""
        coords = a.coords
        lo, hi = self.root_interval(i, bits)
        return _interval_horner(coords, lo, hi)


class AlgebraicNumber:
    """An element of a NumberField."""

    __slots__ = ("field", "_anp", "_charpoly")

    def __init__(self, field: NumberField, anp: ANP) -> None:
        self.field = field
        self._anp = anp
        self._charpoly: tuple[Fraction, ...] | None = None

    @property
    def coords(self) -> tuple[Fraction, ...]:
        """Power-basis coordinates, padded to the field degree."""
        rep = self._anp.to_list()
        coords = [_frac(c) for c in reversed(rep)]
        return tuple(coords + [Fraction(0)] * (self.field.degree - len(coords)))

    def _wrap(self, anp: ANP) -> AlgebraicNumber:
        return AlgebraicNumber(self.field, anp)

    def _coerce(self, other: object) -> ANP | None:
        if isinstance(other, AlgebraicNumber):
            if other.field != self.field:
                raise FieldError(f"Field mismatch: {self.field!r} vs {other.field!r}")
            return other._anp
        if isinstance(other, int | Fraction):
            return self.field.element([other])._anp
        return None

    def __add__(self, other: object) -> AlgebraicNumber:
        rep = self._coerce(other)
        if rep is None:
            return NotImplemented
        return self._wrap(self._anp + rep)

    __radd__ = __add__

    def __sub__(self, other: object) -> AlgebraicNumber:
        rep = self._coerce(other)
        if rep is None:
            return NotImplemented
        return self._wrap(self._anp - rep)

    def __rsub__(self, other: object) -> AlgebraicNumber:
        rep = self._coerce(other)
        if rep is None:
            return NotImplemented
        return self._wrap(rep - self._anp)

    def __mul__(self, other: object) -> AlgebraicNumber:
        rep = self._coerce(other)
        if rep is None:
            return NotImplemented
        return self._wrap(self._anp * rep)

    __rmul__ = __mul__

    def __neg__(self) -> AlgebraicNumber:
        return self._wrap(-self._anp)

    def inverse(self) -> AlgebraicNumber:
        if self.is_zero:
            raise ZeroDivisionError("division by zero in a number field")
        rep = self._anp.to_list()
        try:
            inv = dup_invert(rep, self.field._mod, QQ)
        except NotInvertible as e:
            raise InternalConsistencyError(
                f"{self!r} is not invertible; is the minimal polynomial irreducible?"
            ) from e
        return self._wrap(ANP(inv, self.field._mod, QQ))

    def __truediv__(self, other: object) -> AlgebraicNumber:
        if isinstance(other, int | Fraction):
            if other == 0:
                raise ZeroDivisionError("division by zero in a number field")
            return self * (Fraction(1) / Fraction(other))
        rep = self._coerce(other)
        if rep is None:
            return NotImplemented
        return self * self._wrap(rep).inverse()

    def __rtruediv__(self, other: object) -> AlgebraicNumber:
        rep = self._coerce(other)
        if rep is None:
            return NotImplemented
        return self._wrap(rep) * self.inverse()

    def __pow__(self, n: int) -> AlgebraicNumber:
        if n < 0:
            return self.inverse() ** (-n)
        return self._wrap(self._anp**n)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AlgebraicNumber):
            return self.field == other.field and self._anp.to_list() == other._anp.to_list()
        if isinstance(other, int | Fraction):
            return self.is_rational and self.rational_value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, tuple(self._anp.to_list())))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        return f"AlgebraicNumber({self}, {self.field!r})"

    def __str__(self) -> str:
        coords = self.coords
        terms = []
        for k, c in enumerate(coords):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "t" if k == 1 else f"t^{k}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"

    @property
    def is_zero(self) -> bool:
        return bool(self._anp.is_zero)

    @property
    def is_rational(self) -> bool:
        return len(self._anp.to_list()) <= 1

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise FieldError(f"{self} is not rational")
        return self.coords[0]

    # invariants
    def char_poly(self) -> tuple[Fraction, ...]:
        """Characteristic polynomial of multiplication-by-self, high-to-low."""
        if self._charpoly is None:
            d = self.field.degree
            columns = []
            power = self
            theta = self.field.gen
            for _ in range(d):
                columns.append(power.coords)
                power = power * theta
            rows = [[_qq(columns[c][r]) for c in range(d)] for r in range(d)]
            poly = DomainMatrix(rows, (d, d), QQ).charpoly()
            self._charpoly = tuple(_frac(c) for c in poly)
        return self._charpoly

    def trace(self) -> Fraction:
        return -self.char_poly()[1]

    def norm(self) -> Fraction:
        return (-1) ** self.field.degree * self.char_poly()[-1]

    def min_poly(self) -> tuple[Fraction, ...]:
        """Minimal polynomial over Q (monic, high-to-low)."""
        sqf = Poly([_rat(c) for c in self.char_poly()], X, domain=QQ).sqf_part().monic()
        return tuple(_frac(c) for c in sqf.all_coeffs())

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.char_poly())

    def substitute(self, image: AlgebraicNumber) -> AlgebraicNumber:
        """Image under the field map θ ↦ image."""
        acc = image.field.zero
        for c in reversed(self.coords):
            acc = acc * image + c
        return acc


def field_create(
    minpoly: Sequence[RationalLike],
    root_selector: tuple[RationalLike, RationalLike],
    name: str | None = None,
) -> NumberField:
    """Validate a minimal polynomial and select its distinguished real root."""
    coeffs = [Fraction(c) for c in minpoly]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if len(coeffs) < 2:
        raise FieldError("Minimal polynomial must have positive degree")
    if coeffs[0] != 1 or any(c.denominator != 1 for c in coeffs):
        raise FieldError(f"{format_poly(coeffs)} is not monic with integer coefficients")
    ints = [int(c) for c in coeffs]
    poly = Poly(ints, X, domain=ZZ)
    if not poly.is_irreducible:
        raise FieldError(f"{format_poly(ints)} is reducible over Q")
    roots = [(_frac(s), _frac(t)) for (s, t), _ in poly.intervals()]
    if not roots:
        raise FieldError(f"{format_poly(ints)} has no real root")
    lo, hi = Fraction(root_selector[0]), Fraction(root_selector[1])
    if lo > hi or poly.count_roots(_rat(lo), _rat(hi)) != 1:
        raise FieldError(
            f"[{lo}, {hi}] must contain exactly one root of {format_poly(ints)}"
        )
    for k, (s, t) in enumerate(roots):
        a, b = max(s, lo), min(t, hi)
        if a <= b and poly.count_roots(_rat(a), _rat(b)) > 0:
            field = NumberField(ints, k, name=name, _roots=roots)
            logger.debug(f"Created {field!r} (totally real: {field.totally_real})")
            return field
    raise InternalConsistencyError("selected root not found among isolated roots")


def rational_field() -> NumberField:
    return field_create([1, 0], (-1, 1), name="Q")


# signs and comparisons


def sign_at(a: AlgebraicNumber, embedding_index: int = 0) -> int:
    """Exact sign of σ_i(a)."""
    if a.is_zero:
        return 0
    if a.is_rational:
        v = a.rational_value
        return (v > 0) - (v < 0)
    bits = 8
    while bits <= _MAX_PRECISION_BITS:
        lo, hi = a.field.embedding_value(a, embedding_index, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
    raise InternalConsistencyError(f"sign of {a} at embedding {embedding_index} undecided")


def _root_index(a: AlgebraicNumber, i: int, poly: Poly, roots: list[Interval]) -> int:
    """Which isolated real root of poly equals σ_i(a) (a irrational, poly(a) = 0)."""
    bits = 8
    while bits <= _MAX_PRECISION_BITS:
        lo, hi = a.field.embedding_value(a, i, bits)
        hits = [k for k, (s, t) in enumerate(roots) if s < lo and hi < t]
        if len(hits) == 1:
            return hits[0]
        bits *= 2
    raise InternalConsistencyError(f"could not locate {a} among roots of {poly}")


def compare_real(a: AlgebraicNumber, i: int, b: AlgebraicNumber, j: int) -> int:
    """Ordering (-1, 0, +1) of the real numbers σ_i(a) and σ_j(b)."""
    if a.field == b.field and i == j:
        return sign_at(a - b, i)
    if a.is_rational and b.is_rational:
        x, y = a.rational_value, b.rational_value
        return (x > y) - (x < y)
    if not a.is_rational and not b.is_rational:
        m_a, m_b = a.min_poly(), b.min_poly()
        if m_a == m_b:
            poly = Poly([_rat(c) for c in m_a], X, domain=QQ)
            roots = [(_frac(s), _frac(t)) for (s, t), _ in poly.intervals()]
            if _root_index(a, i, poly, roots) == _root_index(b, j, poly, roots):
                return 0
    # distinct values: refine until the intervals separate
    bits = 8
    while bits <= _MAX_PRECISION_BITS:
        lo_a, hi_a = a.field.embedding_value(a, i, bits)
        lo_b, hi_b = b.field.embedding_value(b, j, bits)
        if hi_a < lo_b:
            return -1
        if hi_b < lo_a:
            return 1
        bits *= 2
    raise InternalConsistencyError(f"could not separate {a} and {b}")


def compare_abs(a: AlgebraicNumber, b: AlgebraicNumber, i: int, j: int) -> int:
    """Ordering of |σ_i(a)| and |σ_j(b)|, with equality decided exactly."""
    return compare_real(a * a, i, b * b, j)


def is_totally_real_integral(a: AlgebraicNumber) -> tuple[bool, bool]:
    return a.field.totally_real, a.is_integral()


# primes


class PrimeIdealData:
    """A prime of the ring of integers above a good rational prime."""

    __slots__ = ("field", "p", "local_factor", "residue_degree", "residue_field", "root")

    def __init__(self, field: NumberField, p: int, local_factor: Sequence[int]) -> None:
        from ..finite.field import finite_field

        self.field = field
        self.p = p
        self.local_factor = tuple(int(c) % p for c in local_factor)
        self.residue_degree = len(self.local_factor) - 1
        self.residue_field = finite_field(p, self.residue_degree)
        # image of θ in the residue field; least-encoded root of the local factor
        self.root = min(self.residue_field.roots(self.local_factor))

    @property
    def norm(self) -> int:
        return self.residue_field.q

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PrimeIdealData)
            and self.field == other.field
            and self.p == other.p
            and self.local_factor == other.local_factor
        )

    def __hash__(self) -> int:
        return hash((self.field, self.p, self.local_factor))

    def __repr__(self) -> str:
        return f"PrimeIdealData({self})"

    def __str__(self) -> str:
        if self.field.degree == 1:
            return f"({self.p})"
        symmetric = [c - self.p if c > self.p // 2 else c for c in self.local_factor]
        return f"({self.p}, {format_poly(symmetric, 't')})"


def is_good_prime(field: NumberField, p: int) -> bool:
    return p > 2 and isprime(p) and field.discriminant % p != 0


def factor_prime(field: NumberField, p: int) -> list[PrimeIdealData]:
    """Primes above p, ordered by (residue degree, local factor)."""
    if p == 2 or not isprime(p):
        raise BadPrimeError(f"{p} is not an odd prime", prime=p)
    if field.discriminant % p == 0:
        raise BadPrimeError(f"{p} divides the discriminant of {field}", prime=p)
    _, factors = Poly(list(field.coeffs), X, modulus=p).factor_list()
    ideals = []
    for factor, multiplicity in factors:
        if multiplicity != 1:
            raise InternalConsistencyError(f"repeated factor mod {p} at a good prime")
        coeffs = [int(c) % p for c in factor.all_coeffs()]
        ideals.append(PrimeIdealData(field, p, coeffs))
    ideals.sort(key=lambda P: (P.residue_degree, P.local_factor))
    if sum(P.residue_degree for P in ideals) != field.degree:
        raise InternalConsistencyError(f"residue degrees above {p} do not sum to d")
    return ideals


def residue_reduce(a: AlgebraicNumber, prime: PrimeIdealData) -> int:
    """Image of a p-integral element in the residue field at prime."""
    if a.field != prime.field:
        raise FieldError("element and prime ideal live in different fields")
    F = prime.residue_field
    p = prime.p
    acc = 0
    for c in reversed(a.coords):
        if c.denominator % p == 0:
            raise BadPrimeError(f"{a} is not {p}-integral", prime=p)
        value = c.numerator * pow(c.denominator, -1, p) % p
        acc = F.add(F.mul(acc, prime.root), value)
    return acc


# field constructions


class Compositum(NamedTuple):
    field: NumberField
    theta: AlgebraicNumber
    beta: AlgebraicNumber


def _companion(coeffs: Sequence[int]) -> list[list[object]]:
    """Matrix of multiplication by x on Q[x]/(f), power basis, columns = images."""
    d = len(coeffs) - 1
    low = [Fraction(c) for c in reversed(coeffs[1:])]
    rows = [[QQ(0)] * d for _ in range(d)]
    for j in range(d - 1):
        rows[j + 1][j] = QQ(1)
    for i in range(d):
        rows[i][d - 1] = _qq(-low[i])
    return rows


def compositum(
    field: NumberField,
    beta_minpoly: Sequence[int],
    beta_interval: tuple[RationalLike, RationalLike],
    name: str | None = None,
    max_multiplier: int = 50,
) -> Compositum:
    """Q(θ, β) for a real β given by its minimal polynomial over Q.

    The primitive element is γ = θ + cβ for the least c = 1, 2, ... whose
    characteristic polynomial on Q(θ) ⊗ Q(β) is squarefree. The minimal
    polynomial of β must stay irreducible over the field.
    """
    g = field_create(beta_minpoly, beta_interval)
    d, e = field.degree, g.degree
    n = d * e
    C_f, C_g = _companion(field.coeffs), _companion(g.coeffs)

    def m_theta(v: list[object]) -> list[object]:
        out = [QQ(0)] * n
        for i in range(d):
            for j in range(e):
                x = v[i * e + j]
                if x:
                    for i2 in range(d):
                        if C_f[i2][i]:
                            out[i2 * e + j] += C_f[i2][i] * x
        return out

    def m_beta(v: list[object]) -> list[object]:
        out = [QQ(0)] * n
        for i in range(d):
            for j in range(e):
                x = v[i * e + j]
                if x:
                    for j2 in range(e):
                        if C_g[j2][j]:
                            out[i * e + j2] += C_g[j2][j] * x
        return out

    unit = [QQ(1)] + [QQ(0)] * (n - 1)
    basis_columns = [[QQ(int(r == c)) for r in range(n)] for c in range(n)]
    theta_cols = [m_theta(col) for col in basis_columns]
    beta_cols = [m_beta(col) for col in basis_columns]

    for c in range(1, max_multiplier + 1):
        rows = [
            [theta_cols[col][row] + QQ(c) * beta_cols[col][row] for col in range(n)]
            for row in range(n)
        ]
        chi_coeffs = DomainMatrix(rows, (n, n), QQ).charpoly()
        chi = Poly([_frac(x).numerator for x in chi_coeffs], X, domain=ZZ)
        if not chi.is_sqf:
            continue
        if not chi.is_irreducible:
            raise FieldError(
                f"{format_poly(g.coeffs)} does not stay irreducible over {field}"
            )
        # γ^k · 1 for k < n
        powers = [unit]
        for _ in range(n - 1):
            v = powers[-1]
            powers.append([sum((rows[r][k] * v[k] for k in range(n)), QQ(0)) for r in range(n)])
        P = DomainMatrix([[powers[k][r] for k in range(n)] for r in range(n)], (n, n), QQ)
        rhs = DomainMatrix(
            [[a, b] for a, b in zip(m_theta(unit), m_beta(unit))], (n, 2), QQ
        )
        sol = P.lu_solve(rhs).to_list()
        gamma_root = _select_sum_root(chi, field, g, c)
        K = NumberField(chi.all_coeffs(), gamma_root, name=name)
        theta = K.element([_frac(sol[r][0]) for r in range(n)])
        beta = K.element([_frac(sol[r][1]) for r in range(n)])
        logger.info(f"Compositum of {field} and {format_poly(g.coeffs)}: degree {n}, c = {c}")
        return Compositum(K, theta, beta)
    raise FieldError(f"no primitive element θ + cβ with c <= {max_multiplier}")


def _select_sum_root(chi: Poly, field: NumberField, g: NumberField, c: int) -> int:
    """Sorted index of the real root of chi equal to θ_0 + c·β_0."""
    roots = [(_frac(s), _frac(t)) for (s, t), _ in chi.intervals()]
    bits = 8
    while bits <= _MAX_PRECISION_BITS:
        s1, t1 = field.root_interval(0, bits)
        s2, t2 = g.root_interval(0, bits)
        lo, hi = s1 + c * s2, t1 + c * t2
        if chi.count_roots(_rat(lo), _rat(hi)) == 1:
            for k, (s, t) in enumerate(roots):
                a, b = max(s, lo), min(t, hi)
                if a <= b and chi.count_roots(_rat(a), _rat(b)) > 0:
                    return k
        bits *= 2
    raise InternalConsistencyError("could not isolate the compositum's real root")


class Subfield:
    """A subfield k = Q(t) of L with exact coordinate maps."""

    __slots__ = ("ambient", "field", "generator", "_basis_rows")

    def __init__(self, ambient: NumberField, field: NumberField, generator: AlgebraicNumber):
        self.ambient = ambient
        self.field = field
        self.generator = generator
        powers = [ambient.one]
        for _ in range(field.degree - 1):
            powers.append(powers[-1] * generator)
        # rows indexed by L-coordinates, columns by powers of t
        self._basis_rows = [
            [powers[k].coords[r] for k in range(field.degree)] for r in range(ambient.degree)
        ]

    @property
    def degree(self) -> int:
        return self.field.degree

    def contains(self, a: AlgebraicNumber) -> bool:
        return self.to_subfield(a) is not None

    def to_subfield(self, a: AlgebraicNumber) -> AlgebraicNumber | None:
        """Coordinates of a in k, or None when a lies outside k."""
        if self.field.degree == 1:
            return self.field.element([a.rational_value]) if a.is_rational else None
        x = solve(self._basis_rows, list(a.coords), RATIONAL_OPS)
        if x is None:
            return None
        return self.field.element(x)

    def to_ambient(self, b: AlgebraicNumber) -> AlgebraicNumber:
        if self.field.degree == 1:
            return self.ambient(b.rational_value)
        return b.substitute(self.generator)


def generated_subfield(
    ambient: NumberField, elements: Iterable[AlgebraicNumber], name: str | None = None
) -> Subfield:
    """The subfield of ambient generated over Q by elements."""
    gens = [a for a in elements if not a.is_rational]
    if not gens:
        return Subfield(ambient, rational_field(), ambient.zero)
    # Q-span closed under multiplication by the generators
    span = [ambient.one]
    changed = True
    while changed:
        changed = False
        for s in gens:
            for v in list(span):
                w = s * v
                if rank([list(u.coords) for u in span + [w]], RATIONAL_OPS) > len(span):
                    span.append(w)
                    changed = True
    n = len(span)
    # generators in the Q-span of earlier ones add nothing
    kept = [gens[k] for k in independent_subset([list(s.coords) for s in gens], RATIONAL_OPS)]
    multiplier = 1
    while True:
        t = ambient.zero
        for k, s in enumerate(kept):
            t = t + s * multiplier**k
        poly = t.min_poly()
        if len(poly) - 1 == n:
            break
        multiplier += 1
        if multiplier > 100:
            raise InternalConsistencyError("no primitive element found for subfield")
    denominator = math.lcm(*(c.denominator for c in poly))
    if denominator != 1:
        t = t * denominator
        poly = t.min_poly()
    ints = [int(c) for c in poly]
    bits = 8
    while True:
        lo, hi = ambient.embedding_value(t, 0, bits)
        if Poly(ints, X, domain=ZZ).count_roots(_rat(lo), _rat(hi)) == 1:
            break
        bits *= 2
        if bits > _MAX_PRECISION_BITS:
            raise InternalConsistencyError("could not isolate subfield generator")
    k = field_create(ints, (lo, hi), name=name)
    logger.debug(f"Subfield of degree {n} generated by {len(gens)} elements: {k!r}")
    return Subfield(ambient, k, t)

