# src/semiarith/congruence/order.py
"""The order o_k[Γ̃] generated by a group and its residue algebras.

Elements of the algebra k[Γ] are written in a frame e_1 = 1, e_2, e_3, e_4 of
short words, which is a k-basis. Rational coordinates use the Q-basis
η^j·e_i (i-major), with η the primitive element of k; the order is stored by
a Z-basis in those coordinates, in Hermite normal form.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from fractions import Fraction
from itertools import product

from sympy import factorint, primefactors
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

from ..core.errors import (
    BadPrimeError,
    FieldError,
    InternalConsistencyError,
    PreconditionError,
    ReducibleGroupError,
    StabilizationError,
    UnsupportedError,
)
from ..core.linalg import rank, rref, solve
from ..core.numfield import AlgebraicNumber, PrimeIdealData, Subfield, residue_reduce
from ..core.operations.models import SemiarithConfig, default_config
from ..finite.field import FiniteField
from ..finite.psl2 import Entries, mat_mul
from ..fuchsian.group import FuchsianRep, Matrix
from ..fuchsian.tracefield import TraceFieldCondition, trace_field_condition
from ..fuchsian.words import Word

logger = logging.getLogger(__name__)

# squarefree d with the ring of integers of Q(√d) norm-Euclidean
NORM_EUCLIDEAN = frozenset({2, 3, 5, 6, 7, 11, 13, 17, 19, 21, 29, 33, 37, 41, 57, 73})

Vector = tuple[Fraction, ...]


def _squarefree_part(n: int) -> int:
    return math.prod(p for p, e in factorint(abs(n)).items() if e % 2)


def check_base_field(k: Subfield) -> None:
    """Raise UnsupportedError unless k is Q or a norm-Euclidean real quadratic field."""
    if k.degree == 1:
        return
    if k.degree == 2:
        d = _squarefree_part(k.field.discriminant)
        if d in NORM_EUCLIDEAN:
            return
        raise UnsupportedError(
            f"orders over Q(sqrt({d})) are not supported; "
            "k must be Q or a norm-Euclidean real quadratic field"
        )
    raise UnsupportedError(f"orders over fields of degree {k.degree} are not supported")


def _frame(rep: FuchsianRep) -> tuple[list[Word], list[Matrix]]:
    ops = rep.field.ops
    words: list[Word] = []
    mats: list[Matrix] = []
    for w, m in rep.iter_words(3):
        trial = [list(x) for x in mats + [m]]
        if rank(trial, ops) == len(trial):
            words.append(w)
            mats.append(m)
            if len(mats) == 4:
                return words, mats
    raise ReducibleGroupError("words up to length 3 span less than a quaternion algebra")


def _hnf(vectors: Sequence[Vector], dim: int) -> tuple[Vector, ...]:
    """Canonical Z-basis of the lattice spanned by vectors."""
    scale = math.lcm(*(c.denominator for v in vectors for c in v))
    columns = [[int(c * scale) for c in v] for v in vectors]
    M = DomainMatrix(
        [[ZZ(col[i]) for col in columns] for i in range(dim)], (dim, len(columns)), ZZ
    )
    H = hermite_normal_form(M).to_list()
    n_cols = len(H[0]) if H else 0
    return tuple(
        tuple(Fraction(int(H[i][j]), scale) for i in range(dim)) for j in range(n_cols)
    )


def _qq_matrix(rows: Sequence[Sequence[Fraction]]) -> DomainMatrix:
    return DomainMatrix(
        [[QQ(c.numerator, c.denominator) for c in row] for row in rows],
        (len(rows), len(rows[0])),
        QQ,
    )


class FrameCoordinates:
    """Exact coordinates of k[Γ] in a frame of four words."""

    def __init__(
        self, rep: FuchsianRep, k: Subfield, frame_words: Sequence[Word], frame: Sequence[Matrix]
    ) -> None:
        self.rep = rep
        self.k = k
        self.n = k.degree
        self.dim = 4 * self.n
        self.frame_words = tuple(frame_words)
        self.frame = tuple(frame)
        self.eta = k.to_ambient(k.field.gen) if self.n > 1 else rep.field.one
        self.eta_powers = [rep.field.one]
        for _ in range(self.n - 1):
            self.eta_powers.append(self.eta_powers[-1] * self.eta)
        ops = rep.field.ops
        E = [[self.frame[i][r] for i in range(4)] for r in range(4)]
        columns = []
        for c in range(4):
            unit = [ops.one() if r == c else ops.zero() for r in range(4)]
            x = solve(E, unit, ops)
            if x is None:
                raise InternalConsistencyError("frame words are not a basis")
            columns.append(x)
        # self._inverse[i][r]: weight of matrix entry r in frame coordinate i
        self._inverse = [[columns[r][i] for r in range(4)] for i in range(4)]

    def coordinates(self, m: Matrix) -> tuple[AlgebraicNumber, ...]:
        """Frame coordinates of m as elements of k.

        Raises:
            PreconditionError: m lies outside k[Γ]
        """
        out = []
        for i in range(4):
            c = self._inverse[i][0] * m[0]
            for r in range(1, 4):
                c = c + self._inverse[i][r] * m[r]
            ck = self.k.to_subfield(c)
            if ck is None:
                raise PreconditionError("matrix lies outside k[Γ]; the trace-field condition fails")
            out.append(ck)
        return tuple(out)

    def vector(self, m: Matrix) -> Vector:
        """Rational coordinates in the Q-basis η^j·e_i."""
        return tuple(c for ck in self.coordinates(m) for c in ck.coords)

    def matrix(self, v: Sequence[Fraction]) -> Matrix:
        entries = [self.rep.field.zero] * 4
        for i in range(4):
            for j in range(self.n):
                c = v[i * self.n + j]
                if c:
                    weight = self.eta_powers[j] * c
                    entries = [x + y * weight for x, y in zip(entries, self.frame[i])]
        return Matrix(*entries)


class QuaternionOrderData(FrameCoordinates):
    """Z-basis, structure constants and bad primes of o_k[Γ̃].

    ``structure[a][b]`` holds e_a·e_b in frame coordinates over k;
    ``mult_table[a][b]`` holds the product of Z-basis elements a, b in the Z-basis.
    """

    def __init__(
        self,
        rep: FuchsianRep,
        k: Subfield,
        frame_words: Sequence[Word],
        frame: Sequence[Matrix],
        basis: Sequence[Vector],
        rounds: int,
    ) -> None:
        super().__init__(rep, k, frame_words, frame)
        self.basis = tuple(basis)
        self.rounds = rounds
        self._basis_inverse = _qq_matrix(
            [[b[i] for b in self.basis] for i in range(self.dim)]
        ).inv()
        self.structure = tuple(
            tuple(self.coordinates(self.frame[a] @ self.frame[b]) for b in range(4))
            for a in range(4)
        )
        self.mult_table = self._mult_table()
        self.discriminant = self._discriminant()
        # [O : Z[η]-span of the frame]; the frame is a local basis away from its primes
        self.frame_index = 1 / abs(math.prod(self.basis[j][j] for j in range(self.dim)))
        self.bad_primes = frozenset(
            {2, 3}
            | set(primefactors(abs(self.discriminant)))
            | set(primefactors(abs(k.field.discriminant)))
            | set(primefactors(self.frame_index.numerator))
        )

    def __repr__(self) -> str:
        return (
            f"QuaternionOrderData({self.rep.name or '?'}, k degree {self.n}, "
            f"S = {sorted(self.bad_primes)})"
        )

    def basis_coordinates(self, m: Matrix) -> tuple[Fraction, ...]:
        """Coordinates of m in the Z-basis of the order."""
        z = (self._basis_inverse * _qq_matrix([[c] for c in self.vector(m)])).to_list()
        return tuple(Fraction(int(row[0].numerator), int(row[0].denominator)) for row in z)

    def contains(self, m: Matrix) -> bool:
        return all(c.denominator == 1 for c in self.basis_coordinates(m))

    @property
    def basis_matrices(self) -> list[Matrix]:
        return [self.matrix(b) for b in self.basis]

    def _mult_table(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        mats = self.basis_matrices
        table = []
        for x in mats:
            row = []
            for y in mats:
                z = self.basis_coordinates(x @ y)
                if any(c.denominator != 1 for c in z):
                    raise InternalConsistencyError("order is not closed under multiplication")
                row.append(tuple(int(c) for c in z))
            table.append(tuple(row))
        return tuple(table)

    def _discriminant(self) -> int:
        """det of (x, y) ↦ Tr_{k/Q}(trd(xy)) on the Z-basis."""
        mats = self.basis_matrices
        rows = []
        for x in mats:
            row = []
            for y in mats:
                t = self.k.to_subfield((x @ y).trace)
                if t is None:
                    raise InternalConsistencyError("reduced trace outside k")
                row.append(t.trace())
            rows.append(row)
        d = _qq_matrix(rows).det()
        if d == 0:
            raise InternalConsistencyError("degenerate trace form; the algebra is not quaternion")
        if d.denominator != 1:
            raise InternalConsistencyError("trace form is not integral on the order")
        return int(d.numerator)


def order_basis(
    rep: FuchsianRep,
    config: SemiarithConfig | None = None,
    condition: TraceFieldCondition | None = None,
) -> QuaternionOrderData:
    """Hermite-reduced Z-basis of o_k[Γ̃].

    Starts from the Z[η]-span of 1 and the generators with their inverses,
    then multiplies by those once per round until the lattice is stable.

    Raises:
        PreconditionError: the trace-field condition fails
        UnsupportedError: k is neither Q nor norm-Euclidean real quadratic
        StabilizationError: no stable lattice within the configured rounds
    """
    config = config or default_config()
    condition = condition or trace_field_condition(rep, config)
    if not condition.holds:
        raise PreconditionError(
            f"{rep.name or 'group'} fails the trace-field condition; use its squares subgroup"
        )
    k = condition.trace_field
    check_base_field(k)
    frame_words, frame = _frame(rep)
    coords = FrameCoordinates(rep, k, frame_words, frame)
    multipliers = list(rep.generators) + [g.adjugate() for g in rep.generators]
    start = [Matrix.identity(rep.field)] + multipliers
    basis = _hnf([coords.vector(m.scale(e)) for m in start for e in coords.eta_powers], coords.dim)
    for rounds in range(1, config.search.order_word_length + 1):
        products = [coords.vector(coords.matrix(b) @ g) for b in basis for g in multipliers]
        grown = _hnf(list(basis) + products, coords.dim)
        if grown == basis and len(basis) == coords.dim:
            break
        basis = grown
    else:
        raise StabilizationError(
            f"generated lattice not stable after {config.search.order_word_length} rounds"
        )
    order = QuaternionOrderData(rep, k, frame_words, frame, basis, rounds)
    logger.info(
        f"Order of {rep.name or 'group'}: rank {coords.dim} after {rounds} rounds, "
        f"discriminant {order.discriminant}, S = {sorted(order.bad_primes)}"
    )
    return order


def bad_primes(order: QuaternionOrderData) -> frozenset[int]:
    """A finite over-approximation of the excluded primes S(Γ)."""
    return order.bad_primes


# residue algebras


def _residue_mul(
    F: FiniteField, table: Sequence[Sequence[Sequence[int]]], x: Sequence[int], y: Sequence[int]
) -> list[int]:
    out = [0] * 4
    for a in range(4):
        if not x[a]:
            continue
        for b in range(4):
            if not y[b]:
                continue
            w = F.mul(x[a], y[b])
            for c in range(4):
                if table[a][b][c]:
                    out[c] = F.add(out[c], F.mul(w, table[a][b][c]))
    return out


def _combine(F: FiniteField, weights: Sequence[int], mats: Sequence[Entries]) -> Entries:
    out = [0, 0, 0, 0]
    for w, m in zip(weights, mats):
        if w:
            out = [F.add(x, F.mul(w, y)) for x, y in zip(out, m)]
    return tuple(out)  # type: ignore[return-value]


def _zero_divisor(F: FiniteField, table: Sequence[Sequence[Sequence[int]]]) -> list[int] | None:
    """A nonzero x − λ with λ a root of the reduced characteristic polynomial of x."""
    for tail in product(range(F.q), repeat=3):
        if not any(tail):
            continue
        x = [0, *tail]
        x2 = _residue_mul(F, table, x, x)
        c = next(i for i in range(1, 4) if x[i])
        # x² = t·x − n with x_0 = 0
        t = F.div(x2[c], x[c])
        n = F.neg(x2[0])
        if any(x2[i] != F.mul(t, x[i]) for i in range(1, 4)):
            raise InternalConsistencyError("residue algebra element of degree > 2")
        disc = F.sub(F.mul(t, t), F.mul(F.from_int(4), n))
        root = F.sqrt(disc)
        if root is None:
            continue
        lam = F.div(F.add(t, root), F.from_int(2))
        return [F.neg(lam), *tail]
    return None


class ResidueSplitting:
    """O/𝔭O ≅ M(2, F_q), given by the images of the frame."""

    def __init__(self, order: QuaternionOrderData, prime: PrimeIdealData, images: Sequence[Entries]):
        self.order = order
        self.prime = prime
        self.field = prime.residue_field
        self.images = tuple(images)

    def __repr__(self) -> str:
        return f"ResidueSplitting({self.order.rep.name or '?'} mod {self.prime})"

    def reduce_coordinates(self, coords: Sequence[AlgebraicNumber]) -> Entries:
        weights = [residue_reduce(c, self.prime) for c in coords]
        return _combine(self.field, weights, self.images)

    def reduce_matrix(self, m: Matrix) -> Entries:
        """Image of an element of O_(p) in M(2, F_q)."""
        return self.reduce_coordinates(self.order.coordinates(m))


def split_order_mod_p(order: QuaternionOrderData, prime: PrimeIdealData) -> ResidueSplitting:
    """An explicit isomorphism O/𝔭O → M(2, F_q), verified on all frame products.

    Left multiplication on the two-dimensional left ideal of a zero divisor.

    Raises:
        BadPrimeError: p ∈ S(Γ)
        InternalConsistencyError: no zero divisor or a failed verification
    """
    if prime.field != order.k.field:
        raise FieldError("the prime must lie in the trace field of the order")
    p = prime.p
    if p in order.bad_primes:
        raise BadPrimeError(f"{p} ∈ S(Γ) = {sorted(order.bad_primes)}", prime=p)
    F = prime.residue_field
    table = [
        [[residue_reduce(c, prime) for c in order.structure[a][b]] for b in range(4)]
        for a in range(4)
    ]
    z = _zero_divisor(F, table)
    if z is None:
        raise InternalConsistencyError(f"no zero divisor in O/𝔭O at {prime}; {p} belongs in S")
    frame_units = [[int(i == a) for i in range(4)] for a in range(4)]
    ideal_rows, pivots = rref([_residue_mul(F, table, e, z) for e in frame_units], F)
    if len(pivots) != 2:
        raise InternalConsistencyError(f"left ideal of dimension {len(pivots)} at {prime}")
    images = []
    for e in frame_units:
        # e·u_k in the basis u_1, u_2, read off at the pivot columns
        cols = [_residue_mul(F, table, e, u) for u in ideal_rows]
        images.append((cols[0][pivots[0]], cols[1][pivots[0]], cols[0][pivots[1]], cols[1][pivots[1]]))
    if images[0] != (1, 0, 0, 1):
        raise InternalConsistencyError("splitting is not unital")
    for a in range(4):
        for b in range(4):
            if mat_mul(F, images[a], images[b]) != _combine(F, table[a][b], images):
                raise InternalConsistencyError(f"splitting fails on e{a + 1}·e{b + 1} at {prime}")
    if len(rref([list(m) for m in images], F)[1]) != 4:
        raise InternalConsistencyError(f"splitting is not bijective at {prime}")
    logger.debug(f"Split {order!r} at {prime}")
    return ResidueSplitting(order, prime, images)
