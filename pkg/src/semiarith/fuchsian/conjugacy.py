# src/semiarith/fuchsian/conjugacy.py
"""Trace rigidity: conjugating matrices between reps and hyperbolic generating sets."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from itertools import combinations, product
from typing import NamedTuple

from ..core.errors import (
    EnumerationCapExceeded,
    FieldError,
    InternalConsistencyError,
    PreconditionError,
    ReducibleGroupError,
    SearchExhaustedError,
)
from ..core.linalg import nullspace
from ..core.numfield import AlgebraicNumber
from ..core.operations.models import SemiarithConfig, default_config
from .group import ElementType, FuchsianRep, Matrix, classify_matrix
from .words import Word, commutator

logger = logging.getLogger(__name__)


def irreducibility_witness(rep: FuchsianRep) -> tuple[Word, Word]:
    """Words x, y with tr[x, y] ≠ 2.

    Raises:
        ReducibleGroupError: no such pair among generators and words of length ≤ 2
    """
    gens = [Word.generator(i) for i in range(rep.n_generators)]
    candidates = list(combinations(gens, 2))
    short = [w for w, _ in rep.iter_words(2, min_length=1)]
    candidates += list(combinations(short, 2))
    for x, y in candidates:
        if rep.trace(commutator(x, y)) != 2:
            return x, y
    raise ReducibleGroupError(f"{rep.name or 'group'} has no commutator with trace ≠ 2")


def _conjugacy_rows(A: Matrix, B: Matrix) -> list[list[AlgebraicNumber]]:
    """Rows of X·A − B·X = 0 in the unknowns (x11, x12, x21, x22)."""
    a, b = A.rows(), B.rows()
    zero = A.a.field.zero
    rows = []
    for r in range(2):
        for c in range(2):
            row = [zero] * 4
            for u in range(2):
                for v in range(2):
                    coef = zero
                    if r == u:
                        coef = coef + a[v][c]
                    if v == c:
                        coef = coef - b[r][u]
                    row[2 * u + v] = coef
            rows.append(row)
    return rows


def _sign_options(t1: AlgebraicNumber, t2: AlgebraicNumber) -> list[int]:
    if t1.is_zero and t2.is_zero:
        return [1, -1]
    if t1 == t2:
        return [1]
    if t1 == -t2:
        return [-1]
    return []


def _traces_match(A: Sequence[Matrix], B: Sequence[Matrix]) -> bool:
    n = len(A)
    for i, j in combinations(range(n), 2):
        if (A[i] @ A[j]).trace != (B[i] @ B[j]).trace:
            return False
    for i, j, k in combinations(range(n), 3):
        if (A[i] @ A[j] @ A[k]).trace != (B[i] @ B[j] @ B[k]).trace:
            return False
    return True


def _normalize(vec: Sequence[AlgebraicNumber]) -> Matrix:
    lead = next(x for x in vec if not x.is_zero)
    inv = lead.inverse()
    return Matrix(*(x * inv for x in vec))


class Conjugator(NamedTuple):
    """a with a·ϱ₁(g_i)·a⁻¹ = signs_i·ϱ₂(g_i), first nonzero entry 1."""

    matrix: Matrix
    signs: tuple[int, ...]


def conjugator(
    rep1: FuchsianRep,
    rep2: FuchsianRep,
    correspondence: Sequence[int] | None = None,
    config: SemiarithConfig | None = None,
) -> Conjugator | None:
    """The projective class of a matrix conjugating rep1 onto rep2, or None.

    ``correspondence[i]`` is the index in rep2 of the image of rep1's i-th
    generator. Sign lifts of rep2's generators are fixed by the traces where
    those are nonzero and searched exhaustively otherwise.

    Raises:
        ReducibleGroupError: rep1 is reducible
    """
    config = config or default_config()
    if rep1.field != rep2.field:
        raise FieldError("both reps must share the entry field")
    m = rep1.n_generators
    correspondence = list(correspondence) if correspondence is not None else list(range(m))
    if sorted(correspondence) != list(range(rep2.n_generators)) or len(correspondence) != m:
        raise PreconditionError("the correspondence must be a bijection on generators")
    if m > config.search.max_sign_generators:
        raise EnumerationCapExceeded(
            f"{m} generators exceed the sign search cap", size=m, cap=config.search.max_sign_generators
        )
    irreducibility_witness(rep1)
    A = list(rep1.generators)
    targets = [rep2.generators[j] for j in correspondence]
    options = [_sign_options(a.trace, b.trace) for a, b in zip(A, targets)]
    if any(not o for o in options):
        logger.debug("Generator traces differ beyond sign")
        return None
    ops = rep1.field.ops
    for signs in product(*options):
        B = [b if s == 1 else b.negate() for b, s in zip(targets, signs)]
        if not _traces_match(A, B):
            continue
        rows = [row for a, b in zip(A, B) for row in _conjugacy_rows(a, b)]
        basis = nullspace(rows, 4, ops)
        if len(basis) != 1:
            continue
        X = _normalize(basis[0])
        if X.det.is_zero:
            continue
        inverse = X.adjugate().scale(X.det.inverse())
        if all(X @ a @ inverse == b for a, b in zip(A, B)):
            logger.info(f"Conjugator found with signs {signs}")
            return Conjugator(X, tuple(signs))
    return None


# hyperbolic generating sets


class HyperbolicGenerators(NamedTuple):
    """New all-hyperbolic generators with words in both directions."""

    group: FuchsianRep
    new_in_old: tuple[Word, ...]
    old_in_new: tuple[Word, ...]


def _substitute(w: Word, images: Sequence[Word]) -> Word:
    out = Word()
    for index, exponent in w:
        out = out * images[index] ** exponent
    return out


def _same_projective(x: Matrix, y: Matrix) -> bool:
    return x == y or x == y.negate()


def hyperbolic_generators(
    rep: FuchsianRep, config: SemiarithConfig | None = None
) -> HyperbolicGenerators:
    """A generating set of hyperbolic elements for the same group.

    Picks hyperbolic T, H without a common fixed point and
    replaces each non-hyperbolic generator g by T^N·w·g, where w ∈ {1, H, T, ...}
    makes the trace nonzero and N grows until the product is hyperbolic.

    The fixed-point test is tr[T, H] ≠ 2. For hyperbolic T and H this is
    equivalent to the resultant of their fixed-point quadratics being nonzero,
    i.e. to no eigenvector of T being proportional to one of H: a shared
    eigenvector makes [T, H] unipotent, and conversely tr[T, H] = 2 forces a
    common invariant line.

    Raises:
        SearchExhaustedError: no hyperbolic pair within the search length, or no repair
    """
    config = config or default_config()
    n = rep.n_generators
    identity_words = tuple(Word.generator(i) for i in range(n))
    types = [classify_matrix(g) for g in rep.generators]
    if all(t is ElementType.HYPERBOLIC for t in types):
        return HyperbolicGenerators(rep, identity_words, identity_words)

    hyperbolic = [
        (w, m)
        for w, m in rep.iter_words(config.search.hyperbolic_word_length, min_length=1)
        if classify_matrix(m) is ElementType.HYPERBOLIC
    ]
    pair = next(
        (
            (t, h)
            for t, h in combinations(hyperbolic, 2)
            if (t[1] @ h[1] @ t[1].adjugate() @ h[1].adjugate()).trace != 2
        ),
        None,
    )
    if pair is None:
        raise SearchExhaustedError(
            f"no hyperbolic pair without common fixed point up to length "
            f"{config.search.hyperbolic_word_length}"
        )
    (t_word, t_mat), (h_word, h_mat) = pair

    new_words: list[Word] = []

    def add(w: Word) -> int:
        if w not in new_words:
            new_words.append(w)
        return new_words.index(w)

    t_index = add(t_word)
    h_index = add(h_word)
    t_new, h_new = Word.generator(t_index), Word.generator(h_index)
    shifts = [
        (Word(), Word()),
        (h_word, h_new),
        (t_word, t_new),
        (h_word.inverse(), h_new.inverse()),
        (t_word.inverse(), t_new.inverse()),
    ]
    old_in_new: list[Word] = []
    limit = config.search.repair_power_limit
    for i, g in enumerate(rep.generators):
        g_word = Word.generator(i)
        if types[i] is ElementType.HYPERBOLIC:
            old_in_new.append(Word.generator(add(g_word)))
            continue
        shift = next(
            ((w_old, w_new) for w_old, w_new in shifts if not (rep.evaluate(w_old) @ g).trace.is_zero),
            None,
        )
        if shift is None:
            raise SearchExhaustedError(f"cannot make the trace of {rep.labels[i]} nonzero")
        w_old, w_new = shift
        base = rep.evaluate(w_old) @ g
        powers = [k for j in range(1, limit + 1) for k in (j, -j)]
        exponent = next(
            (
                N
                for N in powers
                if classify_matrix(rep.evaluate(t_word**N) @ base) is ElementType.HYPERBOLIC
            ),
            None,
        )
        if exponent is None:
            raise SearchExhaustedError(f"no power T^N repairs {rep.labels[i]} within {limit}")
        r_index = add(t_word**exponent * w_old * g_word)
        # g = w⁻¹ · T^-N · (T^N w g)
        old_in_new.append(w_new.inverse() * t_new ** (-exponent) * Word.generator(r_index))

    generators = [rep.evaluate(w) for w in new_words]
    labels = [f"h{j + 1}" for j in range(len(new_words))]
    relators = [_substitute(r, old_in_new) for r in rep.relators]
    name = f"{rep.name}-hyperbolic" if rep.name else None
    group = FuchsianRep(rep.field, generators, labels, relators, name)
    for i, w in enumerate(old_in_new):
        if not _same_projective(group.evaluate(w), rep.generators[i]):
            raise InternalConsistencyError(f"rewriting of {rep.labels[i]} failed")
    if any(classify_matrix(g) is not ElementType.HYPERBOLIC for g in generators):
        raise SearchExhaustedError("a chosen generator is not hyperbolic")
    logger.info(f"Hyperbolic generating set with {len(new_words)} elements")
    return HyperbolicGenerators(group, tuple(new_words), tuple(old_in_new))
