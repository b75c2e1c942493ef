# tests/fuchsian/test_group.py

from fractions import Fraction

import pytest

from semiarith.core.errors import DeterminantError, FieldError, PreconditionError
from semiarith.core.numfield import field_create, sign_at
from semiarith.fuchsian.group import (
    ElementType,
    Matrix,
    classify,
    classify_matrix,
    galois_conjugate,
    load_group,
    word_eval,
)
from semiarith.fuchsian.words import Word, parse_word


def test_load_group_rejects_determinant(rationals):
    """
    Generators must have determinant one.
    """
    with pytest.raises(DeterminantError):
        load_group(rationals, [[[2, 0], [0, 1]]])


def test_load_group_rejects_false_relator(rationals):
    """
    Relators are verified to evaluate to ±I.
    """
    with pytest.raises(PreconditionError):
        load_group(rationals, [[[1, 1], [0, 1]]], relators=[Word.generator(0, 2)])


def test_load_group_rejects_non_totally_real():
    """
    Entry fields must be totally real.
    """
    K = field_create([1, 0, 0, -2], (1, 2))
    with pytest.raises(FieldError):
        load_group(K, [[[1, 1], [0, 1]]])


def test_load_group_accepts_rationals_and_coordinates(q_sqrt2):
    """
    Entries may be rationals, coordinate vectors or field elements.
    """
    rep = load_group(q_sqrt2, [[[[1, 1], 0], [0, [-1, 1]]]], labels=["x"])
    assert rep.generators[0].a == q_sqrt2.gen + 1
    assert rep.generators[0].d == q_sqrt2.gen - 1
    assert rep.generators[0].b == 0


def test_modular_relators(modular):
    """
    S² and (ST)³ evaluate to −I in PSL(2, Z).
    """
    assert [modular.format_word(r) for r in modular.relators] == ["S^2", "S T S T S T"]
    assert all(modular.evaluate(r).is_projective_identity for r in modular.relators)


@pytest.mark.parametrize(
    "word, kind",
    [
        ("T", ElementType.PARABOLIC),
        ("S", ElementType.ELLIPTIC),
        ("S T", ElementType.ELLIPTIC),
        ("S^2", ElementType.IDENTITY),
        ("T S T^-1 S", ElementType.HYPERBOLIC),
    ],
)
def test_classify(modular, word, kind):
    """
    Element types follow tr² compared with 4.
    """
    assert classify(modular, parse_word(word, modular.labels)) is kind


def test_classify_matrix(rationals):
    """
    [[2, 1], [1, 1]] has trace 3 and is hyperbolic.
    """
    m = Matrix(*(rationals(x) for x in (2, 1, 1, 1)))
    assert classify_matrix(m) is ElementType.HYPERBOLIC


def test_word_eval(takeuchi_a):
    """
    tr²α = 5 and tr²β = 12 in the first genus-one group.
    """
    alpha, beta = Word.generator(0), Word.generator(1)
    assert word_eval(takeuchi_a, alpha).tr2 == 5
    assert word_eval(takeuchi_a, beta).tr2 == 12
    assert word_eval(takeuchi_a, alpha**2).tr2 == 9


def test_iter_words_matches_evaluate(hecke5):
    """
    Cached prefix products agree with direct evaluation.
    """
    words = hecke5.words(3, min_length=1)
    assert len(words) == 4 + 12 + 36
    for w, m in words:
        assert m == hecke5.evaluate(w)


def test_galois_conjugate(sqrt2_demo):
    """
    σ₁ sends tr x = 2√2 to −2√2 while keeping coordinates.
    """
    x = Word.generator(0)
    conj = galois_conjugate(sqrt2_demo, 1)
    t = conj.trace(x)
    assert t.coords == sqrt2_demo.trace(x).coords
    assert sign_at(t, 0) == -1
    assert galois_conjugate(sqrt2_demo, 0) is sqrt2_demo
    with pytest.raises(PreconditionError):
        galois_conjugate(sqrt2_demo, 2)


def test_matrix_inverse(q_sqrt2):
    """
    The adjugate inverts a determinant-one matrix.
    """
    r = q_sqrt2.gen
    m = Matrix(r + 1, q_sqrt2.one, r, q_sqrt2.one)
    assert m.det == 1
    assert (m @ m.adjugate()).is_projective_identity
    assert m.scale(Fraction(1, 2)).a == (r + 1) / 2
