# tests/integration/test_rigidity.py

import pytest

from semiarith.core.errors import PreconditionError
from semiarith.rigidity import rigidity
from semiarith.synthetic.groups import ConjugateConfig, ConjugateGenerator

pytestmark = pytest.mark.timeout(600)


def test_genus_one_groups_differ(takeuchi_a, takeuchi_b, config):
    """
    tr²(α²) is 9 in one group and 36 in the other: every p ≥ 5 is contradicted, 3 is not.
    """
    report = rigidity(takeuchi_a, takeuchi_b, max_length=2, config=config)
    assert report.squares_only
    assert not report.congruence_possible
    assert report.witness_word == "alpha^2"
    assert report.witness_prime == 5
    first = report.words[0]
    assert (first.char_poly_a, first.char_poly_b) == ("x - 9", "x - 36")
    assert 3 not in report.contradicted_primes
    assert 5 in report.contradicted_primes
    assert report.conjugator is None


def test_conjugate_groups_agree(modular, config):
    """
    A conjugate has the same χ(tr²) on every word and a conjugator is reported.
    """
    pair = ConjugateGenerator(modular, ConjugateConfig(seed=2)).generate()
    report = rigidity(modular, pair.conjugate, max_length=3, config=config)
    assert not report.squares_only
    assert report.congruence_possible
    assert all(w.agree for w in report.words)
    assert report.contradicted_primes == []
    assert report.conjugator is not None
    assert report.conjugator_signs == list(pair.signs)


def test_hecke_versus_modular(modular, hecke5, config):
    """
    tr²(T S) = 1 against φ² separates the Hecke group from PSL(2, Z).
    """
    report = rigidity(modular, hecke5, max_length=2, config=config)
    assert not report.congruence_possible
    mismatch = next(w for w in report.words if w.word == "T S")
    assert not mismatch.agree
    assert mismatch.char_poly_a == "x - 1"


def test_rigidity_rejects_bad_correspondence(modular, hecke5, config):
    """
    The correspondence must be a bijection on generators.
    """
    with pytest.raises(PreconditionError):
        rigidity(modular, hecke5, correspondence=[0, 0], config=config)
