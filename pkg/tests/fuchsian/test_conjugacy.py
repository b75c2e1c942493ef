# tests/fuchsian/test_conjugacy.py

import pytest

from semiarith.core.errors import FieldError, ReducibleGroupError
from semiarith.fuchsian.conjugacy import conjugator, hyperbolic_generators, irreducibility_witness
from semiarith.fuchsian.group import ElementType, FuchsianRep, Matrix, classify_matrix, load_group
from semiarith.fuchsian.words import Word
from semiarith.synthetic.groups import ConjugateConfig, ConjugateGenerator, builtin_group

pytestmark = pytest.mark.timeout(300)


def _projective(m: Matrix) -> Matrix:
    lead = next(x for x in m if not x.is_zero)
    return m.scale(lead.inverse())


@pytest.mark.parametrize("name", ["modular", "hecke-5"])
@pytest.mark.parametrize("seed", range(50))
def test_conjugator_recovers_random_conjugate(name, seed, config):
    """
    A random conjugate with random sign flips is recovered up to scalar.
    """
    rep = builtin_group(name)
    pair = ConjugateGenerator(rep, ConjugateConfig(seed=seed)).generate()
    found = conjugator(pair.original, pair.conjugate, config=config)
    assert found is not None, f"no conjugator for seed {seed}"
    assert found.matrix == _projective(pair.matrix)
    assert found.signs == pair.signs


@pytest.mark.parametrize("name", ["modular", "hecke-5"])
def test_conjugator_ignores_scaling(name, config):
    """
    Conjugating by s·c for nonzero s gives the same normalized matrix and signs as c.
    """
    rep = builtin_group(name)
    pair = ConjugateGenerator(rep, ConjugateConfig(seed=7)).generate()
    expected = conjugator(pair.original, pair.conjugate, config=config)
    assert expected is not None
    K = rep.field
    for s in (K(3), K(-5), K.gen + K(2)):
        X = pair.matrix.scale(s)
        inverse = X.adjugate().scale(X.det.inverse())
        generators = [
            m if sign == 1 else m.negate()
            for m, sign in zip((X @ g @ inverse for g in rep.generators), pair.signs)
        ]
        scaled = FuchsianRep(K, generators, rep.labels, rep.relators)
        found = conjugator(rep, scaled, config=config)
        assert found is not None
        assert found.matrix == expected.matrix == _projective(X)
        assert found.signs == expected.signs


def test_conjugator_trace_mismatch(modular, config):
    """
    ⟨T², S⟩ has tr(T²S) = 2 ≠ tr(TS), so no conjugator exists.
    """
    other = load_group(
        modular.field,
        [[[1, 2], [0, 1]], [[0, -1], [1, 0]]],
        labels=["T", "S"],
        relators=[Word.generator(1, 2)],
    )
    assert conjugator(modular, other, config=config) is None


def test_conjugator_respects_correspondence(modular, config):
    """
    Swapping generators needs the matching correspondence.
    """
    swapped = FuchsianRep(modular.field, modular.generators[::-1], ["S", "T"])
    assert conjugator(modular, swapped, config=config) is None
    found = conjugator(modular, swapped, correspondence=[1, 0], config=config)
    assert found is not None
    assert found.matrix == _projective(Matrix.identity(modular.field))


def test_conjugator_rejects_reducible(rationals, config):
    """
    Upper triangular groups are reducible.
    """
    rep = load_group(rationals, [[[1, 1], [0, 1]], [[1, 3], [0, 1]]])
    with pytest.raises(ReducibleGroupError):
        irreducibility_witness(rep)
    with pytest.raises(ReducibleGroupError):
        conjugator(rep, rep, config=config)


def test_conjugator_rejects_field_mismatch(modular, hecke5, config):
    """
    Both reps must share their entry field.
    """
    with pytest.raises(FieldError):
        conjugator(modular, hecke5, config=config)


def test_hyperbolic_generators_of_modular(modular, config):
    """
    PSL(2, Z) is regenerated by hyperbolic elements; old generators are recovered.
    """
    result = hyperbolic_generators(modular, config)
    assert all(classify_matrix(g) is ElementType.HYPERBOLIC for g in result.group.generators)
    for i, w in enumerate(result.old_in_new):
        m = result.group.evaluate(w)
        assert m == modular.generators[i] or m == modular.generators[i].negate()
    for w, g in zip(result.new_in_old, result.group.generators):
        assert modular.evaluate(w) == g


def test_hyperbolic_generators_unchanged(sqrt2_demo, config):
    """
    A group with hyperbolic generators is returned as is.
    """
    result = hyperbolic_generators(sqrt2_demo, config)
    assert result.group is sqrt2_demo
    assert result.old_in_new == (Word.generator(0), Word.generator(1))
