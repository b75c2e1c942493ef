# tests/fuchsian/test_tracefield.py

import random
from fractions import Fraction

import pytest

from semiarith.core.errors import EnumerationCapExceeded
from semiarith.fuchsian.group import load_group
from semiarith.fuchsian.tracefield import (
    invariant_trace_field,
    is_semi_arithmetic,
    squared_trace_field,
    squares_subgroup,
    trace_field,
    trace_field_condition,
)
from semiarith.fuchsian.words import random_word
from semiarith.synthetic.groups import builtin_group, builtin_names

pytestmark = pytest.mark.timeout(300)


def test_modular_trace_field(modular, config):
    """
    PSL(2, Z) has trace field Q and satisfies the trace-field condition.
    """
    cond = trace_field_condition(modular, config)
    assert cond.trace_field.degree == 1
    assert cond.holds


def test_hecke_trace_field(hecke5, config):
    """
    The Hecke group over the golden ratio has k = kΓ = Q(√5).
    """
    cond = trace_field_condition(hecke5, config)
    assert cond.trace_field.degree == 2
    assert cond.invariant_trace_field.degree == 2
    assert cond.holds
    assert cond.trace_field.contains(hecke5.field.gen)


def test_sqrt2_demo_trace_field(sqrt2_demo, config):
    """
    tr² y = 6 + 4√2 keeps the trace-field condition over Q(√2).
    """
    cond = trace_field_condition(sqrt2_demo, config)
    assert cond.trace_field.degree == 2
    assert cond.holds


@pytest.mark.parametrize("name", ["takeuchi_a", "takeuchi_b"])
def test_takeuchi_invariant_trace_field_is_q(name, config, request):
    """
    Both genus-one groups fail the trace-field condition with kΓ = Q.
    """
    rep = request.getfixturevalue(name)
    cond = trace_field_condition(rep, config)
    assert cond.invariant_trace_field.degree == 1
    assert cond.trace_field.degree > 1
    assert not cond.holds


def test_trace_field_contains_sampled_traces(hecke5, config):
    """
    Traces of random long words lie in the computed field.
    """
    k = trace_field(hecke5, config)
    rng = random.Random(config.sampling.seed + 1)
    for _ in range(50):
        w = random_word(2, 10, rng)
        assert k.contains(hecke5.trace(w)), f"trace of {hecke5.format_word(w)} escapes k"


def test_squares_subgroup_of_modular(modular, config):
    """
    The relator (ST)³ cuts the mod-2 quotient of PSL(2, Z) to Z/2.
    """
    result = squares_subgroup(modular, config)
    assert result.index == 2
    for w in result.words:
        assert w.mod2_vector(2) in {(0, 0), (1, 1)}
    assert result.group.relators


def test_squares_subgroup_of_genus_one(takeuchi_a, config):
    """
    Index 4 with 4·(2 − 1) + 1 = 5 Schreier generators, all with trivial mod-2 image.
    """
    result = squares_subgroup(takeuchi_a, config)
    assert result.index == 4
    assert len(result.words) == 5
    assert all(not any(w.mod2_vector(2)) for w in result.words)
    cond = trace_field_condition(result.group, config)
    assert cond.trace_field.degree == 1
    assert cond.holds


def test_squares_subgroup_cap(rationals, config):
    """
    Too many generators exceed the configured cap.
    """
    small = config.model_copy(
        update={"search": config.search.model_copy(update={"max_square_generators": 1})}
    )
    rep = load_group(rationals, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]])
    with pytest.raises(EnumerationCapExceeded):
        squares_subgroup(rep, small)


def test_semi_arithmetic(modular, takeuchi_a, config):
    """
    Integral traces and a totally real kΓ.
    """
    assert is_semi_arithmetic(modular, config).semi_arithmetic
    assert is_semi_arithmetic(takeuchi_a, config).semi_arithmetic


def test_non_integral_trace(rationals, config):
    """
    tr(T·L) = 5/2 for L = [[1, 0], [1/2, 1]] is not an algebraic integer.
    """
    rep = load_group(rationals, [[[1, 1], [0, 1]], [[1, 0], [Fraction(1, 2), 1]]])
    result = is_semi_arithmetic(rep, config)
    assert not result.semi_arithmetic
    assert not result.integral
    assert result.totally_real
    assert result.non_integral_word is not None
    assert not rep.trace(result.non_integral_word).is_integral()


@pytest.mark.parametrize("name", builtin_names())
def test_trace_recursion(name, config):
    """
    tr(AB) + tr(AB⁻¹) = tr(A)·tr(B) on random word pairs in every built-in group.
    """
    rep = builtin_group(name)
    rng = random.Random(config.sampling.seed)
    for _ in range(500):
        a = random_word(rep.n_generators, 6, rng)
        b = random_word(rep.n_generators, 6, rng)
        A, B = rep.evaluate(a), rep.evaluate(b)
        assert (A @ B).trace + (A @ B.adjugate()).trace == A.trace * B.trace


def _same_subfield(a, b) -> bool:
    if a.degree != b.degree:
        return False
    return a.degree == 1 or (a.contains(b.generator) and b.contains(a.generator))


@pytest.mark.parametrize("name", builtin_names())
def test_invariant_trace_field_matches_squared_traces(name, config):
    """
    The trace field of the squares subgroup equals Q(tr²γ) for every built-in group.
    """
    rep = builtin_group(name)
    k2 = invariant_trace_field(rep, config)
    assert _same_subfield(k2, squared_trace_field(rep, config))
    assert trace_field(rep, config).contains(k2.generator)


def test_invariant_trace_field_is_squares_trace_field(hecke5, takeuchi_a, config):
    """
    Outside degree one the result is the trace field of Γ^(2) itself.
    """
    for rep in (hecke5, takeuchi_a):
        squares = squares_subgroup(rep, config).group
        assert _same_subfield(invariant_trace_field(rep, config), trace_field(squares, config))
