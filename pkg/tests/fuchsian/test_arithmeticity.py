# tests/fuchsian/test_arithmeticity.py

import pytest

from semiarith.core.errors import PreconditionError, SearchExhaustedError
from semiarith.fuchsian.arithmeticity import (
    is_arithmetic,
    modular_embedding_obstruction,
    quaternion_symbol,
)
from semiarith.fuchsian.group import load_group
from semiarith.fuchsian.tracefield import trace_field
from semiarith.fuchsian.words import Word

pytestmark = pytest.mark.timeout(300)


def test_modular_is_arithmetic(modular, config):
    """
    PSL(2, Z) is arithmetic with an algebra split at the identity.
    """
    report = is_arithmetic(modular, config)
    assert report.arithmetic
    assert report.semi_arithmetic
    assert report.tfc
    assert not report.used_squares
    assert report.ramified_at == (False,)
    assert report.r_split == 1


def test_symbol_entries(modular, config):
    """
    a = tr²x − 4 and b = tr[x, y] − 2 are both nonzero.
    """
    symbol = quaternion_symbol(modular, trace_field(modular, config), config)
    assert not symbol.a.is_zero
    assert not symbol.b.is_zero
    tx = modular.trace(symbol.x)
    assert symbol.a == tx * tx - 4


def test_symbol_search_exhausted(rationals, config):
    """
    A cyclic parabolic group has no x with tr²x ≠ 4.
    """
    rep = load_group(rationals, [[[1, 1], [0, 1]]])
    with pytest.raises(SearchExhaustedError):
        quaternion_symbol(rep, trace_field(rep, config), config)


@pytest.mark.parametrize("name", ["takeuchi_a", "takeuchi_b"])
def test_genus_one_groups_are_arithmetic(name, config, request):
    """
    Both genus-one groups are arithmetic, analysed through Γ^(2) over kΓ = Q.
    """
    report = is_arithmetic(request.getfixturevalue(name), config)
    assert report.arithmetic
    assert report.used_squares
    assert not report.tfc
    assert report.invariant_trace_field.degree == 1


def test_hecke_group_is_not_arithmetic(hecke5, config):
    """
    The golden-ratio Hecke group is semi-arithmetic but not arithmetic.
    """
    report = is_arithmetic(hecke5, config)
    assert report.semi_arithmetic
    assert not report.arithmetic
    assert report.ramified_at[0] is False
    assert report.ramified_at[1] is False
    assert report.trace_bound_witness is not None
    assert report.trace_bound_witness.embedding == 1


def test_obstruction_violation(sqrt2_demo, config):
    """
    tr x = 2√2 has |σ(tr x)| = |tr x|, so no modular embedding exists.
    """
    result = modular_embedding_obstruction(sqrt2_demo, config=config)
    assert not result.passed
    assert result.word == Word.generator(0)
    assert result.embedding == 1


def test_obstruction_passes_over_q(modular, config):
    """
    Over Q there are no other embeddings; the check passes vacuously.
    """
    result = modular_embedding_obstruction(modular, config=config)
    assert result.passed
    assert result.checked == 0


def test_obstruction_passes_for_hecke(hecke5, config):
    """
    Hecke groups admit modular embeddings; short hyperbolic words satisfy the inequality.
    """
    result = modular_embedding_obstruction(hecke5, config=config)
    assert result.passed
    assert result.checked > 0


def test_obstruction_needs_trace_field_condition(takeuchi_a, config):
    """
    Without the trace-field condition the check is refused.
    """
    with pytest.raises(PreconditionError):
        modular_embedding_obstruction(takeuchi_a, config=config)
