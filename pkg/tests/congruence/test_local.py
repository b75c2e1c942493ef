# tests/congruence/test_local.py

import math

import pytest
from pydantic import ValidationError

from semiarith.congruence.local import (
    PSL_CAVEAT,
    STEP_ORDER_NOTE,
    composition_account,
    crt_quotient_check,
    local_ramified,
    local_unramified,
    sl2_order,
)
from semiarith.core.errors import (
    BadPrimeError,
    EnumerationCapExceeded,
    PreconditionError,
    UnsupportedError,
)
from semiarith.core.numfield import factor_prime

pytestmark = pytest.mark.timeout(300)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_ramified_top_is_cyclic(q, config):
    """
    O¹/O¹(M) is cyclic of order q + 1.
    """
    report = local_ramified(q, 1, config)
    assert report.top_order == q + 1
    assert report.top_cyclic
    assert report.order == q + 1
    assert report.steps == []


@pytest.mark.parametrize("q", [3, 5])
def test_ramified_steps_have_exponent_p(q, config):
    """
    Each step of the filtration is an elementary abelian p-group.
    """
    report = local_ramified(q, 3, config)
    assert [s.level for s in report.steps] == [1, 2]
    for step in report.steps:
        assert step.exponent == q
        assert step.stated_order == q
        expected = q * q if step.level % 2 else q
        assert step.order == expected, f"step {step.level} has order {step.order}"
        assert step.matches_stated == (expected == q)
        assert step.note == (None if expected == q else STEP_ORDER_NOTE)
    assert report.order == report.top_order * math.prod(s.order for s in report.steps)


def test_ramified_rejects_prime_powers(config):
    """
    The pair model is built over Q_p only.
    """
    with pytest.raises(UnsupportedError):
        local_ramified(9, 1, config)
    with pytest.raises(BadPrimeError):
        local_ramified(4, 1, config)


def test_ramified_cap(config):
    """
    p^(2m) pairs above the cap are refused.
    """
    small = config.model_copy(
        update={"enumeration": config.enumeration.model_copy(update={"local_ramified_cap": 100})}
    )
    with pytest.raises(EnumerationCapExceeded) as exc:
        local_ramified(5, 2, small)
    assert exc.value.size == 625


@pytest.mark.parametrize("q, r, expected", [(3, 2, 648), (5, 2, 15000), (7, 1, 336)])
def test_unramified_enumeration(q, r, expected, config):
    """
    Enumerated orders of SL(2, Z/p^r) match q^(3(r-1))·q(q²-1).
    """
    report = local_unramified(q, r, config=config)
    assert report.mode == "enumeration"
    assert report.order == expected == sl2_order(q, r)
    assert report.enumerated_order == expected
    if r > 1:
        assert report.surjective_reduction


@pytest.mark.parametrize("q, r", [(3, 2), (3, 3), (5, 2)])
def test_unramified_step_kernels(q, r, config):
    """
    Every step kernel is (Z/p)³, identified with trace-zero matrices.
    """
    report = local_unramified(q, r, config=config)
    assert [s.level for s in report.steps] == list(range(1, r))
    for step in report.steps:
        assert step.order == q**3
        assert step.structure == f"(Z/{q})^3"
        assert step.exponent == q
        assert step.trace_zero_bijective
        assert step.verified


def test_unramified_formula_mode(config):
    """
    Residue degree two is reported from the formula, with (Z/p)^(3f) steps.
    """
    report = local_unramified(9, 2, config=config)
    assert report.mode == "formula"
    assert report.f == 2
    assert report.order == 9**3 * 9 * 80
    assert report.enumerated_order is None
    assert [s.structure for s in report.steps] == ["(Z/3)^6"]
    assert not report.steps[0].verified


def test_unramified_errors(config):
    """
    Forced enumeration outside f = 1 or above the cap fails; bad inputs are rejected.
    """
    with pytest.raises(UnsupportedError):
        local_unramified(9, 1, enumerate=True, config=config)
    small = config.model_copy(
        update={"enumeration": config.enumeration.model_copy(update={"local_unramified_cap": 1000})}
    )
    with pytest.raises(EnumerationCapExceeded):
        local_unramified(5, 2, enumerate=True, config=small)
    assert local_unramified(5, 2, config=small).mode == "formula"
    with pytest.raises(BadPrimeError):
        local_unramified(8, 1, config=config)
    with pytest.raises(ValidationError):
        local_unramified(5, 0, config=config)


def test_composition_account_unramified(config):
    """
    Z/2, PSL(2, 5) and three copies of Z/5 make up SL(2, Z/25).
    """
    account = composition_account(5, 2, config=config)
    assert account.factors == [2, 60, 5, 5, 5]
    assert account.psl_factors == [60, 5, 5, 5]
    assert math.prod(account.factors) == account.group_order == 15000
    assert account.caveat is None


def test_composition_account_caveat(config):
    """
    q = 3 replaces PSL(2, 3) by its composition factors and says so.
    """
    account = composition_account(3, 2, config=config)
    assert math.prod(account.factors) == 648
    assert 12 not in account.factors
    assert account.caveat == PSL_CAVEAT


def test_composition_account_ramified(config):
    """
    The ramified account is read off the enumerated filtration.
    """
    account = composition_account(3, 1, ramified=True, config=config)
    assert account.ramified
    assert math.prod(account.factors) == account.group_order
    assert set(account.factors) <= {2, 3}
    assert len(account.psl_factors) == len(account.factors) - 1


def test_crt_quotient_check(rationals, config):
    """
    SL(2, Z/15) splits as SL(2, Z/3) × SL(2, Z/5); the PSL kernel is Z/2.
    """
    ideals = [(factor_prime(rationals, 3)[0], 1), (factor_prime(rationals, 5)[0], 1)]
    report = crt_quotient_check(ideals, config)
    assert report.modulus == 15
    assert report.sl_order == 2880
    assert report.component_orders == [24, 120]
    assert report.sl_bijective
    assert report.psl_kernel_order == 2
    assert report.psl_kernel_rank == 1
    assert report.psl_kernel_elementary
    assert report.ideals == ["(3)", "(5)"]


def test_crt_quotient_check_errors(rationals, q_sqrt5, config):
    """
    Repeated rational primes and residue degree two are refused.
    """
    three = factor_prime(rationals, 3)[0]
    with pytest.raises(PreconditionError):
        crt_quotient_check([(three, 1), (three, 2)], config)
    inert = factor_prime(q_sqrt5, 7)[0]
    assert inert.residue_degree == 2
    with pytest.raises(UnsupportedError):
        crt_quotient_check([(inert, 1)], config)
