# tests/congruence/test_order.py

import pytest

from semiarith.congruence.order import (
    bad_primes,
    check_base_field,
    order_basis,
    split_order_mod_p,
)
from semiarith.core.errors import BadPrimeError, FieldError, PreconditionError, UnsupportedError
from semiarith.core.numfield import Subfield, factor_prime, field_create
from semiarith.finite.psl2 import mat_det, mat_mul

pytestmark = pytest.mark.timeout(300)


def test_modular_order_is_matrix_ring(modular, config):
    """
    Z[PSL(2, Z)] lifts to M(2, Z): rank 4, unimodular trace form, S = {2, 3}.
    """
    order = order_basis(modular, config)
    assert len(order.basis) == 4
    assert abs(order.discriminant) == 1
    assert bad_primes(order) == frozenset({2, 3})
    for g in modular.generators:
        assert order.contains(g)
        assert order.contains(g.adjugate())


def test_order_is_closed(hecke5, config):
    """
    Products of basis elements stay in the order; S contains 2, 3 and the field discriminant.
    """
    order = order_basis(hecke5, config)
    assert len(order.basis) == 8
    assert {2, 3, 5} <= order.bad_primes
    mats = order.basis_matrices
    for x in mats:
        for y in mats:
            assert order.contains(x @ y)


def test_order_needs_trace_field_condition(takeuchi_a, config):
    """
    A group failing the trace-field condition is refused.
    """
    with pytest.raises(PreconditionError):
        order_basis(takeuchi_a, config)


@pytest.mark.parametrize(
    "coeffs, interval",
    [([1, 0, -3, 1], (1, 2)), ([1, 0, -10], (3, 4))],
)
def test_check_base_field_rejects(coeffs, interval):
    """
    Cubic fields and real quadratic fields that are not norm-Euclidean are unsupported.
    """
    K = field_create(coeffs, interval)
    with pytest.raises(UnsupportedError):
        check_base_field(Subfield(K, K, K.gen))


def test_check_base_field_accepts(q_sqrt2, q_sqrt5):
    """
    Q(√2) and Q(√5) are norm-Euclidean.
    """
    for K in (q_sqrt2, q_sqrt5):
        check_base_field(Subfield(K, K, K.gen))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_split_modular_order(modular, rationals, config, p):
    """
    O/pO ≅ M(2, F_p) is unital and sends generators to determinant one.
    """
    order = order_basis(modular, config)
    splitting = split_order_mod_p(order, factor_prime(rationals, p)[0])
    F = splitting.field
    assert splitting.images[0] == (1, 0, 0, 1)
    images = [splitting.reduce_matrix(g) for g in modular.generators]
    assert all(mat_det(F, m) == 1 for m in images)
    S = images[1]
    assert mat_mul(F, S, S) == (p - 1, 0, 0, p - 1)


def test_split_hecke_order_at_split_prime(hecke5, config):
    """
    Both primes above 11 in Q(√5) split the order.
    """
    order = order_basis(hecke5, config)
    assert 11 not in order.bad_primes
    primes = factor_prime(order.k.field, 11)
    assert len(primes) == 2
    for P in primes:
        splitting = split_order_mod_p(order, P)
        for g in hecke5.generators:
            assert mat_det(splitting.field, splitting.reduce_matrix(g)) == 1


def test_split_order_errors(modular, rationals, q_sqrt5, config):
    """
    Bad primes and primes of another field are refused.
    """
    order = order_basis(modular, config)
    with pytest.raises(BadPrimeError) as exc:
        split_order_mod_p(order, factor_prime(rationals, 3)[0])
    assert exc.value.prime == 3
    with pytest.raises(FieldError):
        split_order_mod_p(order, factor_prime(q_sqrt5, 11)[0])
