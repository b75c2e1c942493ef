# tests/finite/test_field.py

import pytest

from semiarith.core.errors import BadPrimeError
from semiarith.finite.field import FiniteField, least_irreducible, split_prime_power


@pytest.mark.parametrize("p", [2, 9, 1])
def test_field_rejects_bad_characteristic(p):
    """
    Only odd primes are accepted.
    """
    with pytest.raises(BadPrimeError):
        FiniteField(p)


def test_least_irreducible():
    """
    F_9 is built on w² + 1, the least monic irreducible quadratic over F_3.
    """
    assert least_irreducible(3, 2) == (1, 0, 1)
    assert least_irreducible(7, 1) == (1, 0)


def test_prime_field_arithmetic(f7):
    """
    Inverses, square roots and the primitive element of F_7.
    """
    assert all(f7.mul(a, f7.inv(a)) == 1 for a in range(1, 7))
    assert f7.primitive_element() == 3
    assert f7.sqrt(2) == 3
    assert f7.sqrt(3) is None
    assert f7.log(f7.pow(3, 4)) == 4


def test_extension_field_arithmetic(f9):
    """
    w² = −1 and every nonzero element is invertible in F_9.
    """
    w = 3
    assert f9.mul(w, w) == f9.neg(1)
    assert all(f9.mul(a, f9.inv(a)) == 1 for a in range(1, 9))
    assert f9.format(w) == "w"
    assert f9.format(7) == "2*w + 1"


def test_frobenius(f9):
    """
    Frobenius is x ↦ x³, fixes F_3 and has order 2.
    """
    w = 3
    assert f9.frobenius(w) == f9.neg(w)
    assert all(f9.frobenius(a) == f9.pow(a, 3) for a in range(1, 9))
    assert all(f9.frobenius(f9.frobenius(a)) == a for a in range(9))
    assert all(f9.frobenius(a) == a for a in range(3))


def test_roots(f9):
    """
    x² + 1 has the roots ±w in F_9 and none in F_3.
    """
    assert f9.roots([1, 0, 1]) == [3, 6]
    assert FiniteField(3).roots([1, 0, 1]) == []


def test_split_prime_power():
    """
    q = p^f is split; non prime powers are refused.
    """
    assert split_prime_power(9) == (3, 2)
    assert split_prime_power(13) == (13, 1)
    with pytest.raises(BadPrimeError):
        split_prime_power(12)
