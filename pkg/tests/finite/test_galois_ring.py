# tests/finite/test_galois_ring.py

import random

import numpy as np
import pytest

from semiarith.core.errors import BadPrimeError, UnsupportedError
from semiarith.finite.field import finite_field
from semiarith.finite.galois_ring import GaloisRing, ResidueRing


def test_residue_ring():
    """
    Units, inverses and valuations in Z/125.
    """
    R = ResidueRing(5, 3)
    assert R.modulus == 125
    assert R.valuation(50) == 2
    assert R.valuation(0) == 3
    assert R.inv(2) * 2 % 125 == 1
    with pytest.raises(ZeroDivisionError):
        R.inv(5)


def test_galois_ring_rejects():
    """
    Even characteristic and non-quadratic extensions are refused.
    """
    with pytest.raises(BadPrimeError):
        GaloisRing(2, 2)
    with pytest.raises(UnsupportedError):
        GaloisRing(3, 2, f=3)


def test_norm_is_multiplicative():
    """
    N(ab) = N(a)N(b) in GR(27, 2).
    """
    R = GaloisRing(3, 3)
    rng = random.Random(11)
    for _ in range(200):
        a = (rng.randrange(27), rng.randrange(27))
        b = (rng.randrange(27), rng.randrange(27))
        assert R.norm(R.mul(a, b)) == R.norm(a) * R.norm(b) % 27, f"norm fails on {a}, {b}"


def test_frobenius_is_an_involutive_ring_map():
    """
    Frobenius respects products, has order 2 and fixes Z/p^m.
    """
    R = GaloisRing(5, 2)
    for a in R.elements():
        assert R.frobenius(R.frobenius(a)) == a
    rng = random.Random(3)
    for _ in range(100):
        a = (rng.randrange(25), rng.randrange(25))
        b = (rng.randrange(25), rng.randrange(25))
        assert R.frobenius(R.mul(a, b)) == R.mul(R.frobenius(a), R.frobenius(b))
    assert R.frobenius((7, 0)) == (7, 0)


def test_reduction_to_residue_field():
    """
    Mod p, GR(p^m, 2) is F_{p^2} with Frobenius x ↦ x^p.
    """
    R = GaloisRing(3, 2)
    F = finite_field(3, 2)
    for x in range(3):
        for y in range(3):
            code = x + 3 * y
            fx, fy = R.reduce(R.frobenius((x, y)), 1)
            assert fx + 3 * fy == F.frobenius(code)
            sx, sy = R.reduce(R.mul((x, y), (x, y)), 1)
            assert sx + 3 * sy == F.mul(code, code)


def test_array_forms_agree():
    """
    The vectorized product and norm agree with the scalar ones.
    """
    R = GaloisRing(7, 2)
    grid = np.arange(49)
    x, y = np.meshgrid(grid, grid, indexing="ij")
    x, y = x.ravel(), y.ravel()
    px, py = R.mul_arrays(x, y, x, y)
    norms = R.norm_arrays(x, y)
    for i in range(0, len(x), 97):
        a = (int(x[i]), int(y[i]))
        assert (int(px[i]), int(py[i])) == R.mul(a, a)
        assert int(norms[i]) == R.norm(a)
