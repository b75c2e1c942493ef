# tests/conftest.py

import random

import pytest

from semiarith.core.numfield import field_create, rational_field
from semiarith.core.operations.models import SemiarithConfig
from semiarith.finite.field import finite_field
from semiarith.synthetic.groups import builtin_group


@pytest.fixture
def config():
    """
    Default configuration with progress bars switched off.
    """
    return SemiarithConfig.model_validate({"runtime": {"progress": False}})


@pytest.fixture
def rng(config):
    """
    Deterministic random source seeded from the configuration.
    """
    return random.Random(config.sampling.seed)


@pytest.fixture
def rationals():
    """
    The field Q.
    """
    return rational_field()


@pytest.fixture
def q_sqrt2():
    """
    Q(√2) with the positive root distinguished.
    """
    return field_create([1, 0, -2], (1, 2))


@pytest.fixture
def q_sqrt5():
    """
    Q(√5) with the positive root distinguished.
    """
    return field_create([1, 0, -5], (2, 3))


@pytest.fixture
def f7():
    """
    The prime field F_7.
    """
    return finite_field(7)


@pytest.fixture
def f9():
    """
    F_9 = F_3[w]/(least irreducible quadratic).
    """
    return finite_field(3, 2)


@pytest.fixture
def modular():
    """
    PSL(2, Z) generated by T and S.
    """
    return builtin_group("modular")


@pytest.fixture
def hecke5():
    """
    The Hecke triangle group with translation length the golden ratio.
    """
    return builtin_group("hecke-5")


@pytest.fixture
def takeuchi_a():
    """
    First genus-one group with a single cone point of order 2.
    """
    return builtin_group("takeuchi-A")


@pytest.fixture
def takeuchi_b():
    """
    Second genus-one group with a single cone point of order 2.
    """
    return builtin_group("takeuchi-B")


@pytest.fixture
def sqrt2_demo():
    """
    Group over Q(√2) violating the modular embedding inequality.
    """
    return builtin_group("conj-sqrt2-demo")
