# tests/synthetic/test_spectra.py

import pytest
from pydantic import ValidationError

from semiarith.congruence.spectrum import reconstruct_field_data
from semiarith.core.numfield import factor_prime
from semiarith.synthetic.spectra import QuadraticSpectrumConfig, QuadraticSpectrumGenerator


def test_synthetic_spectrum_matches_factorization(q_sqrt5):
    """
    Ideal labels and residue degrees agree with factoring in Q(√5) for p ≤ 100.
    """
    report = QuadraticSpectrumGenerator(QuadraticSpectrumConfig(p_max=100)).generate()
    assert [s.p for s in report.skipped] == [2, 5]
    for entry in report.entries:
        primes = factor_prime(q_sqrt5, entry.p)
        assert [q.ideal for q in entry.quotients] == [str(P) for P in primes], f"p = {entry.p}"
        assert entry.residue_degrees == sorted(P.residue_degree for P in primes)
        assert [q.norm for q in entry.quotients] == [P.norm for P in primes]


def test_corrupted_spectrum_differs():
    """
    Swapping split and inert keeps Σ f = 2 but breaks similarity with the true spectrum.
    """
    clean = QuadraticSpectrumGenerator(QuadraticSpectrumConfig(p_max=100)).generate()
    noisy = QuadraticSpectrumGenerator(
        QuadraticSpectrumConfig(p_max=100, corruption=0.5, seed=1)
    ).generate()
    assert reconstruct_field_data(noisy).consistent
    comparison = reconstruct_field_data(clean, noisy)
    assert not comparison.similar
    assert comparison.differing_primes


def test_full_corruption_flips_every_prime():
    """
    With probability one every good prime is flipped.
    """
    clean = QuadraticSpectrumGenerator(QuadraticSpectrumConfig(p_max=50)).generate()
    flipped = QuadraticSpectrumGenerator(QuadraticSpectrumConfig(p_max=50, corruption=1.0)).generate()
    comparison = reconstruct_field_data(clean, flipped)
    assert comparison.differing_primes == comparison.common_primes


@pytest.mark.parametrize(
    "kwargs",
    [{"discriminant": 1}, {"discriminant": 12}, {"corruption": 1.5}, {"corruption": -0.1}],
)
def test_config_validation(kwargs):
    """
    d must be squarefree and greater than one; corruption is a probability.
    """
    with pytest.raises(ValidationError):
        QuadraticSpectrumConfig(**kwargs)
