"""HarmonicLaw carrier tests: evaluation, CDF, projection, sampling."""

import math

import numpy as np
import pytest
from scipy import integrate

from circlaw import DomainError, SignedLawError
from circlaw.harmonic import TWO_PI, GridDensity, HarmonicLaw, cdf, fourier_coeffs, sample


def make_law(a, b, a0=1.0 / TWO_PI, tail=0.0):
    return HarmonicLaw(a0=a0, cos_coeffs=np.asarray(a, float),
                       sin_coeffs=np.asarray(b, float), tail_bound=tail)


def ks_against(sorted_samples, cdf_vals):
    n = sorted_samples.size
    i = np.arange(1, n + 1)
    return max(np.max(i / n - cdf_vals), np.max(cdf_vals - (i - 1) / n))


class TestHarmonicLaw:
    def test_uniform(self):
        law = make_law([], [])
        assert law.n_terms == 0
        assert law.density(1.234) == pytest.approx(1.0 / TWO_PI, abs=1e-15)

    def test_mixed_series_value(self):
        law = make_law([0.1, 0.0, 0.02], [0.05, 0.0, 0.0])
        th = 0.9
        expect = (1.0 / TWO_PI + 0.1 * math.cos(th) + 0.02 * math.cos(3 * th)
                  + 0.05 * math.sin(th))
        assert law.density(th) == pytest.approx(expect, abs=1e-14)
        vals = law.density(np.array([0.0, th]))
        assert vals[1] == pytest.approx(expect, abs=1e-14)

    def test_periodicity(self):
        law = make_law([0.1, 0.03], [0.02, 0.0])
        for th in (0.0, 1.0, 4.0):
            assert law.density(th) == pytest.approx(law.density(th + TWO_PI), abs=1e-12)

    def test_validation(self):
        with pytest.raises(DomainError):
            make_law([0.1, 0.2], [0.1])
        with pytest.raises(DomainError):
            HarmonicLaw(a0=1.0, cos_coeffs=np.zeros((2, 2)),
                        sin_coeffs=np.zeros((2, 2)), tail_bound=0.0)
        with pytest.raises(DomainError):
            make_law([0.1], [0.0], tail=-1e-3)


class TestCdf:
    def test_endpoints(self):
        law = make_law([0.1, 0.02], [0.03, 0.01])
        assert law.cdf(0.0) == 0.0
        assert law.cdf(TWO_PI) == pytest.approx(1.0, abs=1e-12)
        assert cdf(law, TWO_PI) == pytest.approx(1.0, abs=1e-12)

    def test_midpoint_of_even_law(self):
        # pure cosine series: cdf(pi) = a0 pi = 1/2, every sin(k pi) = 0
        law = make_law([0.2, -0.05, 0.01], [0.0, 0.0, 0.0])
        assert law.cdf(math.pi) == pytest.approx(0.5, abs=1e-13)

    def test_matches_quadrature(self):
        law = make_law([0.08, 0.01], [0.04, -0.02])
        for th in (0.7, 2.0, 5.5):
            oracle, _ = integrate.quad(law.density, 0.0, th, limit=200)
            assert law.cdf(th) == pytest.approx(oracle, abs=1e-10)

    def test_domain(self):
        law = make_law([0.1], [0.0])
        with pytest.raises(DomainError):
            law.cdf(-0.5)
        with pytest.raises(DomainError):
            law.cdf(TWO_PI + 0.5)


class TestFourierCoeffs:
    def test_exact_recovery(self):
        law = make_law([0.1, 0.0, 0.02], [0.05, -0.01, 0.0])
        a, b = fourier_coeffs(law.density, 3)
        assert np.allclose(a, [0.1, 0.0, 0.02], atol=1e-13)
        assert np.allclose(b, [0.05, -0.01, 0.0], atol=1e-13)

    def test_uniform_density_projects_to_zero(self):
        a, b = fourier_coeffs(lambda th: np.full_like(np.asarray(th, float), 1.0 / TWO_PI), 4)
        assert np.all(np.abs(a) < 1e-10) and np.all(np.abs(b) < 1e-10)

    def test_scalar_callable_fallback(self):
        a, b = fourier_coeffs(lambda th: 1.0 / TWO_PI + 0.1 * math.cos(2 * th), 2)
        assert a[1] == pytest.approx(0.1, abs=1e-13)
        assert a[0] == pytest.approx(0.0, abs=1e-13)

    def test_node_validation(self):
        with pytest.raises(DomainError):
            fourier_coeffs(lambda th: th, 0)
        with pytest.raises(DomainError):
            fourier_coeffs(lambda th: th, 4, n_nodes=8)


class TestGridDensity:
    def test_roundtrip(self):
        th = np.linspace(0.0, 6.0, 7)
        g = GridDensity(thetas=th, values=np.ones(7), kind="density")
        assert g.thetas[0] == 0.0

    def test_validation(self):
        th = np.linspace(0.0, 6.0, 7)
        with pytest.raises(DomainError):
            GridDensity(thetas=th + 0.1, values=np.ones(7), kind="density")
        with pytest.raises(DomainError):
            GridDensity(thetas=th[::-1], values=np.ones(7), kind="cdf")
        with pytest.raises(DomainError):
            GridDensity(thetas=np.array([0.0]), values=np.array([1.0]), kind="cdf")
        with pytest.raises(DomainError):
            GridDensity(thetas=th, values=np.ones(7), kind="histogram")


class TestSample:
    def test_uniform_law_ks(self):
        law = make_law([], [])
        rng = np.random.default_rng(7)
        xs = np.sort(sample(law, rng, size=100_000))
        d = ks_against(xs, xs / TWO_PI)
        assert d < 0.01

    def test_matches_own_cdf(self):
        law = make_law([0.9 / TWO_PI, 0.2 / TWO_PI], [0.3 / TWO_PI, 0.0])
        # min over a fine grid stays positive, so this is a genuine density
        th = np.linspace(0.0, TWO_PI, 4096)
        assert law.density(th).min() > 0.0
        rng = np.random.default_rng(11)
        xs = np.sort(sample(law, rng, size=100_000))
        d = ks_against(xs, law.cdf(xs))
        assert d < 0.01

    def test_signed_law_refused(self):
        law = make_law([1.2 / TWO_PI], [0.0])  # dips negative near pi
        with pytest.raises(SignedLawError):
            sample(law, np.random.default_rng(0))

    def test_deterministic_per_seed(self):
        law = make_law([0.5 / TWO_PI], [0.0])
        a = sample(law, np.random.default_rng(42), size=50)
        b = sample(law, np.random.default_rng(42), size=50)
        assert np.array_equal(a, b)

    def test_scalar_draw_in_range(self):
        law = make_law([], [])
        th = sample(law, np.random.default_rng(3))
        assert 0.0 <= th < TWO_PI

    def test_size_validation(self):
        law = make_law([], [])
        with pytest.raises(DomainError):
            sample(law, np.random.default_rng(0), size=0)
