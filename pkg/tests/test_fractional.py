"""Fractional circular law tests: Caputo-in-time and spectral-in-space
series, wrapped stable laws, equality in law, Laplacian spectral action."""

import math
import warnings

import numpy as np
import pytest

from circlaw import ConvergenceError, DomainError, SlowDecayWarning, Tolerance
from circlaw.brownian import bm_density
from circlaw.fractional import (
    FracParams,
    frac_laplacian_apply,
    space_fractional_density,
    space_fractional_half_closed,
    space_fractional_law,
    space_time_fractional_cdf,
    space_time_fractional_density,
    time_fractional_law,
    wrapped_stable_density,
    wrapped_stable_law,
)
from circlaw.harmonic import TWO_PI
from circlaw.pseudo import even_circle_law

TOL6 = Tolerance(abs_tol=1e-6)
TOL3 = Tolerance(abs_tol=1e-3)


class TestFracParams:
    def test_valid(self):
        p = FracParams(nu=0.5, beta=1.0)
        assert p.nu == 0.5 and p.beta == 1.0

    @pytest.mark.parametrize("nu,beta", [(0.0, 0.5), (1.1, 0.5), (0.5, 0.0), (0.5, 2.0)])
    def test_invalid(self, nu, beta):
        with pytest.raises(DomainError):
            FracParams(nu=nu, beta=beta)


class TestTimeFractionalLaw:
    def test_nu_one_collapses_exactly(self):
        a = time_fractional_law(2, 1.0, 1.0).cos_coeffs
        b = even_circle_law(2, 1.0).cos_coeffs
        assert a.shape == b.shape and np.all(a == b)

    def test_against_high_precision_sum(self):
        # frozen from a 30-digit evaluation of the full coefficient sum
        # (series head + algebraic asymptotic tail to k = 3e5)
        oracle = {
            0.0: 0.38641224587085277,
            1.0: 0.19767953406317434,
            math.pi: 0.054798439186577175,
        }
        law = time_fractional_law(1, 0.6, 1.0, TOL6)
        for th, want in oracle.items():
            assert law.density(th) == pytest.approx(want, abs=1e-6)
        # the theta=0 point is the slow one; observed error ~3e-8
        assert law.density(0.0) == pytest.approx(oracle[0.0], abs=1e-7)

    def test_certified_tail(self):
        law = time_fractional_law(1, 0.6, 1.0, TOL6)
        assert 0.0 < law.tail_bound <= 1e-6
        assert law.n_terms > 100_000  # algebraic decay is genuinely slow

    def test_coefficients_decreasing(self):
        law = time_fractional_law(1, 0.6, 1.0, TOL6)
        assert np.all(np.diff(law.cos_coeffs) < 1e-15)
        assert np.all(law.cos_coeffs > 0.0)

    def test_unit_mass_and_symmetry(self):
        law = time_fractional_law(1, 0.7, 2.0, TOL6)
        assert law.cdf(TWO_PI) == pytest.approx(1.0, abs=1e-12)
        th = np.linspace(0.1, math.pi, 7)
        assert np.allclose(law.density(th), law.density(TWO_PI - th), atol=1e-14)

    def test_tight_tolerance_is_refused(self):
        with pytest.raises(ConvergenceError, match="loosen"):
            time_fractional_law(1, 0.6, 1.0)  # 1e-10 needs ~3e9 terms

    def test_validation(self):
        with pytest.raises(DomainError):
            time_fractional_law(0, 0.5, 1.0)
        with pytest.raises(DomainError):
            time_fractional_law(1, 1.5, 1.0)
        with pytest.raises(DomainError):
            time_fractional_law(1, 0.5, 0.0)


class TestSpaceFractional:
    def test_beta_one_is_brownian(self):
        # both series carry identical coefficients; run both at 1e-13 so
        # the truncation mismatch sits below the 1e-12 target
        tight = Tolerance(abs_tol=1e-13)
        th = np.linspace(0.0, TWO_PI, 64, endpoint=False)
        gap = np.max(
            np.abs(
                space_fractional_density(1.0, th, 1.0, tight)
                - np.asarray(bm_density(th, 1.0, tight))
            )
        )
        assert gap < 1e-12

    def test_half_closed_form(self):
        th = np.linspace(0.0, TWO_PI, 64, endpoint=False)
        for t in (0.3, 1.0, 3.0):
            gap = np.max(
                np.abs(space_fractional_density(0.5, th, t) - space_fractional_half_closed(th, t))
            )
            assert gap < 1e-10

    def test_center_value(self):
        assert space_fractional_density(0.5, 0.0, 1.0) == pytest.approx(0.46876, abs=1e-5)
        assert space_fractional_half_closed(0.0, 1.0) == pytest.approx(
            0.4687602808, abs=1e-9
        )

    def test_mean_is_uniform_level(self):
        th = np.arange(512) * (TWO_PI / 512)
        mean = float(np.mean(space_fractional_density(0.7, th, 1.0)))
        assert mean == pytest.approx(1.0 / TWO_PI, abs=1e-13)

    def test_unit_mass(self):
        assert space_fractional_law(0.4, 1.0).cdf(TWO_PI) == pytest.approx(1.0, abs=1e-12)

    def test_semigroup_coefficients(self):
        l1 = space_fractional_law(0.7, 0.4, TOL6)
        l2 = space_fractional_law(0.7, 0.9, TOL6)
        l12 = space_fractional_law(0.7, 1.3, TOL6)
        m = min(l1.n_terms, l2.n_terms, l12.n_terms)
        prod = l1.cos_coeffs[:m] * l2.cos_coeffs[:m] * math.pi
        assert np.max(np.abs(prod - l12.cos_coeffs[:m]) / l12.cos_coeffs[:m]) < 1e-14

    def test_validation(self):
        with pytest.raises(DomainError):
            space_fractional_density(1.2, 0.0, 1.0)
        with pytest.raises(DomainError):
            space_fractional_density(0.5, 0.0, -1.0)


class TestFracLaplacian:
    def test_eigenvalues(self):
        law = space_fractional_law(0.5, 1.0, TOL6)
        img = frac_laplacian_apply(0.5, law)
        assert img.a0 == 0.0
        assert img.cos_coeffs[1] / law.cos_coeffs[1] == pytest.approx(
            math.sqrt(2.0), rel=1e-14
        )
        k = np.arange(1.0, law.n_terms + 1.0)
        assert np.all(img.cos_coeffs >= 0.0)  # positive semidefinite
        assert np.allclose(img.cos_coeffs, np.sqrt(k * k / 2.0) * law.cos_coeffs)

    def test_negate_flag_gives_generator(self):
        law = space_fractional_law(0.5, 1.0, TOL6)
        gen = frac_laplacian_apply(1.0, law, negate=True)
        assert gen.cos_coeffs[2] / law.cos_coeffs[2] == pytest.approx(-4.5, rel=1e-14)

    def test_time_derivative_residual(self):
        # d/dt of the space-fractional coefficients is -(k^2/2)^beta times
        # the coefficients: central differences with lam*h = 1e-3
        beta, t = 0.6, 1.0
        law = space_fractional_law(beta, t, TOL6)
        gen = frac_laplacian_apply(beta, law, negate=True)
        for k in (1, 2, 3, 5):
            lam = (k * k / 2.0) ** beta
            h = 1e-3 / lam
            ap = space_fractional_law(beta, t + h, TOL6).cos_coeffs[k - 1]
            am = space_fractional_law(beta, t - h, TOL6).cos_coeffs[k - 1]
            assert (ap - am) / (2 * h) == pytest.approx(gen.cos_coeffs[k - 1], abs=1e-7)

    def test_validation(self):
        law = space_fractional_law(0.5, 1.0, TOL6)
        with pytest.raises(DomainError):
            frac_laplacian_apply(0.0, law)


class TestWrappedStable:
    def test_geometric_value(self):
        # beta=1/2, t=1, theta=0: plain geometric series
        want = (1.0 + math.exp(-1.0)) / (TWO_PI * (1.0 - math.exp(-1.0)))
        assert wrapped_stable_density(0.5, 0.0, 1.0) == pytest.approx(want, abs=1e-10)
        assert wrapped_stable_density(0.5, 0.0, 1.0) == pytest.approx(
            0.3444038824, abs=1e-9
        )

    def test_beta_one_matches_even_order_series(self):
        th = np.linspace(0.0, TWO_PI, 64, endpoint=False)
        gap = np.max(
            np.abs(wrapped_stable_density(1.0, th, 0.8) - even_circle_law(1, 0.8).density(th))
        )
        assert gap < 1e-12

    @pytest.mark.parametrize("beta", [0.3, 0.5, 0.9])
    def test_equality_in_law(self, beta):
        th = np.linspace(0.0, TWO_PI, 64, endpoint=False)
        t = 1.3
        gap = np.max(
            np.abs(
                wrapped_stable_density(beta, th, t)
                - space_fractional_density(beta, th, (2.0**beta) * t)
            )
        )
        assert gap < 1e-10

    def test_slow_decay_warning(self):
        with pytest.warns(SlowDecayWarning):
            law = wrapped_stable_law(0.25, 0.05, Tolerance(abs_tol=1e-10))
        assert law.n_terms > 100_000

    def test_slow_decay_cap(self):
        with pytest.raises(ConvergenceError, match="loosen"):
            wrapped_stable_law(0.1, 0.5, Tolerance(abs_tol=1e-10))

    def test_unit_mass(self):
        assert wrapped_stable_law(0.6, 1.0).cdf(TWO_PI) == pytest.approx(1.0, abs=1e-12)


class TestSpaceTimeFractional:
    def test_pointwise_against_high_precision_sum(self):
        # frozen 30-digit evaluation (series head + asymptotic tail, k to 3e5)
        got = space_time_fractional_density(0.5, 0.75, 1.0, 1.0, TOL3)
        assert got == pytest.approx(0.16586331821299108, abs=1e-3)
        assert got == pytest.approx(0.16586331821299108, abs=1e-6)  # observed ~5e-8

    def test_nu_one_delegates(self):
        a = space_time_fractional_density(1.0, 0.7, 1.1, 0.9, TOL6)
        b = space_fractional_density(0.7, 1.1, 0.9, TOL6)
        assert a == b

    def test_beta_one_delegates_to_half_diffusivity(self):
        a = space_time_fractional_density(0.6, 1.0, 1.1, 0.9, TOL6)
        b = time_fractional_law(1, 0.6, 0.9 * 2.0 ** (-1.0 / 0.6), TOL6).density(1.1)
        assert a == b

    def test_low_beta_pointwise_refused(self):
        with pytest.raises(ConvergenceError, match="space_time_fractional_cdf"):
            space_time_fractional_density(0.5, 0.5, 0.0, 1.0, TOL6)

    def test_cdf_structure(self):
        # even law: mass below pi is exactly 1/2; full mass is 1
        assert space_time_fractional_cdf(0.5, 0.5, math.pi, 1.0, TOL3) == pytest.approx(
            0.5, abs=1e-14
        )
        assert space_time_fractional_cdf(0.5, 0.5, TWO_PI, 1.0, TOL3) == pytest.approx(
            1.0, abs=1e-12
        )
        assert space_time_fractional_cdf(0.5, 0.5, 0.0, 1.0, TOL3) == 0.0

    def test_cdf_monotone(self):
        th = np.linspace(0.0, TWO_PI, 41)
        F = space_time_fractional_cdf(0.5, 0.5, th, 1.0, TOL3)
        assert np.all(np.diff(F) > -1e-9)

    def test_cdf_delegations_match_density_level(self):
        a = space_time_fractional_cdf(1.0, 0.7, 1.3, 0.9, TOL6)
        assert a == space_fractional_law(0.7, 0.9, TOL6).cdf(1.3)

    def test_cdf_domain(self):
        with pytest.raises(DomainError):
            space_time_fractional_cdf(0.5, 0.5, -0.5, 1.0, TOL3)
        with pytest.raises(DomainError):
            space_time_fractional_cdf(0.5, 0.5, TWO_PI + 0.5, 1.0, TOL3)
