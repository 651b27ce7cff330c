"""Acceptance suite: thirteen numbered criteria, one test (one pass/fail
line under -v) per criterion. Tolerances and draw counts are pinned;
Monte Carlo criteria run on fixed, calibrated streams."""

import json
import math
import time

import numpy as np
import pytest
from scipy import integrate

from circlaw.brownian import (
    bm_first_passage_density,
    bm_law,
    bm_maxdist_cdf,
    bm_quadrant_prob,
)
from circlaw.cli import main
from circlaw.fractional import (
    space_fractional_density,
    space_fractional_half_closed,
    space_fractional_law,
    space_time_fractional_cdf,
    time_fractional_law,
    wrapped_stable_density,
)
from circlaw.harmonic import TWO_PI, fourier_coeffs
from circlaw.kernels import (
    even_kernel_cdf,
    even_kernel_density,
    even_kernel_law,
    even_quadrant_prob,
    kernel_limit_gap,
    odd_half_circle_prob,
    odd_kernel_density,
    odd_kernel_law,
    odd_quadrant_forms,
    wrapped_skew_cauchy_density,
)
from circlaw.montecarlo import (
    RngStream,
    ks_statistic,
    sample_inverse_subordinator,
    sample_stable_subordinator,
    sample_wrapped_bm,
    simulate_planar_hit,
)
from circlaw.pseudo import (
    _grid_min,
    even_circle_density_wrapped,
    even_circle_law,
    min_value,
    positivity_time,
)
from circlaw.special import Tolerance, mittag_leffler
from circlaw.validation import _double_barrier_survival

SEED = 314159
GRID64 = np.arange(64) * (TWO_PI / 64.0)
TIGHT = Tolerance(abs_tol=1e-13)


def test_criterion_01_kernel_series_equals_closed_form():
    """Even and odd kernel series match their closed forms to 1e-12
    on 64 angles at t in {0.25, 1, 4} (odd orders n in {1, 2, 5})."""
    for t in (0.25, 1.0, 4.0):
        even_series = even_kernel_law(t, TIGHT).density(GRID64)
        assert np.max(np.abs(even_series - even_kernel_density(GRID64, t))) <= 1e-12
        for n in (1, 2, 5):
            odd_series = odd_kernel_law(n, t, TIGHT).density(GRID64)
            assert np.max(np.abs(odd_series - odd_kernel_density(n, GRID64, t))) <= 1e-12


def test_criterion_02_dual_route_density_equivalence():
    """Spectral and wrapped-line routes for the even circle law agree to
    1e-6 for n in {1,2,3}, t in {0.3, 1, 3}, 64 angles, in under 10 s."""
    t0 = time.time()
    for n in (1, 2, 3):
        for t in (0.3, 1.0, 3.0):
            spectral = even_circle_law(n, t).density(GRID64)
            wrapped = np.array(
                [even_circle_density_wrapped(n, float(th), t) for th in GRID64]
            )
            assert np.max(np.abs(spectral - wrapped)) <= 1e-6
    assert time.time() - t0 < 10.0


def test_criterion_03_fourier_coefficient_oracle():
    """Projecting the order-4 law at t=1 recovers a_k = e^{-k^4}/pi
    within 1e-8 for k <= 5 (sine parts vanish)."""
    law = even_circle_law(2, 1.0, TIGHT)
    a, b = fourier_coeffs(law.density, 5, 512)
    k = np.arange(1.0, 6.0)
    assert np.max(np.abs(a - np.exp(-(k**4)) / math.pi)) <= 1e-8
    assert np.max(np.abs(b)) <= 1e-8


def test_criterion_04_mittag_leffler_identities():
    """E_{1/2}(-x) = e^{x^2} erfc(x) to 1e-9 at x in {0.1,0.5,1,2,5};
    E_1(-x) = e^{-x} to 1e-12."""
    for x in (0.1, 0.5, 1.0, 2.0, 5.0):
        assert abs(mittag_leffler(0.5, -x) - math.exp(x * x) * math.erfc(x)) <= 1e-9
        assert abs(mittag_leffler(1.0, -x) - math.exp(-x)) <= 1e-12


def test_criterion_05_fractional_reductions():
    """nu=1 time-fractional law equals the even law exactly at the
    coefficient level; beta=1 equals the circular BM density to 1e-12;
    beta=1/2 series equals the closed kernel form to 1e-10."""
    frac = time_fractional_law(2, 1.0, 0.7)
    plain = even_circle_law(2, 0.7)
    assert frac.a0 == plain.a0
    assert np.array_equal(frac.cos_coeffs, plain.cos_coeffs)
    assert np.array_equal(frac.sin_coeffs, plain.sin_coeffs)

    diff = space_fractional_law(1.0, 1.0, TIGHT).density(GRID64) - bm_law(1.0, TIGHT).density(GRID64)
    assert np.max(np.abs(diff)) <= 1e-12

    tol = Tolerance(abs_tol=1e-12)
    for t in (0.5, 1.0):
        diff = space_fractional_density(0.5, GRID64, t, tol) - space_fractional_half_closed(GRID64, t)
        assert np.max(np.abs(diff)) <= 1e-10


def test_criterion_06_wrapped_stable_equality_in_distribution():
    """Wrapped stable law equals the space-fractional law at time
    2^beta t, to 1e-10, beta in {0.3, 0.5, 0.9}, 64 angles."""
    tol = Tolerance(abs_tol=1e-12)
    for beta in (0.3, 0.5, 0.9):
        diff = wrapped_stable_density(beta, GRID64, 1.0, tol) - space_fractional_density(
            beta, GRID64, 2.0**beta * 1.0, tol
        )
        assert np.max(np.abs(diff)) <= 1e-10


def test_criterion_07_monte_carlo_vs_analytic():
    """Fixed-seed samplers match the analytic laws: (a) wrapped BM
    KS < 0.01 at 1e5 draws; (b) single subordination KS < 0.015;
    (c) double subordination KS < 0.02; (d) planar exit angles from
    radius 1/e KS < 0.015 at 5e4 paths; all four in under 2 minutes."""
    t0 = time.time()
    ang = sample_wrapped_bm(1.0, RngStream(SEED, 5), size=100_000)
    assert ks_statistic(ang, bm_law(1.0).cdf) < 0.01

    s = RngStream(SEED, 7)
    H = sample_stable_subordinator(0.5, 1.0, s, size=100_000)
    assert ks_statistic(sample_wrapped_bm(H, s), space_fractional_law(0.5, 1.0).cdf) < 0.015

    # beta = 1/2 has no certifiable pointwise series; the comparison runs
    # against the CDF-level series at certified tail 1e-4 (invisible at
    # KS scale, where the threshold is 0.02)
    s = RngStream(SEED, 8)
    L = sample_inverse_subordinator(0.5, 1.0, s, size=100_000)
    H = L ** (1.0 / 0.5) * sample_stable_subordinator(0.5, 1.0, s, size=100_000)
    cdf_tol = Tolerance(abs_tol=1e-4)
    ks = ks_statistic(
        sample_wrapped_bm(H, s),
        lambda th: space_time_fractional_cdf(0.5, 0.5, th, 1.0, cdf_tol),
    )
    assert ks < 0.02

    ang = simulate_planar_hit(math.exp(-1.0), RngStream(SEED, 9), step=1e-3, size=50_000)
    assert ks_statistic(ang, lambda th: even_kernel_cdf(th, 1.0)) < 0.015
    assert time.time() - t0 < 120.0


def test_criterion_08_probability_formulas():
    """Even quadrant probability equals the CDF difference to 1e-12 at
    t in {0.2, 1, 5}; odd half-circle probability equals kernel
    quadrature to 1e-8 for n in {1,3}, t in {0.5, 1}; the three
    quadrant-probability expressions agree mutually to 1e-10."""
    for t in (0.2, 1.0, 5.0):
        via_cdf = float(
            even_kernel_cdf(math.pi / 2.0, t) + 1.0 - even_kernel_cdf(3.0 * math.pi / 2.0, t)
        )
        assert abs(even_quadrant_prob(t) - via_cdf) <= 1e-12

    for n in (1, 3):
        for t in (0.5, 1.0):
            ref, _ = integrate.quad(
                lambda th: odd_kernel_density(n, th, t), 0.0, math.pi,
                limit=200, epsabs=1e-12,
            )
            assert abs(odd_half_circle_prob(n, t) - ref) <= 1e-8

    for n, t in ((1, 0.5), (1, 1.0), (2, 0.5), (2, 1.0)):
        f1, f2, f3 = odd_quadrant_forms(n, t)
        assert max(abs(f1 - f2), abs(f2 - f3), abs(f1 - f3)) <= 1e-10


def test_criterion_09_circular_bm_functionals():
    """Max-distance CDF within 3 MC standard errors of a 1e5-path
    double-barrier simulation at (theta,t) in {(1,1), (2,0.5)};
    first-passage density matches -dCDF/dt central differences to 1e-6
    at (1,1); the quadrant bound 1/2 + (2/pi)e^{-t/2} holds on
    t in [0.21, 10]."""
    for (theta, t), sid in (((1.0, 1.0), 54), ((2.0, 0.5), 55)):
        est, se = _double_barrier_survival(theta, t, 100_000, RngStream(SEED, sid))
        assert abs(bm_maxdist_cdf(theta, t) - est) <= 3.0 * se

    h = 1e-4
    central = (bm_maxdist_cdf(1.0, 1.0 - h) - bm_maxdist_cdf(1.0, 1.0 + h)) / (2.0 * h)
    assert abs(bm_first_passage_density(1.0, 1.0) - central) <= 1e-6

    for t in np.linspace(0.21, 10.0, 196):
        bound = 0.5 + (2.0 / math.pi) * math.exp(-float(t) / 2.0)
        assert bm_quadrant_prob(float(t)) <= bound


def test_criterion_10_positivity_time():
    """Order 2 has onset 0; order 4's detected onset has its minimum at
    theta = pi (within 1e-3), the minimum changes sign across the onset,
    and the onset matches the frozen regression constant."""
    assert positivity_time(1) == 0.0
    t_bar = positivity_time(2)
    assert t_bar == pytest.approx(0.6931166485360707, abs=1e-6)
    _, arg = _grid_min(2, t_bar, Tolerance())
    assert min(abs(arg - math.pi), TWO_PI - abs(arg - math.pi)) <= 1e-3
    assert min_value(2, t_bar + 0.01) > 0.0 > min_value(2, t_bar - 0.01)


def test_criterion_11_odd_kernel_limit():
    """kernel_limit_gap strictly decreases along n in {1,2,5,10,50} at
    t in {0.5, 1, 2}: the odd kernels converge to the even one."""
    for t in (0.5, 1.0, 2.0):
        gaps = [kernel_limit_gap(n, t) for n in (1, 2, 5, 10, 50)]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_criterion_12_wrapped_skewed_cauchy_route():
    """The wrapped skewed Cauchy law (n=1, scale sqrt(3)/2, drift 1/2)
    equals the first odd kernel to 1e-8 at t in {0.5, 1}, 64 angles."""
    for t in (0.5, 1.0):
        diff = wrapped_skew_cauchy_density(1, GRID64, t) - odd_kernel_density(1, GRID64, t)
        assert np.max(np.abs(diff)) <= 1e-8


def test_criterion_13_validate_determinism(tmp_path):
    """The validate command with a fixed seed produces byte-identical
    JSON across two consecutive runs, and the report is all-pass."""
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(["validate", "--seed", str(SEED), "--out", str(p1)]) == 0
    assert main(["validate", "--seed", str(SEED), "--out", str(p2)]) == 0
    b1, b2 = p1.read_bytes(), p2.read_bytes()
    assert b1 == b2
    report = json.loads(b1)
    assert report["all_passed"] is True
    assert len(report["criteria"]) == 26
