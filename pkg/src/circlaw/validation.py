"""Self-check suite behind ``circlaw validate``.

Thirteen numbered criteria (letters split a criterion whose parts carry
different thresholds), each reduced to one measured number against one
threshold. Monte Carlo criteria draw from dedicated, fixed streams so a
report is a pure function of (seed, tol); the determinism criterion
re-runs every seeded criterion on fresh identically-seeded streams and
byte-compares the serialized values.
"""

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .brownian import (
    bm_first_passage_density,
    bm_law,
    bm_maxdist_cdf,
    bm_quadrant_prob,
)
from .fractional import (
    space_fractional_density,
    space_fractional_half_closed,
    space_fractional_law,
    space_time_fractional_cdf,
    time_fractional_law,
    wrapped_stable_density,
)
from .harmonic import TWO_PI, fourier_coeffs
from .kernels import (
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
from .montecarlo import (
    RngStream,
    ks_statistic,
    sample_inverse_subordinator,
    sample_stable_subordinator,
    sample_wrapped_bm,
    simulate_planar_hit,
)
from .pseudo import (
    _grid_min,
    even_circle_density_wrapped,
    even_circle_law,
    min_value,
    positivity_time,
)
from .special import Tolerance, mittag_leffler

__all__ = ["CriterionResult", "run_suite", "report_json", "DEFAULT_SEED", "GROUPS"]

DEFAULT_SEED = 314159

# order-4 positivity onset, frozen at first release (root of the grid
# minimum in t; bisection and a direct root agree to 5e-7)
T_BAR_ORDER4 = 0.6931166485360707

GRID64 = np.arange(64) * (TWO_PI / 64.0)

GROUPS = ("kernels", "pseudo", "special", "fractional", "montecarlo", "brownian", "determinism")


@dataclass(frozen=True)
class CriterionResult:
    id: str
    group: str
    description: str
    measured: float
    threshold: float
    passed: bool
    flagged: bool = False


def _c1():
    tol = Tolerance(abs_tol=1e-13)
    worst = 0.0
    for t in (0.25, 1.0, 4.0):
        diff = even_kernel_law(t, tol).density(GRID64) - even_kernel_density(GRID64, t)
        worst = max(worst, float(np.max(np.abs(diff))))
        for n in (1, 2, 5):
            diff = odd_kernel_law(n, t, tol).density(GRID64) - odd_kernel_density(n, GRID64, t)
            worst = max(worst, float(np.max(np.abs(diff))))
    return worst


def _c2():
    worst = 0.0
    for n in (1, 2, 3):
        for t in (0.3, 1.0, 3.0):
            spectral = even_circle_law(n, t).density(GRID64)
            wrapped = np.array(
                [even_circle_density_wrapped(n, float(th), t) for th in GRID64]
            )
            worst = max(worst, float(np.max(np.abs(spectral - wrapped))))
    return worst


def _c3():
    law = even_circle_law(2, 1.0, Tolerance(abs_tol=1e-13))
    a, b = fourier_coeffs(law.density, 5, 512)
    k = np.arange(1.0, 6.0)
    want = np.exp(-(k**4)) / math.pi
    return float(max(np.max(np.abs(a - want)), np.max(np.abs(b))))


def _c4a():
    xs = (0.1, 0.5, 1.0, 2.0, 5.0)
    return max(
        abs(mittag_leffler(0.5, -x) - math.exp(x * x) * math.erfc(x)) for x in xs
    )


def _c4b():
    xs = (0.1, 0.5, 1.0, 2.0, 5.0)
    return max(abs(mittag_leffler(1.0, -x) - math.exp(-x)) for x in xs)


def _c5a():
    frac = time_fractional_law(2, 1.0, 0.7)
    plain = even_circle_law(2, 0.7)
    same = (
        frac.a0 == plain.a0
        and np.array_equal(frac.cos_coeffs, plain.cos_coeffs)
        and np.array_equal(frac.sin_coeffs, plain.sin_coeffs)
    )
    return 0.0 if same else 1.0


def _c5b():
    tol = Tolerance(abs_tol=1e-13)
    diff = space_fractional_law(1.0, 1.0, tol).density(GRID64) - bm_law(1.0, tol).density(GRID64)
    return float(np.max(np.abs(diff)))


def _c5c():
    tol = Tolerance(abs_tol=1e-12)
    diff = space_fractional_density(0.5, GRID64, 1.0, tol) - space_fractional_half_closed(
        GRID64, 1.0
    )
    return float(np.max(np.abs(diff)))


def _c6():
    tol = Tolerance(abs_tol=1e-12)
    worst = 0.0
    for beta in (0.3, 0.5, 0.9):
        diff = wrapped_stable_density(beta, GRID64, 1.0, tol) - space_fractional_density(
            beta, GRID64, 2.0**beta * 1.0, tol
        )
        worst = max(worst, float(np.max(np.abs(diff))))
    return worst


# seeded criteria: fixed stream ids keep them independent of each other
# and reproducible one at a time

def _c7a(seed):
    ang = sample_wrapped_bm(1.0, RngStream(seed, 50), size=100_000)
    return ks_statistic(ang, bm_law(1.0).cdf)


def _c7b(seed):
    s = RngStream(seed, 51)
    H = sample_stable_subordinator(0.5, 1.0, s, size=100_000)
    ang = sample_wrapped_bm(H, s)
    return ks_statistic(ang, space_fractional_law(0.5, 1.0).cdf)


def _c7c(seed):
    # beta = 1/2 has no certifiable pointwise series, so the comparison
    # runs against the CDF-level series; its tail decays like c/K, so
    # the CDF is certified to 1e-4 (~4e3 terms), invisible at KS scale
    s = RngStream(seed, 52)
    n = 30_000
    L = sample_inverse_subordinator(0.5, 1.0, s, size=n)
    H = L ** (1.0 / 0.5) * sample_stable_subordinator(0.5, 1.0, s, size=n)
    ang = sample_wrapped_bm(H, s)
    tol = Tolerance(abs_tol=1e-4)
    return ks_statistic(ang, lambda th: space_time_fractional_cdf(0.5, 0.5, th, 1.0, tol))


def _c7d(seed):
    ang = simulate_planar_hit(math.exp(-1.0), RngStream(seed, 53), step=1e-3, size=50_000)
    return ks_statistic(ang, lambda th: even_kernel_cdf(th, 1.0))


def _c8a():
    worst = 0.0
    for t in (0.2, 1.0, 5.0):
        via_cdf = even_kernel_cdf(math.pi / 2.0, t) + 1.0 - even_kernel_cdf(3.0 * math.pi / 2.0, t)
        worst = max(worst, abs(even_quadrant_prob(t) - float(via_cdf)))
    return worst


def _c8b():
    worst = 0.0
    for n in (1, 3):
        for t in (0.5, 1.0):
            ref, _ = integrate.quad(
                lambda th: odd_kernel_density(n, th, t), 0.0, math.pi,
                limit=200, epsabs=1e-12,
            )
            worst = max(worst, abs(odd_half_circle_prob(n, t) - ref))
    return worst


def _c8c():
    worst = 0.0
    for n, t in ((1, 0.5), (1, 1.0), (2, 0.5), (2, 1.0)):
        f1, f2, f3 = odd_quadrant_forms(n, t)
        worst = max(worst, abs(f1 - f2), abs(f2 - f3), abs(f1 - f3))
    return worst


def _double_barrier_survival(theta, t, n_paths, rng, n_steps=400):
    """P(sup_{s<=t} |W_s| < theta) by Euler paths with per-step
    Brownian-bridge crossing weights (removes the discretization bias)."""
    gen = rng.generator
    dt = t / n_steps
    sq = math.sqrt(dt)
    w_all = np.empty(n_paths)
    done = 0
    while done < n_paths:
        m = min(50_000, n_paths - done)
        x = np.zeros(m)
        w = np.ones(m)
        for _ in range(n_steps):
            xn = x + sq * gen.standard_normal(m)
            w[np.abs(xn) >= theta] = 0.0
            up = np.exp(-2.0 * (theta - x) * (theta - xn) / dt)
            dn = np.exp(-2.0 * (theta + x) * (theta + xn) / dt)
            w *= np.where(w > 0.0, (1.0 - up) * (1.0 - dn), 0.0)
            x = xn
        w_all[done : done + m] = w
        done += m
    est = float(w_all.mean())
    se = float(w_all.std(ddof=1) / math.sqrt(n_paths))
    return est, se


def _c9a(seed):
    worst = 0.0
    for (theta, t), sid in (((1.0, 1.0), 54), ((2.0, 0.5), 55)):
        est, se = _double_barrier_survival(theta, t, 100_000, RngStream(seed, sid))
        worst = max(worst, abs(bm_maxdist_cdf(theta, t) - est) / se)
    return worst


def _c9b():
    h = 1e-4
    central = (bm_maxdist_cdf(1.0, 1.0 - h) - bm_maxdist_cdf(1.0, 1.0 + h)) / (2.0 * h)
    return abs(bm_first_passage_density(1.0, 1.0) - central)


def _c9c():
    worst = -math.inf
    for t in np.linspace(0.21, 10.0, 196):
        bound = 0.5 + (2.0 / math.pi) * math.exp(-float(t) / 2.0)
        worst = max(worst, bm_quadrant_prob(float(t)) - bound)
    return worst


def _c10():
    t1 = positivity_time(1)
    t2 = positivity_time(2)
    a = max(abs(t1), abs(t2 - T_BAR_ORDER4))
    _, arg = _grid_min(2, t2, Tolerance())
    b = min(abs(arg - math.pi), TWO_PI - abs(arg - math.pi))
    # both margins negative exactly when the sign flips across t2
    c = max(min_value(2, t2 - 0.01), -min_value(2, t2 + 0.01))
    return a, b, c


def _c11():
    worst = -math.inf
    for t in (0.5, 1.0, 2.0):
        gaps = [kernel_limit_gap(n, t) for n in (1, 2, 5, 10, 50)]
        worst = max(worst, float(np.max(np.diff(gaps))))
    return worst


def _c12():
    worst = 0.0
    for t in (0.5, 1.0):
        diff = wrapped_skew_cauchy_density(1, GRID64, t) - odd_kernel_density(1, GRID64, t)
        worst = max(worst, float(np.max(np.abs(diff))))
    return worst


def _seeded_values(seed):
    return (_c7a(seed), _c7b(seed), _c7c(seed), _c7d(seed), _c9a(seed))


def _c13(seed, first_pass):
    rerun = _seeded_values(seed)
    return float(sum(repr(x) != repr(y) for x, y in zip(first_pass, rerun)))


def _odd_route_diagnostic():
    from .errors import RouteDivergenceWarning
    from .pseudo import odd_circle_density_routes

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RouteDivergenceWarning)
        wrapped, abel = odd_circle_density_routes(1, 0.5, 1.0)
    return abs(wrapped - abel)


def run_suite(seed=DEFAULT_SEED, tol=1e-10, only=None):
    """Run the criteria (optionally one group) and return CriterionResult
    rows. KS thresholds can only be loosened: threshold = max(pinned, tol)."""
    if only is not None and only not in GROUPS:
        raise ValueError(f"unknown group {only!r}; choose from {', '.join(GROUPS)}")
    ks = lambda pinned: max(pinned, tol)
    results = []

    def add(cid, group, description, measured, threshold, passed=None, flagged=False):
        if only is not None and group != only:
            return False
        if passed is None:
            passed = bool(measured < threshold)
        results.append(
            CriterionResult(cid, group, description, float(measured), float(threshold), bool(passed), flagged)
        )
        return True

    def want(group):
        return only is None or group == only

    if want("kernels"):
        add("1", "kernels", "kernel series equals its closed form (both parities)", _c1(), 1e-12)
    if want("pseudo"):
        add("2", "pseudo", "even circle law: spectral route equals wrapped line route", _c2(), 1e-6)
        add("3", "pseudo", "Fourier projection of the order-4 law recovers exp(-k^4 t)/pi", _c3(), 1e-8)
    if want("special"):
        add("4a", "special", "Mittag-Leffler at nu=1/2 equals exp(x^2) erfc(x)", _c4a(), 1e-9)
        add("4b", "special", "Mittag-Leffler at nu=1 equals exp(-x)", _c4b(), 1e-12)
    if want("fractional"):
        m5a = _c5a()
        add("5a", "fractional", "time-fractional law at nu=1 equals the even circle law exactly",
            m5a, 0.0, passed=(m5a == 0.0))
        add("5b", "fractional", "space-fractional law at beta=1 equals the circular BM density", _c5b(), 1e-12)
        add("5c", "fractional", "space-fractional series at beta=1/2 equals its closed form", _c5c(), 1e-10)
        add("6", "fractional", "wrapped stable law equals the space-fractional law at rescaled time", _c6(), 1e-10)
    seeded = None
    if want("montecarlo"):
        seeded = _seeded_values(seed)
        add("7a", "montecarlo", "wrapped Brownian sampler vs analytic CDF (KS)", seeded[0], ks(0.01))
        add("7b", "montecarlo", "single subordination B(H(t)) vs space-fractional CDF (KS)", seeded[1], ks(0.015))
        add("7c", "montecarlo", "double subordination B(H(L(t))) vs space-time CDF (KS)", seeded[2], ks(0.02))
        add("7d", "montecarlo", "planar exit angle from radius 1/e vs even kernel CDF (KS)", seeded[3], ks(0.015))
    if want("kernels"):
        add("8a", "kernels", "even quadrant probability equals the CDF difference", _c8a(), 1e-12)
        add("8b", "kernels", "odd half-circle probability equals kernel quadrature", _c8b(), 1e-8)
        add("8c", "kernels", "the three quadrant-probability expressions agree mutually", _c8c(), 1e-10)
    if want("brownian"):
        m9a = _c9a(seed) if seeded is None else seeded[4]
        add("9a", "brownian", "max-distance CDF vs double-barrier Monte Carlo (z-score)", m9a, 3.0)
        add("9b", "brownian", "first-passage density equals -dCDF/dt (central difference)", _c9b(), 1e-6)
        m9c = _c9c()
        add("9c", "brownian", "quadrant probability bound 1/2 + (2/pi) e^{-t/2} holds on [0.21, 10]",
            m9c, 0.0, passed=(m9c <= 0.0))
    if want("pseudo"):
        m10a, m10b, m10c = _c10()
        add("10a", "pseudo", "positivity onset: 0 at order 2; order-4 value matches the frozen constant", m10a, 1e-6)
        add("10b", "pseudo", "order-4 minimum at the onset sits at theta = pi", m10b, 1e-3)
        add("10c", "pseudo", "order-4 minimum changes sign across the onset time",
            m10c, 0.0, passed=(m10c < 0.0))
    if want("kernels"):
        m11 = _c11()
        add("11", "kernels", "odd-to-even kernel gap strictly decreases in the order", m11, 0.0, passed=(m11 < 0.0))
        add("12", "kernels", "wrapped skewed Cauchy equals the first odd kernel", _c12(), 1e-8)
    if want("determinism"):
        base = seeded if seeded is not None else _seeded_values(seed)
        m13 = _c13(seed, base)
        add("13", "determinism", "seeded Monte Carlo criteria reproduce byte-identical values on re-run",
            m13, 1.0)
    if want("pseudo"):
        d = _odd_route_diagnostic()
        add("D1", "pseudo",
            "odd signed density: wrapped vs Abel route divergence (scheme-dependent; diagnostic only)",
            d, 1e-4, passed=True, flagged=bool(d > 1e-4))
    return results


def report_json(results, seed, tol):
    """Serialize a run deterministically (fixed key order, no timing)."""
    obj = {
        "seed": int(seed),
        "tol": float(tol),
        "all_passed": all(r.passed for r in results),
        "criteria": [
            {
                "id": r.id,
                "group": r.group,
                "description": r.description,
                "measured": r.measured,
                "threshold": r.threshold,
                "passed": r.passed,
                "flagged": r.flagged,
            }
            for r in results
        ],
    }
    return json.dumps(obj, indent=2) + "\n"
