"""Fractional circular laws: Caputo time order, spectral space order,
wrapped symmetric stable laws, and their equalities in law.

Coefficient decay drives everything here. Space-fractional and wrapped
stable coefficients decay like stretched exponentials and their tails
are certified by an integral bound; time-fractional and space-time
coefficients decay only algebraically, through the complete-monotone
bound E_nu(-y) <= 1/(1 + y/Gamma(1+nu)). A tolerance the algebraic
tail cannot certify within the term budget raises instead of silently
truncating.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from .errors import ConvergenceError, DomainError, SlowDecayWarning
from .harmonic import TWO_PI, HarmonicLaw, _trig_sum
from .pseudo import even_circle_law
from .special import DEFAULT_TOL, mittag_leffler_many

__all__ = [
    "FracParams",
    "time_fractional_law",
    "space_fractional_law",
    "space_fractional_density",
    "space_fractional_half_closed",
    "frac_laplacian_apply",
    "wrapped_stable_law",
    "wrapped_stable_density",
    "space_time_fractional_density",
    "space_time_fractional_cdf",
]

_SLOW_DECAY_K = 100_000


def _check_unit(name, x):
    if not (0.0 < x <= 1.0):
        raise DomainError(f"{name} must lie in (0, 1]")


@dataclass(frozen=True)
class FracParams:
    """Validated pair of fractional orders."""

    nu: float  # Caputo time order
    beta: float  # spatial stability / Laplacian order

    def __post_init__(self):
        _check_unit("nu", self.nu)
        _check_unit("beta", self.beta)


def time_fractional_law(n, nu, t, tol=DEFAULT_TOL):
    """Harmonic carrier with coefficients E_nu(-k^{2n} t^nu)/pi.

    nu = 1 collapses to the even-order circular law exactly. For nu < 1
    the coefficients decay like k^{-2n}, so the certified cutoff grows
    as tol^{-1/(2n-1)}; an unaffordable cutoff raises with advice.
    """
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise DomainError("n must be an integer >= 1")
    _check_unit("nu", nu)
    if not (t > 0.0):
        raise DomainError("t must be positive")
    if nu == 1.0:
        return even_circle_law(n, t, tol)
    # sum_{k>K} E_nu(-k^{2n} t^nu) <= Gamma(1+nu) t^-nu sum k^{-2n}
    #                              <= c K^{1-2n}/(2n-1), c = Gamma(1+nu) t^-nu
    c = math.gamma(1.0 + nu) * t ** (-nu) / math.pi
    K = int(math.ceil((c / ((2 * n - 1) * tol.abs_tol)) ** (1.0 / (2 * n - 1))))
    K = max(K, 1)
    if K > tol.max_terms:
        raise ConvergenceError(
            f"time-fractional tail needs {K} terms for tol={tol.abs_tol}; "
            "loosen the tolerance or work at the CDF level"
        )
    k = np.arange(1.0, K + 1.0)
    coef = mittag_leffler_many(nu, -(k ** (2 * n)) * t**nu, tol) / math.pi
    return HarmonicLaw(
        a0=1.0 / TWO_PI,
        cos_coeffs=coef,
        sin_coeffs=np.zeros(K),
        tail_bound=c * K ** (1 - 2 * n) / (2 * n - 1),
        meta=f"time-fractional circular law, n={n}, nu={nu!r}, t={t!r}",
    )


def _stretched_tail(c, p, K):
    # sum_{k>K} e^{-c k^p} <= int_K^inf e^{-c x^p} dx, integrand decreasing
    s = 1.0 / p
    return s * c ** (-s) * sp.gamma(s) * sp.gammaincc(s, c * K**p)


def _stretched_cutoff(c, p, tol, what):
    if _stretched_tail(c, p, 1) / math.pi <= tol.abs_tol:
        return 1
    K = 1
    while _stretched_tail(c, p, K) / math.pi > tol.abs_tol:
        K *= 2
        if K > 2 * tol.max_terms:
            raise ConvergenceError(
                f"{what} coefficients decay too slowly for tol={tol.abs_tol} "
                f"within {tol.max_terms} terms; loosen the tolerance"
            )
    lo, hi = K // 2, K
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if _stretched_tail(c, p, mid) / math.pi > tol.abs_tol:
            lo = mid
        else:
            hi = mid
    if hi > tol.max_terms:
        raise ConvergenceError(
            f"{what} needs {hi} terms for tol={tol.abs_tol}; loosen the tolerance"
        )
    if hi > _SLOW_DECAY_K:
        warnings.warn(
            f"{what} truncation uses {hi} terms (subexponential decay)",
            SlowDecayWarning,
            stacklevel=3,
        )
    return hi


def space_fractional_law(beta, t, tol=DEFAULT_TOL):
    """Harmonic carrier with coefficients e^{-(k^2/2)^beta t}/pi."""
    _check_unit("beta", beta)
    if not (t > 0.0):
        raise DomainError("t must be positive")
    c = t / 2.0**beta  # exponent is c k^{2 beta}
    K = _stretched_cutoff(c, 2.0 * beta, tol, "space-fractional law")
    k = np.arange(1.0, K + 1.0)
    return HarmonicLaw(
        a0=1.0 / TWO_PI,
        cos_coeffs=np.exp(-((k * k / 2.0) ** beta) * t) / math.pi,
        sin_coeffs=np.zeros(K),
        tail_bound=_stretched_tail(c, 2.0 * beta, K) / math.pi,
        meta=f"space-fractional circular law, beta={beta!r}, t={t!r}",
    )


def space_fractional_density(beta, theta, t, tol=DEFAULT_TOL):
    """Density of the space-fractional circular law (series route)."""
    return space_fractional_law(beta, t, tol).density(theta)


def space_fractional_half_closed(theta, t):
    """Closed form at beta = 1/2: a geometric (Poisson-type) kernel.

    Cross-check oracle only; the series is the production path.
    """
    if not (t > 0.0):
        raise DomainError("t must be positive")
    th = np.asarray(theta, dtype=float)
    q = math.exp(-t * math.sqrt(2.0))  # = r^2 with r = e^{-t/sqrt(2)}
    r = math.exp(-t / math.sqrt(2.0))
    val = (1.0 - q) / (TWO_PI * (1.0 + q - 2.0 * r * np.cos(th)))
    return float(val) if th.ndim == 0 else val


def frac_laplacian_apply(beta, law, negate=False):
    """Spectral fractional Laplacian on a harmonic carrier.

    Maps (a_k, b_k) to ((k^2/2)^beta a_k, (k^2/2)^beta b_k) and a0 to 0,
    i.e. the positive-semidefinite operator (-(1/2) d^2/dtheta^2)^beta.
    negate=True applies the generator, which carries the opposite sign.
    """
    _check_unit("beta", beta)
    k = np.arange(1.0, law.n_terms + 1.0)
    eig = (k * k / 2.0) ** beta
    sign = -1.0 if negate else 1.0
    return HarmonicLaw(
        a0=0.0,
        cos_coeffs=sign * eig * law.cos_coeffs,
        sin_coeffs=sign * eig * law.sin_coeffs,
        tail_bound=0.0,
        meta=f"fractional Laplacian (beta={beta!r}) of [{law.meta}]",
    )


def wrapped_stable_law(beta, t, tol=DEFAULT_TOL):
    """Harmonic carrier with coefficients e^{-k^{2 beta} t}/pi: the
    wrapped symmetric stable law of index 2 beta."""
    _check_unit("beta", beta)
    if not (t > 0.0):
        raise DomainError("t must be positive")
    K = _stretched_cutoff(t, 2.0 * beta, tol, "wrapped stable law")
    k = np.arange(1.0, K + 1.0)
    return HarmonicLaw(
        a0=1.0 / TWO_PI,
        cos_coeffs=np.exp(-(k ** (2.0 * beta)) * t) / math.pi,
        sin_coeffs=np.zeros(K),
        tail_bound=_stretched_tail(t, 2.0 * beta, K) / math.pi,
        meta=f"wrapped symmetric stable law, beta={beta!r}, t={t!r}",
    )


def wrapped_stable_density(beta, theta, t, tol=DEFAULT_TOL):
    """Density of the wrapped symmetric stable law.

    Equal in law to the space-fractional density at time 2^beta t.
    """
    return wrapped_stable_law(beta, t, tol).density(theta)


def _space_time_coeffs(nu, beta, t, K, tol):
    k = np.arange(1.0, K + 1.0)
    return mittag_leffler_many(nu, -((k * k / 2.0) ** beta) * t**nu, tol) / math.pi


def space_time_fractional_density(nu, beta, theta, t, tol=DEFAULT_TOL):
    """Density with coefficients E_nu(-(k^2/2)^beta t^nu)/pi.

    For nu < 1 the coefficients decay like k^{-2 beta}: the pointwise
    series is absolutely summable only for beta > 1/2 (at beta = 1/2
    the density has a genuine logarithmic singularity at theta = 0).
    Below that, evaluate distributions through
    space_time_fractional_cdf, whose extra 1/k always converges.
    """
    _check_unit("nu", nu)
    _check_unit("beta", beta)
    if not (t > 0.0):
        raise DomainError("t must be positive")
    if nu == 1.0:
        return space_fractional_density(beta, theta, t, tol)
    if beta == 1.0:
        # E_nu(-(k^2/2) t^nu) = E_nu(-k^2 (t 2^{-1/nu})^nu)
        return time_fractional_law(1, nu, t * 2.0 ** (-1.0 / nu), tol).density(theta)
    if beta <= 0.5:
        raise ConvergenceError(
            "pointwise space-time series diverges for beta <= 1/2 when "
            "nu < 1; use space_time_fractional_cdf"
        )
    c = math.gamma(1.0 + nu) * t ** (-nu) * 2.0**beta / math.pi
    K = max(1, int(math.ceil((c / ((2 * beta - 1) * tol.abs_tol)) ** (1.0 / (2 * beta - 1)))))
    if K > tol.max_terms:
        raise ConvergenceError(
            f"space-time density tail needs {K} terms for tol={tol.abs_tol}; "
            "loosen the tolerance or use space_time_fractional_cdf"
        )
    coef = _space_time_coeffs(nu, beta, t, K, tol)
    law = HarmonicLaw(
        a0=1.0 / TWO_PI,
        cos_coeffs=coef,
        sin_coeffs=np.zeros(K),
        tail_bound=c * K ** (1 - 2 * beta) / (2 * beta - 1),
        meta=f"space-time fractional law, nu={nu!r}, beta={beta!r}, t={t!r}",
    )
    return law.density(theta)


def space_time_fractional_cdf(nu, beta, theta, t, tol=DEFAULT_TOL):
    """CDF-level series theta/(2 pi) + (1/pi) sum E_nu(...) sin(k theta)/k.

    The extra 1/k makes the tail ~ K^{-2 beta}, certifiable for every
    beta in (0, 1], which is what distribution-level comparisons need.
    """
    _check_unit("nu", nu)
    _check_unit("beta", beta)
    if not (t > 0.0):
        raise DomainError("t must be positive")
    if nu == 1.0:
        return space_fractional_law(beta, t, tol).cdf(theta)
    if beta == 1.0:
        return time_fractional_law(1, nu, t * 2.0 ** (-1.0 / nu), tol).cdf(theta)
    th = np.asarray(theta, dtype=float)
    if np.any(th < -1e-9) or np.any(th > TWO_PI + 1e-9):
        raise DomainError("cdf argument must lie in [0, 2 pi]")
    c = math.gamma(1.0 + nu) * t ** (-nu) * 2.0**beta / math.pi
    K = max(1, int(math.ceil((c / (2 * beta * tol.abs_tol)) ** (1.0 / (2 * beta)))))
    if K > tol.max_terms:
        raise ConvergenceError(
            f"space-time CDF tail needs {K} terms for tol={tol.abs_tol}; "
            "loosen the tolerance"
        )
    coef = _space_time_coeffs(nu, beta, t, K, tol)
    out = _trig_sum(
        1.0 / TWO_PI,
        coef,
        np.zeros(K),
        np.clip(np.atleast_1d(th), 0.0, TWO_PI),
        weight_inv_k=True,
    )
    return float(out[0]) if th.ndim == 0 else out
