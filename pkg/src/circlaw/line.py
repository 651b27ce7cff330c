"""Fundamental solutions of higher-order heat-type equations on the line.

d/dt u = c (d/dx)^p u with p = 2n (c = (-1)^{n+1}) or p = 2n+1
(c = (-1)^n). These are the quadrature oracles that every wrapped
circular law is validated against. The even solutions are the cosine
transforms of exp(-xi^{2n} t); the odd ones additionally carry the
rotation/damping pair a = cos(pi/(2(2n+1))), b = sin(pi/(2(2n+1))).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

from .errors import ConvergenceError, DomainError
from .special import DEFAULT_TOL, GenGammaParams, Tolerance, airy_ai, gen_gamma_mean

__all__ = [
    "OrderParams",
    "line_density_even",
    "line_density_even_gamma",
    "line_density_third",
    "line_density_odd_gamma",
    "line_density_odd_at_zero",
    "skew_cauchy_density",
]

# below this the even quadrature cannot resolve the near-delta solution
_T_FLOOR = 1e-6
# largest exponent budget before float64 loses the damped-oscillation cancellation
_CANCEL_BUDGET = 35.0


@dataclass(frozen=True)
class OrderParams:
    """Order descriptor for the line equations.

    order = 2n (parity 'even') or 2n+1 (parity 'odd'); c is the sign
    constant of the equation; the odd orders carry
    a = cos(pi/(2(2n+1))), b = sin(pi/(2(2n+1))) with a^2 + b^2 = 1.
    """

    order: int
    parity: str
    n: int
    c: float
    a: float | None = None
    b: float | None = None

    def __post_init__(self):
        if self.order < 2:
            raise DomainError("order must be >= 2")
        if self.parity not in ("even", "odd"):
            raise DomainError("parity must be 'even' or 'odd'")

    @classmethod
    def even(cls, n: int) -> "OrderParams":
        if n < 1:
            raise DomainError("n must be >= 1")
        return cls(order=2 * n, parity="even", n=n, c=float((-1) ** (n + 1)))

    @classmethod
    def odd(cls, n: int) -> "OrderParams":
        if n < 1:
            raise DomainError("n must be >= 1")
        half_angle = math.pi / (2.0 * (2 * n + 1))
        return cls(
            order=2 * n + 1,
            parity="odd",
            n=n,
            c=float((-1) ** n),
            a=math.cos(half_angle),
            b=math.sin(half_angle),
        )


def _even_cutoff(n: int, t: float, target: float) -> float:
    """Upper limit Xi with int_Xi^inf e^{-xi^{2n} t} dxi <= target (certified)."""
    p = 2 * n
    xi = (max(math.log(1.0 / target), 1.0) / t) ** (1.0 / p) + 1.0
    for _ in range(40):
        tail = math.exp(-(xi**p) * t) / (p * t * xi ** (p - 1))
        if tail <= target:
            return xi
        xi *= 1.25
    raise ConvergenceError("could not certify the quadrature cutoff")


def line_density_even(params: OrderParams, x: float, t: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """u_{2n}(x, t) = (1/pi) int_0^inf cos(xi x) e^{-xi^{2n} t} dxi.

    Sign-varying for n >= 2. Oscillatory weight handled by QAWO panels
    sized to the cosine wavelength; the cutoff tail is certified by the
    monotone envelope e^{-xi^{2n} t}.
    """
    if params.parity != "even":
        raise DomainError("params must describe an even order")
    if t < _T_FLOOR:
        raise ConvergenceError(f"t below the documented floor {_T_FLOOR:g}")
    p = 2 * params.n
    target = tol.abs_tol * math.pi / 4.0
    xi_max = _even_cutoff(params.n, t, target)
    eps = tol.abs_tol * math.pi / 4.0

    def f(xi):
        return math.exp(-(xi**p) * t)

    if x == 0.0:
        val, _ = integrate.quad(f, 0.0, xi_max, epsabs=eps, epsrel=1e-13, limit=200)
    else:
        val, _ = integrate.quad(
            f, 0.0, xi_max, weight="cos", wvar=abs(x), epsabs=eps, epsrel=1e-13, limit=400
        )
    return val / math.pi


def line_density_even_gamma(
    params: OrderParams, x: float, t: float, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Generalized-gamma representation u_{2n}(x,t) = (1/(pi x)) E[sin(x G)].

    G has density 2n g^{2n-1} t e^{-g^{2n} t}. Deterministic quadrature,
    not Monte Carlo. x = 0 is a removable singularity of the
    representation; use line_density_even there.
    """
    if params.parity != "even":
        raise DomainError("params must describe an even order")
    if x == 0.0:
        raise DomainError("representation is singular at x = 0; use line_density_even")
    if t <= 0.0:
        raise DomainError("t must be positive")
    p = 2 * params.n
    ax = abs(x)
    target = tol.abs_tol * math.pi * ax / 4.0
    g_max = (max(math.log(1.0 / min(target, 0.5)), 1.0) / t) ** (1.0 / p) + 1.0

    def f(g):
        return p * g ** (p - 1) * t * math.exp(-(g**p) * t)

    val, _ = integrate.quad(
        f, 0.0, g_max, weight="sin", wvar=ax, epsabs=target, epsrel=1e-13, limit=400
    )
    # sin(x g)/x is even in x, so the |x| evaluation covers both signs
    return val / (math.pi * ax)


def line_density_third(x: float, t: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """Third-order solution (3t)^(-1/3) Ai(x (3t)^(-1/3))."""
    if t <= 0.0:
        raise DomainError("t must be positive")
    scale = (3.0 * t) ** (-1.0 / 3.0)
    return scale * airy_ai(x * scale, tol)


def line_density_odd_gamma(
    params: OrderParams, x: float, t: float, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Odd-order solution via u_{2n+1}(x,t) = (1/(pi x)) E[e^{-b x G} sin(a x G)].

    G is generalized gamma with shape 2n+1 and rate t. For x < 0 the
    integrand carries the growing factor e^{b|x|g} against the
    stretched-exponential tail; beyond a peak-exponent budget of ~35 the
    cancellation is unrepresentable in float64 and the call refuses.
    """
    if params.parity != "odd":
        raise DomainError("params must describe an odd order")
    if x == 0.0:
        raise DomainError("representation is singular at x = 0")
    if t <= 0.0:
        raise DomainError("t must be positive")
    g = 2 * params.n + 1
    a, b = params.a, params.b
    L = math.log(1.0 / min(tol.abs_tol * math.pi * abs(x) / 4.0, 0.5)) + 3.0
    pts = None
    if x < 0.0:
        y_star = (b * abs(x) / (g * t)) ** (1.0 / (g - 1))
        peak_exponent = b * abs(x) * y_star * (1.0 - 1.0 / g)
        if peak_exponent > _CANCEL_BUDGET:
            raise ConvergenceError(
                "cancellation budget exceeded at strongly negative x "
                f"(peak exponent {peak_exponent:.1f} > {_CANCEL_BUDGET:g})"
            )
        g_max = max(2.0 * y_star, (4.0 * L / t) ** (1.0 / g))
        if y_star > 0.0:
            pts = [y_star]
    else:
        g_max = (L / t) ** (1.0 / g) + 1.0

    def f(u):
        return (
            math.exp(-b * x * u - (u**g) * t)
            * math.sin(a * x * u)
            * g
            * u ** (g - 1)
            * t
        )

    val, _ = integrate.quad(
        f, 0.0, g_max, points=pts, epsabs=tol.abs_tol * math.pi * abs(x) / 4.0,
        epsrel=1e-12, limit=400,
    )
    return val / (math.pi * x)


def line_density_odd_at_zero(params: OrderParams, t: float) -> float:
    """Limit x -> 0 of the odd representation: a E[G] / pi."""
    if params.parity != "odd":
        raise DomainError("params must describe an odd order")
    return params.a * gen_gamma_mean(GenGammaParams(2 * params.n + 1, t)) / math.pi


def skew_cauchy_density(params: OrderParams, x: float, t: float) -> float:
    """Skewed Cauchy limit law t a / (pi [(x + t b)^2 + t^2 a^2])."""
    if params.parity != "odd":
        raise DomainError("params must describe an odd order")
    if t <= 0.0:
        raise DomainError("t must be positive")
    a, b = params.a, params.b
    return t * a / (math.pi * ((x + t * b) ** 2 + t * t * a * a))
