"""Monte Carlo engine: the probabilistic route to every analytic law here.

One-sided stable subordinators (Kanter transformation), their inverses
(inverse-scaling identity), wrapped Brownian motion, planar-Brownian
exit angles, and Kolmogorov-Smirnov comparison utilities. Sampling is
deterministic per (seed, stream_id); distinct stream ids are
statistically independent substreams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .harmonic import TWO_PI, GridDensity

__all__ = [
    "RngStream",
    "McReport",
    "sample_stable_subordinator",
    "sample_inverse_subordinator",
    "sample_wrapped_bm",
    "simulate_planar_hit",
    "ks_statistic",
    "histogram",
    "mc_report",
]


@dataclass(frozen=True)
class RngStream:
    """Reproducible named substream of randomness.

    (seed, stream_id) fixes the sequence exactly; distinct stream ids
    spawn independent child sequences of the same seed. The generator
    is created once and advances as it is consumed, so a stream must
    not be shared between concurrent samplers.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if int(v) != v or not 0 <= int(v) < 2**64:
                raise DomainError(f"{name} must be a nonnegative 64-bit integer")
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        object.__setattr__(self, "_gen", np.random.Generator(np.random.PCG64(ss)))

    @property
    def generator(self) -> np.random.Generator:
        return self._gen


def _generator(rng):
    return getattr(rng, "generator", rng)


def _check_size(size):
    if size is None:
        return 1
    n = int(size)
    if n < 1:
        raise DomainError("size must be positive")
    return n


def sample_stable_subordinator(nu: float, t: float, rng, size: int | None = None):
    """Draw H(t) with Laplace transform E e^{-lam H(t)} = e^{-t lam^nu}.

    Kanter's transformation: with U ~ Uniform(0,1) and W ~ Exp(1),

        A(u) = sin((1-nu) pi u) sin(nu pi u)^{nu/(1-nu)} / sin(pi u)^{1/(1-nu)},
        H(1) = (A(U)/W)^{(1-nu)/nu},

    and time enters through stable scaling H(t) = t^{1/nu} H(1).
    nu = 1 is the degenerate subordinator H(t) = t, drawn exactly.
    """
    if not 0.0 < nu <= 1.0:
        raise DomainError("nu must lie in (0, 1]")
    if not t > 0.0:
        raise DomainError("t must be positive")
    n = _check_size(size)
    if nu == 1.0:
        out = np.full(n, float(t))
        return float(out[0]) if size is None else out
    gen = _generator(rng)
    # U at exactly 0 or 1 would 0/0 the transform; one clipped ulp is harmless
    U = np.clip(gen.uniform(0.0, 1.0, n), 1e-16, 1.0 - 1e-16)
    W = gen.standard_exponential(n)
    A = (
        np.sin((1.0 - nu) * math.pi * U)
        * np.sin(nu * math.pi * U) ** (nu / (1.0 - nu))
        / np.sin(math.pi * U) ** (1.0 / (1.0 - nu))
    )
    out = t ** (1.0 / nu) * (A / W) ** ((1.0 - nu) / nu)
    return float(out[0]) if size is None else out


def sample_inverse_subordinator(nu: float, t: float, rng, size: int | None = None):
    """Draw L(t) = inf{s > 0 : H(s) >= t} via L(t) =law (t/H(1))^nu.

    E e^{-g L(t)} is the Mittag-Leffler function E_nu(-g t^nu); nu = 1
    degenerates to L(t) = t exactly.
    """
    h1 = sample_stable_subordinator(nu, 1.0, rng, size=size)
    return (t / h1) ** nu


def sample_wrapped_bm(t, rng, size: int | None = None):
    """Normal(0, t) reduced mod 2 pi into [0, 2 pi).

    t may be an array of per-draw times (one angle per entry), which is
    how subordinated laws B(H(t)) are sampled.
    """
    tv = np.asarray(t, dtype=float)
    if np.any(tv <= 0.0):
        raise DomainError("t must be positive")
    gen = _generator(rng)
    if tv.ndim == 0:
        n = _check_size(size)
        out = np.mod(math.sqrt(float(tv)) * gen.standard_normal(n), TWO_PI)
        return float(out[0]) if size is None else out
    if size is not None and int(size) != tv.size:
        raise DomainError("size must match the length of the time array")
    return np.mod(np.sqrt(tv) * gen.standard_normal(tv.size), TWO_PI)


def simulate_planar_hit(
    start_radius: float,
    rng,
    step: float = 1e-3,
    size: int | None = None,
    max_steps: int | None = None,
):
    """Exit angle of planar Brownian motion started at (r, 0) in the unit disk.

    Euler walk with increments sqrt(step) N(0, I_2); the step that first
    lands outside is cut back to the circle by solving |p + lam d| = 1
    for lam in (0, 1] (first-order crossing interpolation). Angles are
    returned in [0, 2 pi). Expected step count is about (1 - r^2)/(2 step);
    the walk aborts with ConvergenceError past max_steps
    (default 400/step) rather than looping on a pathological step choice.
    """
    r0 = float(start_radius)
    if not 0.0 < r0 < 1.0:
        raise DomainError("start_radius must lie in (0, 1)")
    if not step > 0.0:
        raise DomainError("step must be positive")
    n = _check_size(size)
    cap = int(max_steps) if max_steps is not None else int(400.0 / step) + 1
    if cap < 1:
        raise DomainError("max_steps must be >= 1")
    gen = _generator(rng)
    pos = np.zeros((n, 2))
    pos[:, 0] = r0
    out = np.empty(n)
    active = np.arange(n)
    sq = math.sqrt(step)
    for _ in range(cap):
        if not active.size:
            break
        d = sq * gen.standard_normal((active.size, 2))
        cur = pos[active]
        new = cur + d
        hit = (new * new).sum(axis=1) >= 1.0
        if hit.any():
            p = cur[hit]
            dd = d[hit]
            pd = (p * dd).sum(axis=1)
            d2 = (dd * dd).sum(axis=1)
            p2 = (p * p).sum(axis=1)
            lam = (-pd + np.sqrt(pd * pd + d2 * (1.0 - p2))) / d2
            exit_pt = p + lam[:, None] * dd
            out[active[hit]] = np.mod(np.arctan2(exit_pt[:, 1], exit_pt[:, 0]), TWO_PI)
        pos[active] = new
        active = active[~hit]
    if active.size:
        raise ConvergenceError(
            f"{active.size} paths still inside the disk after {cap} steps; "
            "increase max_steps or decrease step"
        )
    return float(out[0]) if size is None else out


def ks_statistic(samples, cdf) -> float:
    """One-sample Kolmogorov-Smirnov sup-distance.

    D = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n) over the sorted
    sample; cdf must be callable on arrays and monotone on [0, 2 pi).
    """
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    n = x.size
    if n < 100:
        raise DomainError("need at least 100 samples")
    F = np.asarray(cdf(x), dtype=float)
    if np.any(np.diff(F) < -1e-12):
        raise DomainError("cdf is not monotone on the sample range")
    i = np.arange(1, n + 1, dtype=float)
    return float(max(np.max(i / n - F), np.max(F - (i - 1.0) / n)))


def histogram(samples, bins: int = 64) -> GridDensity:
    """Angular histogram in density units: counts/(n * bin width).

    The grid holds the left bin edges (starting at 0); values integrate
    to 1 over [0, 2 pi).
    """
    x = np.asarray(samples, dtype=float).ravel()
    if x.size == 0:
        raise DomainError("no samples")
    if int(bins) < 2:
        raise DomainError("bins must be >= 2")
    if np.any(x < 0.0) or np.any(x >= TWO_PI):
        raise DomainError("samples must be angles in [0, 2 pi)")
    counts, edges = np.histogram(x, bins=int(bins), range=(0.0, TWO_PI))
    width = TWO_PI / int(bins)
    return GridDensity(
        thetas=edges[:-1],
        values=counts / (x.size * width),
        kind="density",
        law_meta=f"histogram of {x.size} samples, {int(bins)} bins",
    )


@dataclass(frozen=True)
class McReport:
    """Outcome of one sampler-vs-CDF comparison."""

    n_samples: int
    ks_statistic: float
    ks_threshold: float
    passed: bool
    histogram: GridDensity

    def __post_init__(self):
        if self.n_samples < 1:
            raise DomainError("n_samples must be positive")
        if not self.ks_statistic >= 0.0:
            raise DomainError("ks_statistic must be nonnegative")
        if self.passed != (self.ks_statistic < self.ks_threshold):
            raise DomainError("passed flag must equal ks_statistic < ks_threshold")


def mc_report(samples, cdf, ks_threshold: float, bins: int = 64) -> McReport:
    """Bundle a comparison: KS distance against cdf, verdict, histogram."""
    x = np.asarray(samples, dtype=float).ravel()
    ks = ks_statistic(x, cdf)
    return McReport(
        n_samples=x.size,
        ks_statistic=ks,
        ks_threshold=float(ks_threshold),
        passed=bool(ks < float(ks_threshold)),
        histogram=histogram(x, bins),
    )
