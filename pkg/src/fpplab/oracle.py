"""Continuum (whole-space) norms of the linear flow for radial spectral data.

For a radially symmetric spectral profile uhat0(r) the weighted norm of the
linear evolution reduces to a 1-D integral,

    Q(t)^2 = omega_{n-1} * int_0^inf r^(2l+n-1) w(r)^2 exp(-2 sigma(r) t)
             |uhat0(r)|^2 dr,

with w = 1, chi, or 1 - chi for the full / low / high window.  This module
evaluates that integral by panelled adaptive quadrature with an inverted
(u = 1/r) far tail, and serves as the discretization-free ground truth for
decay-rate measurements.

Normalization: Q is the physical L2 norm of Lam^l (w(D) u(t)) when the
physical field is the unitary inverse transform of uhat0.  Grid data built
with ``grid.field_from_spectral_profile`` reproduces these values.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .diagnostics import DecayFit, NormSeries, fit_decay
from .model import ModelParams, cutoff_chi, sigma

_SPHERE_AREA = {1: 2.0, 2: 2.0 * np.pi, 3: 4.0 * np.pi}
_TAIL_EXPONENT = 30.0  # sigma(r) t beyond this contributes < exp(-60) relative
DEFAULT_TOL = 1e-8


class OracleConvergenceError(RuntimeError):
    """Raised when the radial integral diverges or the tolerance is unmet."""


@dataclass(frozen=True)
class DecayClass:
    """Tail behaviour of a profile: gaussian | power_tail(p) | compact_support(r)."""

    kind: str
    parameter: float = None

    def __post_init__(self):
        if self.kind not in ("gaussian", "power_tail", "compact_support"):
            raise ValueError(f"unknown decay class {self.kind!r}")
        if self.kind in ("power_tail", "compact_support") and not (
            self.parameter is not None and self.parameter > 0
        ):
            raise ValueError(f"{self.kind} needs a positive parameter")


@dataclass(frozen=True)
class RadialProfile:
    """Radial spectral profile uhat0(r) with tail metadata.

    l1_norm_hint caches ||phi||_L1 of the corresponding physical function
    when it is known in closed form (sign-definite profiles).
    """

    profile: object  # callable r -> uhat0(r), vectorized over ndarrays
    decay_class: DecayClass
    l1_norm_hint: float = None

    def __call__(self, r):
        return self.profile(r)


def gaussian_profile(width: float = 1.0, amplitude: float = 1.0,
                     n: int = 1) -> RadialProfile:
    """uhat0(r) = amplitude exp(-(width r)^2 / 2); physical side is a positive
    Gaussian, so ||phi||_L1 = (2 pi)^(n/2) amplitude exactly."""
    if width <= 0:
        raise ValueError("width must be positive")
    w2 = width * width

    def f(r):
        return amplitude * np.exp(-0.5 * w2 * np.square(r))

    return RadialProfile(f, DecayClass("gaussian", width),
                         l1_norm_hint=(2.0 * np.pi) ** (n / 2.0) * abs(amplitude))


def power_tail_profile(exponent: float, amplitude: float = 1.0,
                       n: int = 1) -> RadialProfile:
    """uhat0(r) = amplitude (1 + r^2)^(-exponent/2).

    The physical side is a positive Matern-type kernel, so the L1 hint is
    exact; the profile lies in H^s exactly for s < exponent - n/2.
    """
    if exponent <= 0:
        raise ValueError("exponent must be positive")

    def f(r):
        with np.errstate(over="ignore"):
            return amplitude * (1.0 + np.square(r)) ** (-0.5 * exponent)

    return RadialProfile(f, DecayClass("power_tail", exponent),
                         l1_norm_hint=(2.0 * np.pi) ** (n / 2.0) * abs(amplitude))


def truncated_profile(base: RadialProfile, radius: float) -> RadialProfile:
    """Sharp spectral truncation of a profile to r <= radius."""
    if radius <= 0:
        raise ValueError("radius must be positive")

    def f(r):
        r = np.asarray(r, dtype=float)
        return np.where(r <= radius, base.profile(r), 0.0)

    return RadialProfile(f, DecayClass("compact_support", radius))


def sphere_area(n: int) -> float:
    """Surface area of the unit sphere in R^n: 2, 2 pi, 4 pi for n = 1, 2, 3."""
    try:
        return _SPHERE_AREA[n]
    except KeyError:
        raise ValueError(f"unsupported dimension n={n}") from None


def _window_weight(window: str, R: float):
    if window == "full":
        return lambda r: 1.0
    if window == "low":
        return lambda r: cutoff_chi(r, R) ** 2
    if window == "high":
        return lambda r: (1.0 - cutoff_chi(r, R)) ** 2
    if window == "cross":
        c = lambda r: cutoff_chi(r, R)
        return lambda r: c(r) * (1.0 - c(r))
    raise ValueError(f"unknown window {window!r}; use full, low, high, or cross")


def _sigma_crossings(t: float, params: ModelParams):
    """Radii where sigma(r) t crosses the tail-exponent threshold (up, down)."""
    if t <= 0.0:
        return None, None
    target = _TAIL_EXPONENT / t
    rs = np.geomspace(1e-6, 1e8, 281)
    vals = sigma(rs, params) - target
    up = down = None
    sign = vals[0] > 0
    for i in range(1, rs.size):
        now = vals[i] > 0
        if now != sign:
            root = brentq(lambda r: sigma(r, params) - target, rs[i - 1], rs[i])
            if now:
                up = up or root
            else:
                down = down or root
            sign = now
    return up, down


def _check_tail_convergence(profile: RadialProfile, l: float, t: float,
                            params: ModelParams):
    dc = profile.decay_class
    if dc.kind != "power_tail":
        return
    if params.alpha > 1.0 and t > 0.0:
        return  # super-diffusive damping kills any power tail
    if not 2.0 * dc.parameter > 2.0 * l + params.n:
        raise OracleConvergenceError(
            f"tail integral diverges: power-tail exponent {dc.parameter:g} needs "
            f"2p > 2l + n = {2.0 * l + params.n:g}"
        )


def _quad_panel(f, a, b, epsabs, epsrel, points=None):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if points:
            return quad(f, a, b, epsabs=epsabs, epsrel=epsrel, limit=200,
                        points=points)
        return quad(f, a, b, epsabs=epsabs, epsrel=epsrel, limit=200)


def _weighted_integral(profile: RadialProfile, l: float, t: float,
                       params: ModelParams, window: str, R: float,
                       epsrel: float) -> float:
    n, m, alpha = params.n, params.m, params.alpha
    area = sphere_area(n)
    w2 = _window_weight(window, R)
    rpow = 2.0 * l + n - 1.0
    dc = profile.decay_class

    def integrand(r):
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            v = (area * r ** rpow * w2(r)
                 * math.exp(-2.0 * t * sigma(r, params))
                 * abs(profile.profile(r)) ** 2)
        v = float(v)
        return v if math.isfinite(v) else 0.0

    def integrand_inv(u):
        # r = 1/u with sigma computed in the overflow-safe form
        r = 1.0 / u
        sig = u ** (2.0 - 2.0 * alpha) / (u * u + m)
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            v = (area * r ** (rpow + 2.0) * w2(r)
                 * math.exp(-2.0 * t * sig)
                 * abs(profile.profile(r)) ** 2)
        v = float(v)
        return v if math.isfinite(v) else 0.0

    r_up, r_down = _sigma_crossings(t, params)
    lo, hi = 0.0, math.inf
    if window in ("high", "cross"):
        lo = R
    if window in ("low", "cross"):
        hi = 2.0 * R
    if dc.kind == "compact_support":
        hi = min(hi, dc.parameter)

    interior = {R, 2.0 * R, 1.0}
    if r_up is not None:
        interior.add(r_up)
    if dc.kind == "gaussian":
        interior.add(1.0 / dc.parameter)

    if math.isinf(hi):
        x_tail = max(2.0 * R, 1.0, r_up or 0.0)
        if dc.kind == "gaussian":
            x_tail = max(x_tail, 2.0 / dc.parameter)
    else:
        x_tail = None

    finite_hi = hi if x_tail is None else x_tail
    pts = sorted(p for p in interior if lo < p < finite_hi)
    edges = [lo] + pts + [finite_hi]

    def run(eps_abs_each, eps_rel_each):
        total = err = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            v, e = _quad_panel(integrand, a, b, eps_abs_each, eps_rel_each)
            total += v
            err += e
        if x_tail is not None:
            tail_pts = None
            if r_down is not None and 0.0 < 1.0 / r_down < 1.0 / x_tail:
                tail_pts = [1.0 / r_down]
            v, e = _quad_panel(integrand_inv, 0.0, 1.0 / x_tail,
                               eps_abs_each, eps_rel_each, points=tail_pts)
            total += v
            err += e
        return total, err

    rough, _ = run(1e-300, 1e-3)
    n_panels = len(edges) + (1 if x_tail is not None else 0)
    eps_abs = max(abs(rough), 0.0) * epsrel / (4.0 * n_panels) + 1e-300
    total, err = run(eps_abs, epsrel / 4.0)
    allowed = max(abs(total) * epsrel * 4.0, 1e-280)
    if err > 10.0 * allowed:
        raise OracleConvergenceError(
            f"quadrature tolerance not reached at t={t:g}, l={l:g} "
            f"(error estimate {err:.3e} vs target {allowed:.3e})"
        )
    return max(total, 0.0)


def radial_weighted_l2(profile: RadialProfile, l: float, t: float,
                       params: ModelParams, window: str = "full",
                       R: float = 0.5, tol: float = DEFAULT_TOL) -> float:
    """||Lam^l w(D) u(t)||_L2 of the linear flow started from the profile.

    The result carries relative error <= tol, verified internally by
    tolerance halving: evaluations at tol and tol/2 must agree within tol,
    otherwise OracleConvergenceError is raised (so do divergent tails).
    """
    if l < 0:
        raise ValueError(f"derivative order l must be nonnegative, got {l}")
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if not 0.0 < R < 1.0:
        raise ValueError(f"cutoff radius R must lie in (0, 1), got {R}")
    _check_tail_convergence(profile, l, t, params)
    q_half = math.sqrt(_weighted_integral(profile, l, t, params, window, R,
                                          epsrel=0.5 * tol))
    q_full = math.sqrt(_weighted_integral(profile, l, t, params, window, R,
                                          epsrel=tol))
    if abs(q_full - q_half) > tol * max(q_half, 1e-300):
        raise OracleConvergenceError(
            f"tolerance-halving check failed at t={t:g}, l={l:g}: "
            f"{q_full!r} vs {q_half!r}"
        )
    return q_half


def oracle_decay_fit(profile: RadialProfile, l: float, params: ModelParams,
                     t_window, n_samples: int = 24, window: str = "full",
                     R: float = 0.5, tol: float = DEFAULT_TOL) -> DecayFit:
    """Fitted log-log decay slope of the linear flow over a time window.

    Samples are log-uniform in [t0, t1]; the window must span at least two
    decades (t1/t0 >= 100) for a stable slope.
    """
    t0, t1 = float(t_window[0]), float(t_window[1])
    if not (t0 > 0 and t1 / t0 >= 100.0):
        raise ValueError("fit window must satisfy t0 > 0 and t1/t0 >= 100")
    if n_samples < 8:
        raise ValueError("need at least 8 samples for a decay fit")
    times = np.geomspace(t0, t1, n_samples)
    values = np.array([
        radial_weighted_l2(profile, l, t, params, window=window, R=R, tol=tol)
        for t in times
    ])
    series = NormSeries(times, values, l=float(l), component=window)
    return fit_decay(series, (t0, t1))
