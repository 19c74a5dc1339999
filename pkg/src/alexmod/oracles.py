"""Closed-form values used as ground truth and for near-boundary evaluation.

Every function here is a pure formula with no tolerance parameters.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import gamma

from .errors import DeltaTooLarge, DomainError, PoleNotNearest


def unit_ball_volume(n: int) -> float:
    """|B^n| = pi^{n/2} / Gamma(n/2 + 1), with |B^0| = 1."""
    if n < 0:
        raise DomainError("dimension must be non-negative")
    return float(math.pi ** (n / 2) / gamma(n / 2 + 1))


def ball_f(n: int, d: float) -> float:
    """Polar volume |(B - a)°| for the unit ball and a point at boundary distance ``d``."""
    if not 0.0 < d <= 1.0:
        raise DomainError(f"d must lie in (0, 1], got {d}")
    return unit_ball_volume(n) / (d * (2.0 - d)) ** ((n + 1) / 2)


def ellipsoid_curvature(semi_axes) -> float:
    """Gauss curvature at the pole (0, ..., 0, -l_n): l_n^{n-1} / prod_{j<n} l_j^2."""
    ell = np.asarray(semi_axes, dtype=float)
    n = ell.size
    return float(ell[-1] ** (n - 1) / np.prod(ell[:-1] ** 2))


def ellipsoid_pole_guard(semi_axes) -> float:
    """Largest pole distance for which the pole is certified to be the unique nearest point."""
    ell = np.asarray(semi_axes, dtype=float)
    return float(ell[-1] * min(1.0, np.min(ell[:-1] ** 2) / ell[-1] ** 2))


def ellipsoid_f(semi_axes, d: float) -> float:
    """Polar volume for a point on the last axis at distance ``d`` from the pole.

    sqrt(kappa) |B^n| / [d (2 - d / l_n)]^{(n+1)/2}, valid while the pole is
    the nearest boundary point (``d <= l_n * min_j l_j^2 / l_n^2``).
    """
    ell = np.asarray(semi_axes, dtype=float)
    if np.any(ell <= 0):
        raise DomainError("semi-axes must be positive")
    if not 0.0 < d <= ellipsoid_pole_guard(ell):
        raise PoleNotNearest(f"d={d} exceeds the nearest-pole guard {ellipsoid_pole_guard(ell)}")
    n = ell.size
    kappa = ellipsoid_curvature(ell)
    return math.sqrt(kappa) * unit_ball_volume(n) / (d * (2.0 - d / ell[-1])) ** ((n + 1) / 2)


def parabola_f(kappa0: float, delta: float) -> float:
    """f at (0, delta) for {x2 > kappa0 x1^2 / 2}: sqrt(kappa0) pi / (2 delta)^{3/2}."""
    if kappa0 <= 0 or delta <= 0:
        raise DomainError("kappa0 and delta must be positive")
    return math.sqrt(kappa0) * math.pi / (2.0 * delta) ** 1.5


def parabola_polar_support(y) -> float:
    """Support function of {x2 > x1^2} - e2: -y1^2/(4 y2) - y2 for y2 < 0, +inf otherwise.

    The polar set {y : value <= 1} is the ellipse y1^2 + 4 (y2 + 1/2)^2 <= 1.
    """
    y1, y2 = (float(v) for v in np.asarray(y, dtype=float).reshape(2))
    if y2 >= 0.0:
        return math.inf
    return -(y1 * y1) / (4.0 * y2) - y2


def section_asymptotic(kappa: float, n: int, delta: float) -> float:
    """Leading term sqrt(kappa) |B^{n-1}| / (2 delta)^{(n-1)/2} of |S°(x - delta nu, nu)|."""
    if kappa <= 0 or delta <= 0:
        raise DomainError("kappa and delta must be positive")
    return math.sqrt(kappa) * unit_ball_volume(n - 1) / (2.0 * delta) ** ((n - 1) / 2)


def t1_constant(n: int, kappa0: float) -> float:
    """Sharp constant (2^{(n+1)/2} / (|B^n| sqrt(kappa0)))^{1/n} in omega ~ C delta^{(n+1)/(2n)}."""
    if n < 2 or kappa0 <= 0:
        raise DomainError("need n >= 2 and kappa0 > 0")
    return (2.0 ** ((n + 1) / 2) / (unit_ball_volume(n) * math.sqrt(kappa0))) ** (1.0 / n)


def t1_constant_planar(kappa0: float) -> float:
    """The planar constant written directly as (2^{3/2} / (pi sqrt(kappa0)))^{1/2}."""
    return math.sqrt(2.0**1.5 / (math.pi * math.sqrt(kappa0)))


def corollary_alpha(n: int, exponents) -> float:
    """Hoelder exponent (1 + sum 1/p_j) / n for boundaries flat to orders p_j."""
    p = np.atleast_1d(np.asarray(exponents, dtype=float))
    if not 1 <= p.size <= n - 1:
        raise DomainError("need 1 <= k <= n - 1 exponents")
    if np.any(p < 1):
        raise DomainError("exponents must be >= 1")
    return float((1.0 + np.sum(1.0 / p)) / n)


def graph2d_bounds(domain, delta: float) -> tuple[float, float]:
    """Two-sided bound 1/2 sqrt(delta h^{-1}(delta)) <= omega <= sqrt(2) sqrt(delta h^{-1}(delta))."""
    if not 0.0 < delta < domain.D / 2:
        raise DeltaTooLarge(f"delta must lie in (0, D/2) = (0, {domain.D / 2})")
    s = math.sqrt(delta * domain.h_inverse(delta))
    return 0.5 * s, math.sqrt(2.0) * s


def limit_set_volume(n: int, eps: float) -> float:
    """(1 - eps)^{(n-1)/2} |B^n| / 2^{(n+1)/2}: volume of {2|q'|^2/(1-eps) + 4 (q_n + 1/2)^2 <= 1}."""
    if n < 2 or not 0.0 <= eps < 1.0:
        raise DomainError("need n >= 2 and 0 <= eps < 1")
    return (1.0 - eps) ** ((n - 1) / 2) * unit_ball_volume(n) / 2.0 ** ((n + 1) / 2)


def flat_spot_radius(A: float, n: int, R: float) -> float:
    """Radius A^n |B^{n-2}| / (2^{n-1} n R^{n-2}) of the flat piece forced by omega >= A delta^{1/n}."""
    return A**n * unit_ball_volume(n - 2) / (2.0 ** (n - 1) * n * R ** (n - 2))


def simplex_mahler(n: int) -> float:
    """|T||T°| for a simplex with centroid at the origin: (n+1)^{n+1} / (n!)^2."""
    return (n + 1) ** (n + 1) / math.factorial(n) ** 2


ORACLES = {
    "ball-f": (ball_f, "ball_f"),
    "ellipsoid-f": (ellipsoid_f, "ellipsoid_f"),
    "ellipsoid-curvature": (ellipsoid_curvature, "ellipsoid_curvature"),
    "parabola-f": (parabola_f, "parabola_f"),
    "parabola-polar-support": (parabola_polar_support, "parabola_polar_support"),
    "section-asymptotic": (section_asymptotic, "section_asymptotic"),
    "t1-constant": (t1_constant, "t1_constant"),
    "corollary-alpha": (corollary_alpha, "corollary_alpha"),
    "limit-set-volume": (limit_set_volume, "limit_set_volume"),
    "unit-ball-volume": (unit_ball_volume, "unit_ball_volume"),
}
