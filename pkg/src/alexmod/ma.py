"""Cone functions u_a and sampled Hoelder / modulus seminorms."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .base import ConvexBody, as_rows, as_vector
from .errors import CollinearDegeneracy, EmptyCurveRange, PointOutsideDomain
from .modulus import ModulusCurve, PolarBody, f_omega
from .polytope import VPolytope

BOUNDARY_SLACK = 1e-9


@dataclass(frozen=True)
class ConeFunction:
    """c * u_a: equal to -c at the apex a, 0 on the boundary, affine on segments from the apex."""

    body: ConvexBody
    apex: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "apex", self.body.require_interior(self.apex))
        if self.scale < 0:
            raise ValueError("scale must be non-negative")

    def __call__(self, x) -> np.ndarray:
        return cone_eval(self, x)


def cone_eval(fn: ConeFunction, x) -> np.ndarray:
    """scale * (gauge_{Omega - a}(x - a) - 1) for each row of ``x``; rows must lie in the closure."""
    x = as_rows(x, fn.body.dim)
    g = fn.body.gauge(fn.apex, x - fn.apex)
    if np.any(g > 1.0 + BOUNDARY_SLACK):
        raise PointOutsideDomain("point lies outside the closure of the body")
    return fn.scale * (np.minimum(g, 1.0) - 1.0)


def cone_subgradient_image(fn: ConeFunction, tol: float = 1e-3) -> PolarBody:
    """The image of the subgradient map, scale * (Omega - a)°, and its volume scale^n f(a)."""
    pb = f_omega(fn.body, fn.apex, tol=tol)
    n = fn.body.dim
    c = fn.scale
    poly = VPolytope(c * pb.polytope.vertices) if pb.polytope is not None and c > 0 else None
    scaled = None if pb.radial is None else _scaled_radial(pb.radial, c)
    return PolarBody(pb.base, c**n * pb.volume, pb.method, polytope=poly, radial=scaled, error=c**n * pb.error)


def _scaled_radial(radial: Callable, c: float) -> Callable:
    def scaled(theta):
        return c * radial(theta)

    return scaled


@dataclass(frozen=True)
class BarPoint:
    a_bar: np.ndarray
    b_bar: np.ndarray
    theta: float


def bar_point(body: ConvexBody, a, b) -> BarPoint:
    """Move the pair (a, b) along their line until b reaches the boundary, keeping |a - b|.

    b_bar is where the ray from a through b leaves the body, theta solves
    b = (1 - theta) a + theta b_bar, and a_bar = theta a + (1 - theta) b_bar.
    """
    a = body.require_interior(a)
    b = body.require_interior(b)
    v = b - a
    if np.linalg.norm(v) == 0:
        raise CollinearDegeneracy("a and b coincide")
    b_bar = a + v / float(body.gauge(a, v)[0])
    reach = float(np.linalg.norm(b_bar - a))
    if reach < 1e-12:
        raise CollinearDegeneracy("boundary point coincides with a")
    theta = float(np.linalg.norm(v)) / reach
    a_bar = theta * a + (1.0 - theta) * b_bar
    return BarPoint(a_bar, b_bar, theta)


@dataclass(frozen=True)
class SampledFunction:
    """A function on the closure of ``domain`` given only through its evaluator."""

    evaluator: Callable
    domain: ConvexBody
    apex: np.ndarray | None = None

    @classmethod
    def from_cone(cls, fn: ConeFunction) -> "SampledFunction":
        return cls(lambda x: cone_eval(fn, x), fn.body, fn.apex)

    def __call__(self, x) -> np.ndarray:
        return np.asarray(self.evaluator(x), dtype=float)


@dataclass(frozen=True)
class Holder:
    alpha: float

    def __call__(self, r: np.ndarray) -> np.ndarray:
        return np.asarray(r, dtype=float) ** self.alpha


class CurveModulus:
    """omega(r) from a sampled curve, log-linear between grid points.

    Beyond the inradius omega is constant (every point has d <= inradius),
    so the last value extends to the right when the grid reaches it.  Other
    arguments outside the grid are reported as ``nan``.
    """

    def __init__(self, curve: ModulusCurve):
        self.curve = curve
        self.logd = np.log(curve.deltas)
        self.logw = np.log(curve.omega)
        self.reaches_inradius = curve.deltas[-1] >= curve.inradius * (1.0 - 1e-9)

    def __call__(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        out = np.full(r.shape, np.nan)
        lr = np.log(np.maximum(r, 1e-300))
        inside = (lr >= self.logd[0] - 1e-12) & (lr <= self.logd[-1] + 1e-12)
        out[inside] = np.exp(np.interp(lr[inside], self.logd, self.logw))
        if self.reaches_inradius:
            out[lr > self.logd[-1]] = math.exp(self.logw[-1])
        return out


def sample_interior(body: ConvexBody, m: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform points in the body by rejection from the bounding ball."""
    c, _ = body.chebyshev_center()
    R = body.bounding_radius()
    out = []
    count = 0
    while count < m:
        g = rng.standard_normal((2 * m, body.dim))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        pts = c + R * g * rng.random((2 * m, 1)) ** (1.0 / body.dim)
        pts = pts[body.contains(pts)]
        out.append(pts)
        count += len(pts)
    return np.vstack(out)[:m]


def structured_pairs(fn: SampledFunction, rays: int = 32) -> tuple[np.ndarray, np.ndarray]:
    """Apex-to-nearest-boundary pairs, apex-to-boundary along rays, and pairs along those segments."""
    if fn.apex is None:
        return np.zeros((0, fn.domain.dim)), np.zeros((0, fn.domain.dim))
    body, a = fn.domain, fn.apex
    _, nearest = body.nearest_boundary_points(a)
    if body.dim == 2:
        t = 2 * math.pi * np.arange(rays) / rays
        dirs = np.column_stack([np.cos(t), np.sin(t)])
    else:
        dirs = np.random.default_rng(0).standard_normal((rays, body.dim))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    ends = a + dirs / body.gauge(a, dirs)[:, None]
    tips = np.vstack([nearest, ends])
    xs = [np.repeat(a[None, :], len(tips), axis=0)]
    ys = [tips]
    for s in (0.25, 0.5, 0.9):
        xs.append(a + s * (tips - a))
        ys.append(tips)
    return np.vstack(xs), np.vstack(ys)


def seminorm(fn: SampledFunction, modulus, pairs: int = 1000, seed: int = 0) -> float:
    """Sampled lower estimate of sup |u(x) - u(y)| / m(|x - y|).

    ``modulus`` is a :class:`Holder`, a :class:`ModulusCurve` or any callable
    m(r).  Random interior pairs are complemented by the structured pairs of
    :func:`structured_pairs`.
    """
    if pairs < 1000:
        raise ValueError("at least 1000 random pairs are required")
    if isinstance(modulus, ModulusCurve):
        modulus = CurveModulus(modulus)
    rng = np.random.default_rng([seed, 0])
    pts = sample_interior(fn.domain, 2 * pairs, rng)
    sx, sy = structured_pairs(fn)
    X = np.vstack([pts[:pairs], sx])
    Y = np.vstack([pts[pairs:], sy])
    r = np.linalg.norm(X - Y, axis=1)
    keep = r > 0
    m = modulus(r[keep])
    ok = np.isfinite(m) & (m > 0)
    if not np.any(ok):
        raise EmptyCurveRange("no sampled pair distance falls inside the modulus curve's range")
    du = np.abs(fn(X[keep][ok]) - fn(Y[keep][ok]))
    return float(np.max(du / m[ok]))


@dataclass(frozen=True)
class EqualityCase:
    lhs: float
    rhs: float
    ratio: float
    boundary_point: np.ndarray
    f: float


def equality_case_check(body: ConvexBody, a, tol: float = 1e-3) -> EqualityCase:
    """The extremal pair (a, nearest boundary point) for u_a against f(a)^{-1/n} |du_a(Omega)|^{1/n}."""
    a = as_vector(a, body.dim)
    u = ConeFunction(body, a)
    _, nearest = body.nearest_boundary_points(a)
    b = nearest[0]
    lhs = float(abs(cone_eval(u, a)[0] - cone_eval(u, b)[0]))
    n = body.dim
    f = f_omega(body, a, tol=tol).volume
    image = cone_subgradient_image(u, tol=tol).volume
    rhs = f ** (-1.0 / n) * image ** (1.0 / n)
    return EqualityCase(lhs, rhs, lhs / rhs, b, f)


def midpoint_violation(fn: SampledFunction, x: np.ndarray, y: np.ndarray) -> float:
    """max of u((x+y)/2) - (u(x) + u(y))/2 over row pairs; non-positive for convex u."""
    return float(np.max(fn(0.5 * (x + y)) - 0.5 * (fn(x) + fn(y))))
