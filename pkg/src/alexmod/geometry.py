"""Functional front-end over the body classes: support, gauge, distance, normals, sections."""
from __future__ import annotations

import numpy as np

from .base import ConvexBody, SectionData, as_vector
from .bodies import ellipsoid_polar_volume
from .errors import DimensionMismatch
from .polytope import VPolytope, hull_volume, polar_polytope

UNIT_TOL = 1e-12


def _unit(theta, n: int) -> np.ndarray:
    theta = as_vector(theta, n)
    if abs(np.linalg.norm(theta) - 1.0) > UNIT_TOL:
        raise ValueError("direction must be a unit vector")
    return theta


def support(body: ConvexBody, theta, base=None) -> float:
    """sigma_{Omega - base}(theta) for a unit vector ``theta``."""
    theta = _unit(theta, body.dim)
    base = np.zeros(body.dim) if base is None else as_vector(base, body.dim)
    return float(body.support_at(theta, base)[0])


def gauge(body: ConvexBody, base, v) -> float:
    v = as_vector(v, body.dim)
    return float(body.gauge(base, v)[0])


def distance_to_boundary(body: ConvexBody, a) -> float:
    return body.distance(a)


def normal_set(body: ConvexBody, a, tol: float = 1e-9) -> np.ndarray:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return body.normals(a, tol)


def section(body: ConvexBody, a, nu) -> SectionData:
    return body.section(a, _unit_or_normalize(nu, body.dim))


def _unit_or_normalize(nu, n: int) -> np.ndarray:
    nu = as_vector(nu, n)
    norm = np.linalg.norm(nu)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError("nu must be a unit vector")
    return nu / norm


def slice_polar_volume(sec: SectionData) -> float:
    """|S°| of a computed slice, measured inside its own chart."""
    if sec.kind == "interval":
        lo, hi = sec.interval
        return 1.0 / hi + 1.0 / (-lo)
    if sec.kind == "polytope":
        return hull_volume(polar_polytope(sec.polytope))
    if sec.kind == "ellipsoid":
        return ellipsoid_polar_volume(*sec.ellipsoid)
    return hull_volume(polar_polytope(VPolytope(sec.points)).vertices)


def section_polar_volume(body: ConvexBody, a, nu) -> float:
    """|S°(a, nu)| computed in the (n-1)-dimensional chart of nu-perp."""
    return slice_polar_volume(section(body, a, nu))


def section_measure(body: ConvexBody, a, nu) -> float:
    return section(body, a, nu).measure


def check_dim(body: ConvexBody, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != body.dim:
        raise DimensionMismatch(f"expected dimension {body.dim}")
    return x
