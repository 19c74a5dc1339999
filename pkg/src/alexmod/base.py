"""Common interface shared by every convex body representation."""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.linalg import null_space

from .errors import DimensionMismatch, PointNotInterior

GAUGE_BISECTION_STEPS = 80


def as_vector(x, n: int | None = None) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError("non-finite coordinates")
    if n is not None and v.shape[0] != n:
        raise DimensionMismatch(f"expected a vector in R^{n}, got length {v.shape[0]}")
    return v


def as_rows(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[None, :]
    if x.shape[1] != n:
        raise DimensionMismatch(f"expected rows in R^{n}, got shape {x.shape}")
    return x


def complement_basis(nu: np.ndarray) -> np.ndarray:
    """Rows form an orthonormal basis of the hyperplane orthogonal to ``nu``."""
    nu = np.asarray(nu, dtype=float)
    nu = nu / np.linalg.norm(nu)
    return null_space(nu[None, :]).T


def unique_points(points: np.ndarray, tol: float) -> np.ndarray:
    """Greedy deduplication: keep a point only if it is farther than ``tol`` from every kept point."""
    points = np.asarray(points, dtype=float)
    if len(points) == 0:
        return points
    order = np.lexsort(points.T[::-1])
    kept: list[np.ndarray] = []
    for p in points[order]:
        if not kept or np.min(np.linalg.norm(np.asarray(kept) - p, axis=1)) > tol:
            kept.append(p)
    return np.asarray(kept)


@dataclass(frozen=True)
class SectionData:
    """The slice S(a, nu) expressed in an orthonormal chart of nu-perp centred at ``base``.

    ``kind`` selects which payload is populated:

    * ``"interval"`` (n = 2): ``interval = (lo, hi)`` with ``lo < 0 < hi``;
    * ``"polytope"``: ``polytope`` is an H-polytope in chart coordinates;
    * ``"ellipsoid"``: ``ellipsoid = (center, shape)`` describing
      ``{z : (z - center)^T shape (z - center) <= 1}``;
    * ``"sampled"``: ``points`` are boundary points of the slice in chart coordinates.
    """

    base: np.ndarray
    normal: np.ndarray
    basis: np.ndarray
    kind: str
    interval: tuple[float, float] | None = None
    polytope: Any = None
    ellipsoid: tuple[np.ndarray, np.ndarray] | None = None
    points: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def to_world(self, z) -> np.ndarray:
        z = np.atleast_2d(np.asarray(z, dtype=float))
        return self.base + z @ self.basis

    @property
    def measure(self) -> float:
        """(n-1)-dimensional measure |S(a, nu)|."""
        from .polytope import VPolytope, hull_volume
        from .oracles import unit_ball_volume

        if self.kind == "interval":
            return self.interval[1] - self.interval[0]
        if self.kind == "polytope":
            return hull_volume(VPolytope(self.polytope.vertices))
        if self.kind == "ellipsoid":
            _, shape = self.ellipsoid
            return unit_ball_volume(self.dim) / np.sqrt(np.linalg.det(shape))
        return hull_volume(self.points)


class ConvexBody(ABC):
    """Bounded open convex set in R^n, n in {2, 3, 4} for the exact paths.

    Subclasses implement membership, the support function, and the candidate
    nearest boundary points; gauge, distance and sections have generic
    numeric defaults.
    """

    dim: int
    smoothness: str = "smooth"

    # -- primitives -----------------------------------------------------
    @abstractmethod
    def contains(self, x) -> np.ndarray:
        """Strict membership in the open body, row-wise."""

    @abstractmethod
    def support(self, theta) -> np.ndarray:
        """sigma_Omega(theta) for each row of ``theta``."""

    @abstractmethod
    def _nearest_candidates(self, a: np.ndarray) -> np.ndarray:
        """Boundary points that are local minimisers of |a - y|; must contain a global one."""

    @abstractmethod
    def chebyshev_center(self) -> tuple[np.ndarray, float]:
        """A point maximising the distance to the boundary, and that distance."""

    @abstractmethod
    def bounding_radius(self) -> float:
        """Radius of a ball about the Chebyshev center containing the body."""

    @abstractmethod
    def to_spec(self) -> dict:
        """Body-spec JSON mapping."""

    # -- derived --------------------------------------------------------
    def support_at(self, theta, base) -> np.ndarray:
        """sigma_{Omega - base}(theta) = sigma_Omega(theta) - base . theta."""
        theta = as_rows(theta, self.dim)
        base = as_vector(base, self.dim)
        return self.support(theta) - theta @ base

    def diameter_bound(self) -> float:
        return 2.0 * self.bounding_radius()

    def require_interior(self, a, exc=PointNotInterior) -> np.ndarray:
        a = as_vector(a, self.dim)
        if not bool(self.contains(a)[0]):
            raise exc(f"point {a.tolist()} is not in the interior of the body")
        return a

    def gauge(self, base, v) -> np.ndarray:
        """Minkowski functional of Omega - base by bisection along each ray."""
        from .errors import BaseNotInterior

        base = self.require_interior(base, BaseNotInterior)
        v = as_rows(v, self.dim)
        norms = np.linalg.norm(v, axis=1)
        out = np.zeros(len(v))
        nz = norms > 0
        if not np.any(nz):
            return out
        dirs = v[nz] / norms[nz, None]
        lo = np.zeros(len(dirs))
        hi = np.full(len(dirs), 1.01 * self.diameter_bound() + np.linalg.norm(base - self.chebyshev_center()[0]))
        for _ in range(GAUGE_BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            inside = self.contains(base + mid[:, None] * dirs)
            lo = np.where(inside, mid, lo)
            hi = np.where(inside, hi, mid)
            if np.all(hi - lo <= 1e-14 * hi):
                break
        out[nz] = norms[nz] / (0.5 * (lo + hi))
        return out

    def boundary_point(self, base, direction) -> np.ndarray:
        base = as_vector(base, self.dim)
        direction = as_vector(direction, self.dim)
        return base + direction / self.gauge(base, direction)[0]

    def nearest_boundary_points(self, a, tol: float = 1e-9) -> tuple[float, np.ndarray]:
        """Distance to the boundary and all boundary points within ``d * (1 + tol)``."""
        a = self.require_interior(a)
        cand = np.atleast_2d(self._nearest_candidates(a))
        dist = np.linalg.norm(cand - a, axis=1)
        d = float(dist.min())
        keep = cand[dist <= d * (1.0 + tol)]
        keep = keep[np.argsort(np.linalg.norm(keep - a, axis=1), kind="stable")]
        return d, _dedupe_keep_order(keep, max(tol, 1e-12) * max(d, 1e-300))

    def distance(self, a) -> float:
        return self.nearest_boundary_points(a)[0]

    def normals(self, a, tol: float = 1e-9) -> np.ndarray:
        """Unit vectors from ``a`` toward its nearest boundary points (the set N(a))."""
        a = as_vector(a, self.dim)
        _, pts = self.nearest_boundary_points(a, tol)
        nus = pts - a
        nus /= np.linalg.norm(nus, axis=1, keepdims=True)
        return _dedupe_keep_order(nus, tol)

    def section(self, a, nu) -> SectionData:
        """Slice through ``a`` orthogonal to ``nu``; radial sampling via the gauge for n >= 3."""
        a = self.require_interior(a)
        nu = as_vector(nu, self.dim)
        nu = nu / np.linalg.norm(nu)
        basis = complement_basis(nu)
        if self.dim == 2:
            g = self.gauge(a, np.vstack([basis[0], -basis[0]]))
            return SectionData(a, nu, basis, "interval", interval=(-1.0 / g[1], 1.0 / g[0]))
        from .sphere import icosphere_mesh, trapezoid_circle

        if self.dim == 3:
            dirs = trapezoid_circle(1024).nodes
        else:
            dirs = icosphere_mesh(3)[0]
        radii = 1.0 / self.gauge(a, dirs @ basis)
        return SectionData(a, nu, basis, "sampled", points=dirs * radii[:, None])

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_spec()})"


def _dedupe_keep_order(points: np.ndarray, tol: float) -> np.ndarray:
    kept: list[np.ndarray] = []
    for p in points:
        if not kept or np.min(np.linalg.norm(np.asarray(kept) - p, axis=1)) > tol:
            kept.append(p)
    return np.asarray(kept).reshape(-1, points.shape[1])
