"""Exact polytope pipeline: H/V representations, polarity, hull volumes, projections.

Facet and vertex enumeration are delegated to Qhull through
``scipy.spatial``; volumes are assembled here by a fan triangulation of the
hull facets from the vertex centroid.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, HalfspaceIntersection, QhullError, cKDTree

from .base import ConvexBody, SectionData, as_rows, as_vector, complement_basis, unique_points
from .errors import (
    BaseNotInterior,
    DegenerateHull,
    DimensionMismatch,
    EmptyInterior,
    OriginNotInterior,
    UnboundedBody,
)

MERGE_TOL = 1e-10


def normalize_hrep(normals, offsets, merge_tol: float = MERGE_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Scale rows to unit normals and merge facets whose normals agree to ``merge_tol``.

    Of two merged rows the smaller offset (the tighter constraint) is kept.
    """
    A = np.atleast_2d(np.asarray(normals, dtype=float))
    b = np.asarray(offsets, dtype=float).reshape(-1)
    if A.shape[0] != b.shape[0]:
        raise DimensionMismatch("normals and offsets disagree in length")
    norms = np.linalg.norm(A, axis=1)
    if np.any(norms == 0):
        raise ValueError("zero facet normal")
    A = A / norms[:, None]
    b = b / norms
    # Group rows whose normals agree to merge_tol (sup norm) and keep the tightest offset.
    label = np.arange(len(A))
    for i, j in sorted(cKDTree(A).query_pairs(merge_tol, p=np.inf)):
        root_i, root_j = label[i], label[j]
        if root_i != root_j:
            label[label == max(root_i, root_j)] = min(root_i, root_j)
    groups = np.unique(label)
    keep_b = np.array([b[label == g].min() for g in groups]) if len(groups) < len(A) else b[groups]
    return A[groups], keep_b


def _chebyshev_lp(A: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float]:
    n = A.shape[1]
    c = np.zeros(n + 1)
    c[-1] = -1.0
    res = linprog(
        c,
        A_ub=np.hstack([A, np.ones((len(A), 1))]),
        b_ub=b,
        bounds=[(None, None)] * n + [(0, None)],
        method="highs",
    )
    if res.status == 3:
        raise UnboundedBody("half-spaces admit arbitrarily large balls")
    if res.status != 0:
        raise EmptyInterior(f"Chebyshev LP failed: {res.message}")
    x = res.x[:n]
    return x, float(np.min(b - A @ x))


class Polytope(ConvexBody):
    """Shared behaviour of H- and V-polytopes; both representations are kept once computed."""

    smoothness = "polytope"

    def __init__(self, A: np.ndarray, b: np.ndarray, vertices: np.ndarray | None):
        self.A = A
        self.b = b
        self.dim = A.shape[1]
        self._vertices = vertices
        self._center: tuple[np.ndarray, float] | None = None

    # -- representations ------------------------------------------------
    @property
    def normals_(self) -> np.ndarray:
        return self.A

    @property
    def offsets(self) -> np.ndarray:
        return self.b

    @property
    def vertices(self) -> np.ndarray:
        if self._vertices is None:
            self._vertices = _enumerate_vertices(self.A, self.b, self.chebyshev_center()[0])
        return self._vertices

    def chebyshev_center(self) -> tuple[np.ndarray, float]:
        if self._center is None:
            self._center = _chebyshev_lp(self.A, self.b)
        return self._center

    def bounding_radius(self) -> float:
        c = self.chebyshev_center()[0]
        return float(np.max(np.linalg.norm(self.vertices - c, axis=1)))

    # -- body interface -------------------------------------------------
    def contains(self, x) -> np.ndarray:
        x = as_rows(x, self.dim)
        return np.all(x @ self.A.T < self.b, axis=1)

    def support(self, theta) -> np.ndarray:
        theta = as_rows(theta, self.dim)
        return np.max(theta @ self.vertices.T, axis=1)

    def gauge(self, base, v) -> np.ndarray:
        base = as_vector(base, self.dim)
        slack = self.b - self.A @ base
        if np.any(slack <= 0):
            raise BaseNotInterior(f"point {base.tolist()} is not in the interior of the polytope")
        v = as_rows(v, self.dim)
        return np.maximum(0.0, np.max((v @ self.A.T) / slack, axis=1))

    def slack(self, a) -> np.ndarray:
        a = as_vector(a, self.dim)
        return self.b - self.A @ a

    def _nearest_candidates(self, a: np.ndarray) -> np.ndarray:
        s = self.slack(a)
        return a + s[:, None] * self.A

    def nearest_boundary_points(self, a, tol: float = 1e-9):
        a = self.require_interior(a)
        s = self.slack(a)
        d = float(s.min())
        idx = np.flatnonzero(s <= d * (1.0 + tol))
        idx = idx[np.argsort(s[idx], kind="stable")]
        return d, a + s[idx, None] * self.A[idx]

    def distance(self, a) -> float:
        a = self.require_interior(a)
        return float(self.slack(a).min())

    def normals(self, a, tol: float = 1e-9) -> np.ndarray:
        """Exact N(a): outer normals of the facets at minimal distance."""
        a = self.require_interior(a)
        s = self.slack(a)
        d = s.min()
        idx = np.flatnonzero(s <= d * (1.0 + tol))
        idx = idx[np.argsort(s[idx], kind="stable")]
        return self.A[idx].copy()

    def section(self, a, nu) -> SectionData:
        a = self.require_interior(a)
        nu = as_vector(nu, self.dim)
        nu = nu / np.linalg.norm(nu)
        basis = complement_basis(nu)
        Ac = self.A @ basis.T
        bc = self.slack(a)
        live = np.linalg.norm(Ac, axis=1) > 1e-12
        Ac, bc = Ac[live], bc[live]
        if self.dim == 2:
            r = bc / Ac[:, 0]
            hi = float(np.min(r[Ac[:, 0] > 0]))
            lo = float(np.max(r[Ac[:, 0] < 0]))
            return SectionData(a, nu, basis, "interval", interval=(lo, hi))
        return SectionData(a, nu, basis, "polytope", polytope=HPolytope._trusted(Ac, bc))

    # -- transforms -----------------------------------------------------
    def translate(self, t) -> "Polytope":
        raise NotImplementedError

    def linear_map(self, M) -> "Polytope":
        raise NotImplementedError

    def is_centrally_symmetric(self, tol: float = 1e-9) -> bool:
        """Symmetric about the origin: -V equals V as point sets."""
        V = self.vertices
        for v in V:
            if np.min(np.linalg.norm(V + v, axis=1)) > tol * max(1.0, np.abs(V).max()):
                return False
        return True


class HPolytope(Polytope):
    """{x : A_i . x <= b_i for all i}, normalized to unit normals."""

    def __init__(self, normals, offsets):
        A, b = normalize_hrep(normals, offsets)
        super().__init__(A, b, None)
        n = self.dim
        for i in range(n):
            for sgn in (1.0, -1.0):
                c = np.zeros(n)
                c[i] = -sgn
                res = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * n, method="highs")
                if res.status == 3:
                    raise UnboundedBody("support is infinite in some direction")
                if res.status == 2:
                    raise EmptyInterior("half-spaces are infeasible")
        _, r = self.chebyshev_center()
        if r <= 1e-12 * max(1.0, np.abs(b).max()):
            raise EmptyInterior("polytope has empty interior")

    @classmethod
    def _trusted(cls, normals, offsets) -> "HPolytope":
        """Construct without the boundedness LPs, for inputs bounded by construction."""
        obj = cls.__new__(cls)
        A, b = normalize_hrep(normals, offsets)
        Polytope.__init__(obj, A, b, None)
        return obj

    def support_lp(self, theta) -> float:
        """sigma(theta) as a linear program; independent of vertex enumeration."""
        theta = as_vector(theta, self.dim)
        res = linprog(-theta, A_ub=self.A, b_ub=self.b, bounds=[(None, None)] * self.dim, method="highs")
        if res.status == 3:
            raise UnboundedBody("support LP unbounded")
        return float(-res.fun)

    def translate(self, t) -> "HPolytope":
        t = as_vector(t, self.dim)
        return HPolytope._trusted(self.A, self.b + self.A @ t)

    def linear_map(self, M) -> "HPolytope":
        M = np.asarray(M, dtype=float)
        return HPolytope._trusted(self.A @ np.linalg.inv(M), self.b)

    def to_spec(self) -> dict:
        return {"type": "hpolytope", "normals": self.A.tolist(), "offsets": self.b.tolist()}


class VPolytope(Polytope):
    """conv{vertices}; non-extreme input points are dropped."""

    def __init__(self, vertices):
        V = np.atleast_2d(np.asarray(vertices, dtype=float))
        if V.shape[1] == 1:
            lo, hi = float(V.min()), float(V.max())
            if hi - lo <= 0:
                raise DegenerateHull("interval has zero length")
            super().__init__(np.array([[1.0], [-1.0]]), np.array([hi, -lo]), np.array([[lo], [hi]]))
            return
        if V.shape[0] < V.shape[1] + 1:
            raise DegenerateHull("fewer than n+1 points")
        try:
            hull = ConvexHull(V)
        except QhullError as exc:
            raise DegenerateHull(str(exc)) from exc
        A, b = normalize_hrep(hull.equations[:, :-1], -hull.equations[:, -1])
        super().__init__(A, b, V[np.sort(hull.vertices)])

    def translate(self, t) -> "VPolytope":
        return VPolytope(self.vertices + as_vector(t, self.dim))

    def linear_map(self, M) -> "VPolytope":
        M = np.asarray(M, dtype=float)
        return VPolytope(self.vertices @ M.T)

    def to_spec(self) -> dict:
        return {"type": "vpolytope", "vertices": self.vertices.tolist()}


def _enumerate_vertices(A: np.ndarray, b: np.ndarray, interior: np.ndarray) -> np.ndarray:
    n = A.shape[1]
    if n == 1:
        hi = np.min(b[A[:, 0] > 0] / A[A[:, 0] > 0, 0])
        lo = np.max(b[A[:, 0] < 0] / A[A[:, 0] < 0, 0])
        return np.array([[lo], [hi]])
    try:
        hs = HalfspaceIntersection(np.hstack([A, -b[:, None]]), interior)
    except QhullError as exc:
        raise DegenerateHull(str(exc)) from exc
    pts = hs.intersections
    scale = max(1.0, float(np.abs(pts).max()))
    pts = unique_points(pts, 1e-11 * scale)
    # Near-degenerate vertices can appear twice with slightly different coordinates;
    # keep only hull vertices so the set is canonical.
    try:
        hull = ConvexHull(pts)
        pts = pts[np.sort(hull.vertices)]
    except QhullError:
        pass
    return pts


def hull_volume(poly) -> float:
    """n-volume of conv(points) by fan triangulation of the hull facets from the centroid."""
    P = poly.vertices if isinstance(poly, Polytope) else np.atleast_2d(np.asarray(poly, dtype=float))
    n = P.shape[1]
    if n == 1:
        vol = float(P.max() - P.min())
        if vol <= 0:
            raise DegenerateHull("interval has zero length")
        return vol
    try:
        hull = ConvexHull(P)
    except QhullError as exc:
        raise DegenerateHull(str(exc)) from exc
    V = P[hull.vertices]
    c = V.mean(axis=0)
    simp = P[hull.simplices] - c
    vol = float(np.sum(np.abs(np.linalg.det(simp))) / math.factorial(n))
    scale = float(np.abs(P - c).max())
    if vol <= 1e-13 * scale**n:
        raise DegenerateHull("hull is lower dimensional")
    return vol


def polar_polytope(poly: Polytope) -> Polytope:
    """Polar with respect to the origin.

    A V-polytope conv{v_i} maps to the H-polytope {y : v_i . y <= 1}; an
    H-polytope {A_i . x <= b_i} maps to the V-polytope conv{A_i / b_i}.
    """
    if isinstance(poly, VPolytope):
        V = poly.vertices
        if np.any(poly.b <= 1e-12 * max(1.0, np.abs(poly.b).max())):
            raise OriginNotInterior("origin is not interior to the hull")
        return HPolytope._trusted(V, np.ones(len(V)))
    if np.any(poly.b <= 1e-12 * max(1.0, np.abs(poly.b).max())):
        raise OriginNotInterior("some facet offset is not positive")
    return VPolytope(poly.A / poly.b[:, None])


def project_polar(poly: Polytope, subspace_basis) -> VPolytope:
    """Orthogonal projection of the polar onto span(basis), in basis coordinates."""
    Bs = np.atleast_2d(np.asarray(subspace_basis, dtype=float))
    if Bs.shape[1] != poly.dim:
        raise DimensionMismatch("basis vectors live in the wrong dimension")
    if not np.allclose(Bs @ Bs.T, np.eye(len(Bs)), atol=1e-10):
        raise ValueError("subspace basis must be orthonormal")
    if np.any(poly.b <= 1e-12 * max(1.0, np.abs(poly.b).max())):
        raise OriginNotInterior("origin is not interior")
    return VPolytope((poly.A / poly.b[:, None]) @ Bs.T)


def cube(n: int, half_width: float = 1.0) -> HPolytope:
    eye = np.eye(n)
    return HPolytope(np.vstack([eye, -eye]), np.full(2 * n, half_width))


def cross_polytope(n: int, radius: float = 1.0) -> VPolytope:
    eye = np.eye(n) * radius
    return VPolytope(np.vstack([eye, -eye]))


def regular_simplex(n: int) -> VPolytope:
    """Regular simplex with centroid at the origin and unit circumradius."""
    E = np.eye(n + 1) - 1.0 / (n + 1)
    basis = np.linalg.svd(E)[2][:n]
    V = E @ basis.T
    V /= np.linalg.norm(V[0])
    return VPolytope(V)


def random_polytope(rng: np.random.Generator, n: int, m: int | None = None, kind: str = "h") -> Polytope:
    """Random polytope containing a ball of radius >= 0.2 around the origin.

    ``kind="h"`` draws ``m`` random half-spaces with offsets in [0.3, 1.3]
    (plus a bounding cube of half-width 3 if needed); ``kind="v"`` takes the
    hull of ``m`` Gaussian points together with a small cross-polytope.
    """
    if m is None:
        m = int(rng.integers(n + 3, 4 * n + 6))
    if kind == "h":
        A = rng.standard_normal((m, n))
        b = rng.uniform(0.3, 1.3, m)
        eye = np.eye(n)
        A = np.vstack([A / np.linalg.norm(A, axis=1, keepdims=True), eye, -eye])
        b = np.concatenate([b, np.full(2 * n, 3.0)])
        return HPolytope(A, b)
    pts = rng.standard_normal((m, n))
    eye = np.eye(n) * 0.2
    return VPolytope(np.vstack([pts, eye, -eye]))
