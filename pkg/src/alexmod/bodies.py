"""Smooth and piecewise-smooth bodies: ellipsoids, planar graph domains, power-law domains."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy.optimize import brentq, minimize, minimize_scalar
from scipy.special import lambertw

from .base import ConvexBody, SectionData, as_rows, as_vector, complement_basis
from .errors import BaseNotInterior, InputError
from .sphere import icosphere_mesh, trapezoid_circle

ROTATION_TOL = 1e-12


def _sphere_samples(k: int) -> np.ndarray:
    """Well-spread unit vectors in R^k used to represent continua of nearest points."""
    if k == 1:
        return np.array([[1.0], [-1.0]])
    if k == 2:
        return trapezoid_circle(64).nodes
    if k == 3:
        return np.asarray(icosphere_mesh(2)[0])
    pts = [np.eye(k), -np.eye(k)]
    for i in range(k):
        for j in range(i + 1, k):
            for si in (1.0, -1.0):
                for sj in (1.0, -1.0):
                    v = np.zeros(k)
                    v[i], v[j] = si, sj
                    pts.append((v / math.sqrt(2.0))[None, :])
    return np.vstack(pts)


class Ellipsoid(ConvexBody):
    """{x : |diag(1/l) R^T (x - c)| < 1}; column j of ``rotation`` is the j-th principal axis."""

    def __init__(self, semi_axes, center=None, rotation=None):
        ell = as_vector(semi_axes)
        if np.any(ell <= 0):
            raise InputError("semi-axes must be strictly positive")
        n = ell.size
        self.dim = n
        self.semi_axes = ell
        self.center = np.zeros(n) if center is None else as_vector(center, n)
        rot = np.eye(n) if rotation is None else np.asarray(rotation, dtype=float)
        if rot.shape != (n, n) or not np.allclose(rot.T @ rot, np.eye(n), atol=ROTATION_TOL, rtol=0):
            raise InputError("rotation must be an orthogonal n x n matrix")
        self.rotation = rot
        self.shape_matrix = rot @ np.diag(ell**2) @ rot.T
        self.quadric = rot @ np.diag(ell**-2.0) @ rot.T

    def _local(self, x) -> np.ndarray:
        return (as_rows(x, self.dim) - self.center) @ self.rotation

    def contains(self, x) -> np.ndarray:
        y = self._local(x) / self.semi_axes
        return np.einsum("ij,ij->i", y, y) < 1.0

    def support(self, theta) -> np.ndarray:
        theta = as_rows(theta, self.dim)
        q = np.einsum("ij,jk,ik->i", theta, self.shape_matrix, theta)
        return np.sqrt(q) + theta @ self.center

    def gauge(self, base, v) -> np.ndarray:
        """Closed form: the positive root s of |p + s q| = 1 in normalized coordinates, gauge = 1/s."""
        base = as_vector(base, self.dim)
        if not bool(self.contains(base)[0]):
            raise BaseNotInterior(f"point {base.tolist()} is not in the interior of the ellipsoid")
        p = self._local(base)[0] / self.semi_axes
        q = (as_rows(v, self.dim) @ self.rotation) / self.semi_axes
        qq = np.einsum("ij,ij->i", q, q)
        pq = q @ p
        disc = pq * pq + qq * (1.0 - p @ p)
        # 1/s written as (sqrt(disc) + pq) / (1 - |p|^2) to avoid cancellation.
        return (np.sqrt(disc) + pq) / (1.0 - p @ p)

    def chebyshev_center(self) -> tuple[np.ndarray, float]:
        return self.center.copy(), float(self.semi_axes.min())

    def bounding_radius(self) -> float:
        return float(self.semi_axes.max())

    def _nearest_candidates(self, a: np.ndarray) -> np.ndarray:
        ell = self.semi_axes
        y = self._local(a)[0]
        lmin2 = float(np.min(ell**2))
        gap = ell**2 - lmin2
        minor = gap <= 1e-14 * lmin2
        cands = []

        def point(s, yy):
            return ell**2 * yy / (gap + s)

        def secular(logs, yy):
            x = point(math.exp(logs), yy) / ell
            return float(x @ x) - 1.0

        scale = float(ell.max())
        ym_small = np.linalg.norm(y[minor]) <= 1e-9 * scale
        yy = y.copy()
        if ym_small:
            yy[minor] = 0.0
        if not ym_small:
            hi = math.log(lmin2)
            lo = hi - 2.0
            while secular(lo, yy) <= 0.0:
                lo -= 2.0
            s = math.exp(brentq(secular, lo, hi, args=(yy,), xtol=1e-15, rtol=1e-15))
            cands.append(point(s, yy))
        else:
            off = ~minor
            x_off = np.zeros(self.dim)
            x_off[off] = ell[off] ** 2 * yy[off] / gap[off]
            G = float(np.sum((x_off[off] / ell[off]) ** 2)) - 1.0
            if G > 0.0:
                hi = math.log(lmin2)
                lo = hi - 2.0
                while secular(lo, yy) <= 0.0 and lo > -700:
                    lo -= 2.0
                s = math.exp(brentq(secular, lo, hi, args=(yy,), xtol=1e-15, rtol=1e-15))
                cands.append(point(s, yy))
            else:
                rad = math.sqrt(lmin2 * max(-G, 0.0))
                idx = np.flatnonzero(minor)
                for u in _sphere_samples(idx.size):
                    x = x_off.copy()
                    x[idx] = rad * u
                    cands.append(x)
            if np.linalg.norm(y[minor]) > 0.0:
                hi = math.log(lmin2)
                lo = hi - 2.0
                while secular(lo, y) <= 0.0 and lo > -700:
                    lo -= 2.0
                s = math.exp(brentq(secular, lo, hi, args=(y,), xtol=1e-15, rtol=1e-15))
                cands.append(point(s, y))
        local = np.asarray(cands)
        # Project onto the surface to remove rounding drift.
        local /= np.sqrt(np.sum((local / ell) ** 2, axis=1, keepdims=True))
        return self.center + local @ self.rotation.T

    def section(self, a, nu) -> SectionData:
        """Exact slice: an interval for n = 2, a lower-dimensional ellipsoid otherwise."""
        a = self.require_interior(a)
        nu = as_vector(nu, self.dim)
        nu = nu / np.linalg.norm(nu)
        basis = complement_basis(nu)
        Q = self.quadric
        e = a - self.center
        K = basis @ Q @ basis.T
        z0 = -np.linalg.solve(K, basis @ Q @ e)
        rhs = 1.0 - e @ Q @ e + z0 @ K @ z0
        shape = K / rhs
        if self.dim == 2:
            half = 1.0 / math.sqrt(shape[0, 0])
            return SectionData(a, nu, basis, "interval", interval=(z0[0] - half, z0[0] + half))
        return SectionData(a, nu, basis, "ellipsoid", ellipsoid=(z0, shape))

    def translate(self, t) -> "Ellipsoid":
        return Ellipsoid(self.semi_axes, self.center + as_vector(t, self.dim), self.rotation)

    def to_spec(self) -> dict:
        return {
            "type": "ellipsoid",
            "semi_axes": self.semi_axes.tolist(),
            "center": self.center.tolist(),
            "rotation": self.rotation.tolist(),
        }


def unit_ball(n: int) -> Ellipsoid:
    return Ellipsoid(np.ones(n))


def ellipsoid_polar_volume(center, shape) -> float:
    """|E°| for E = {z : (z - center)^T shape (z - center) <= 1} containing the origin."""
    from .errors import OriginNotInterior
    from .oracles import unit_ball_volume

    z0 = np.atleast_1d(np.asarray(center, dtype=float))
    S = np.atleast_2d(np.asarray(shape, dtype=float))
    k = z0.size
    if z0 @ S @ z0 >= 1.0:
        raise OriginNotInterior("origin is not interior to the ellipsoid")
    K = np.linalg.inv(S) - np.outer(z0, z0)
    w = np.linalg.solve(K, z0)
    return float(unit_ball_volume(k) * (1.0 + z0 @ w) ** (k / 2) / math.sqrt(np.linalg.det(K)))


# --------------------------------------------------------------------------
# planar graph domains
# --------------------------------------------------------------------------

EXP_FLAT_JOIN = 0.18
_EXP_CURV_PEAK = 0.2024


def _exp_h(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        return np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)


def _exp_dh(x):
    x = np.asarray(x, dtype=float)
    xs = np.where(x > 0, x, 1.0)
    with np.errstate(under="ignore"):
        return np.where(x > 0, np.exp(-1.0 / xs) / xs**2, 0.0)


def _exp_d2h(x):
    x = np.asarray(x, dtype=float)
    xs = np.where(x > 0, x, 1.0)
    with np.errstate(under="ignore"):
        return np.where(x > 0, np.exp(-1.0 / xs) * (1.0 - 2.0 * xs) / xs**4, 0.0)


def _exp_dh_inverse(s):
    # u = 1/x solves u^2 exp(-u) = s, i.e. u = -2 W_{-1}(-sqrt(s)/2) on the branch u > 2.
    s = np.asarray(s, dtype=float)
    pos = s > 0
    w = lambertw(-0.5 * np.sqrt(np.where(pos, s, 1e-300)), -1).real
    return np.where(pos, -1.0 / (2.0 * w), 0.0)


def _exp_curvature(x: float) -> float:
    return float(_exp_d2h(x) / (1.0 + _exp_dh(x) ** 2) ** 1.5)


def _exp_arc(x_a: float, r: float) -> tuple[float, float]:
    m = float(_exp_dh(x_a))
    root = math.sqrt(1.0 + m * m)
    return x_a - r * m / root, float(_exp_h(x_a)) + r / root


class GraphDomain2D(ConvexBody):
    """{(x1, x2) : |x1| < R, h(x1) < x2 < D - h(x1)} for an even convex profile h with h(R) = D/2.

    Profiles
    --------
    ``power``
        h(x) = (D/2) (|x|/R)^p, p > 1.
    ``exp_flat``
        h(x) = exp(-1/|x|) for |x| <= x_a, continued by the circular arc of
        radius r that is tangent to it at x_a and becomes vertical at |x| = R.
        Curvature is nondecreasing toward R as long as x_a stays below the
        curvature peak of exp(-1/x) (near 0.2024) and r <= 1/kappa(x_a).
        R and D are tied to (x_a, r); giving one of them fixes r, giving both
        fixes x_a as well.
    ``custom_monotone``
        User supplied callables ``h`` and ``dh`` on [0, R]; the curvature
        hypothesis is trusted.
    """

    dim = 2
    smoothness = "piecewise"

    def __init__(
        self,
        h_kind: str = "power",
        R: float | None = None,
        D: float | None = None,
        p: float | None = None,
        x_a: float | None = None,
        h: Callable | None = None,
        dh: Callable | None = None,
    ):
        self.h_kind = h_kind
        if h_kind == "power":
            if p is None or p <= 1:
                raise InputError("power profile needs p > 1")
            self.R = 1.0 if R is None else float(R)
            self.D = 2.0 if D is None else float(D)
            self.p = float(p)
        elif h_kind == "exp_flat":
            self._setup_exp(R, D, x_a)
        elif h_kind == "custom_monotone":
            if h is None or dh is None or R is None or D is None:
                raise InputError("custom profile needs h, dh, R and D")
            self.R, self.D = float(R), float(D)
            self._h, self._dh = h, dh
            if abs(float(h(self.R)) - self.D / 2) > 1e-9 * self.D:
                raise InputError("custom profile must satisfy h(R) = D/2")
        else:
            raise InputError(f"unknown profile {h_kind!r}")
        if self.R <= 0 or self.D <= 0:
            raise InputError("R and D must be positive")
        self._center = np.array([0.0, self.D / 2])
        self._grid = np.linspace(0.0, 1.0, 257)

    # -- profile ----------------------------------------------------------
    def _setup_exp(self, R, D, x_a):
        """Pick the join point x_a and arc radius r from whichever of (R, D, x_a) are given.

        Without x_a and with at most one of R, D the join is curvature
        continuous (r = 1/kappa(x_a)); with both R and D the join point is
        solved for on the branch where r <= 1/kappa(x_a).
        """
        lo, hi = 0.05, _EXP_CURV_PEAK - 1e-4

        def r_from_R(xa, RR):
            mm = float(_exp_dh(xa))
            return (RR - xa) / (1.0 - mm / math.sqrt(1.0 + mm * mm))

        def r_from_D(xa, DD):
            mm = float(_exp_dh(xa))
            return (DD / 2 - float(_exp_h(xa))) * math.sqrt(1.0 + mm * mm)

        def solve(fn, a, b, what):
            fa, fb = fn(a), fn(b)
            if abs(fb) <= 1e-12:
                return b
            if fa * fb > 0:
                raise InputError(f"no exp_flat profile with monotone curvature matches {what}")
            return brentq(fn, a, b, xtol=1e-15)

        if x_a is not None:
            x_a = float(x_a)
            if not 0.0 < x_a < _EXP_CURV_PEAK:
                raise InputError("exp_flat join point must lie in (0, 0.2024)")
            if R is not None:
                r = r_from_R(x_a, float(R))
            elif D is not None:
                r = r_from_D(x_a, float(D))
            else:
                r = 1.0 / _exp_curvature(x_a)
        elif R is None and D is None:
            x_a = EXP_FLAT_JOIN
            r = 1.0 / _exp_curvature(x_a)
        elif D is None:
            x_a = solve(lambda xa: r_from_R(xa, float(R)) * _exp_curvature(xa) - 1.0, lo, hi, f"R={R}")
            r = 1.0 / _exp_curvature(x_a)
        elif R is None:
            x_a = solve(lambda xa: r_from_D(xa, float(D)) * _exp_curvature(xa) - 1.0, lo, hi, f"D={D}")
            r = 1.0 / _exp_curvature(x_a)
        else:
            RR, DD = float(R), float(D)

            def edge(xa):
                # the admissible branch ends where the arc radius reaches 1/kappa
                return r_from_R(xa, RR) * _exp_curvature(xa) - 1.0

            top = solve(edge, lo, hi, f"R={R}") if edge(hi) > 0 else hi
            x_a = solve(lambda xa: 2.0 * _exp_arc(xa, r_from_R(xa, RR))[1] - DD, lo, top, f"(R, D)=({R}, {D})")
            r = r_from_R(x_a, RR)
        if not 0.0 < r <= (1.0 + 1e-9) / _exp_curvature(x_a):
            raise InputError("exp_flat arc radius must lie in (0, 1/kappa(x_a)] for monotone curvature")
        cx, cy = _exp_arc(x_a, r)
        self.x_a, self.arc_radius, self.arc_center = x_a, r, (cx, cy)
        self.R, self.D = cx + r, 2.0 * cy
        if R is not None and D is not None and abs(self.D - float(D)) > 1e-9 * float(D):
            raise InputError("exp_flat (R, D, x_a) are inconsistent")

    def h(self, x) -> np.ndarray:
        x = np.abs(np.asarray(x, dtype=float))
        if self.h_kind == "power":
            return 0.5 * self.D * (x / self.R) ** self.p
        if self.h_kind == "exp_flat":
            cx, cy = self.arc_center
            r = self.arc_radius
            arc = cy - np.sqrt(np.maximum(r * r - (np.minimum(x, self.R) - cx) ** 2, 0.0))
            return np.where(x <= self.x_a, _exp_h(x), arc)
        return np.asarray(self._h(x), dtype=float)

    def dh(self, x) -> np.ndarray:
        """h' on x >= 0 (infinite at R for exp_flat)."""
        x = np.asarray(x, dtype=float)
        if self.h_kind == "power":
            return 0.5 * self.D * self.p * x ** (self.p - 1) / self.R**self.p
        if self.h_kind == "exp_flat":
            cx, _ = self.arc_center
            r = self.arc_radius
            u = x - cx
            with np.errstate(divide="ignore"):
                arc = u / np.sqrt(np.maximum(r * r - u * u, 0.0))
            return np.where(x <= self.x_a, _exp_dh(x), arc)
        return np.asarray(self._dh(x), dtype=float)

    def curvature(self, x) -> np.ndarray:
        """Curvature of the lower boundary curve at abscissa x."""
        x = np.abs(np.asarray(x, dtype=float))
        if self.h_kind == "power":
            d2 = 0.5 * self.D * self.p * (self.p - 1) * x ** (self.p - 2) / self.R**self.p
            return d2 / (1.0 + self.dh(x) ** 2) ** 1.5
        if self.h_kind == "exp_flat":
            return np.where(x <= self.x_a, _exp_d2h(x) / (1.0 + _exp_dh(x) ** 2) ** 1.5, 1.0 / self.arc_radius)
        raise NotImplementedError("curvature of a custom profile is not available")

    def dh_inverse(self, s) -> np.ndarray:
        """x in [0, R] with h'(x) = s (clipped to R when s exceeds h'(R))."""
        s = np.asarray(s, dtype=float)
        if self.h_kind == "power":
            x = (s * 2.0 * self.R**self.p / (self.D * self.p)) ** (1.0 / (self.p - 1))
            return np.minimum(x, self.R)
        if self.h_kind == "exp_flat":
            m = float(_exp_dh(self.x_a))
            cx, _ = self.arc_center
            arc = cx + s * self.arc_radius / np.sqrt(1.0 + s * s)
            flat = _exp_dh_inverse(np.minimum(s, m))
            return np.where(s <= m, flat, np.minimum(arc, self.R))
        return _bisect_increasing(self._dh, s, 0.0, self.R)

    def h_inverse(self, delta: float) -> float:
        """x in [0, R] with h(x) = delta."""
        if self.h_kind == "power":
            return float(self.R * (2.0 * delta / self.D) ** (1.0 / self.p))
        if self.h_kind == "exp_flat" and delta <= float(_exp_h(self.x_a)):
            return -1.0 / math.log(delta)
        return float(brentq(lambda x: float(self.h(x)) - delta, 0.0, self.R, xtol=1e-15, rtol=1e-15))

    # -- body interface -------------------------------------------------
    def contains(self, x) -> np.ndarray:
        x = as_rows(x, 2)
        ax = np.abs(x[:, 0])
        inside = ax < self.R
        hv = self.h(np.minimum(ax, self.R))
        return inside & (x[:, 1] > hv) & (x[:, 1] < self.D - hv)

    def support(self, theta) -> np.ndarray:
        theta = as_rows(theta, 2)
        t1, t2 = theta[:, 0], theta[:, 1]
        a2 = np.abs(t2)
        with np.errstate(divide="ignore", invalid="ignore"):
            slope = np.where(a2 > 0, np.abs(t1) / np.where(a2 > 0, a2, 1.0), np.inf)
        x = np.where(np.isfinite(slope), self.dh_inverse(np.where(np.isfinite(slope), slope, 0.0)), self.R)
        return np.abs(t1) * x - a2 * self.h(x) + np.maximum(t2, 0.0) * self.D

    def chebyshev_center(self) -> tuple[np.ndarray, float]:
        return self._center.copy(), self.distance(self._center)

    def bounding_radius(self) -> float:
        return math.hypot(self.R, self.D / 2)

    def _quarter_pieces(self):
        """Parametrizations of the lower boundary curve over x in [0, R] as (fn, t_lo, t_hi)."""
        if self.h_kind == "exp_flat":
            cx, cy = self.arc_center
            r = self.arc_radius
            phi_a = math.atan2(self.x_a - cx, cy - float(_exp_h(self.x_a)))

            def flat(t):
                return np.column_stack([t, _exp_h(t)])

            def arc(phi):
                return np.column_stack([cx + r * np.sin(phi), cy - r * np.cos(phi)])

            return [(flat, 0.0, self.x_a), (arc, phi_a, 0.5 * math.pi)]

        def graph(t):
            return np.column_stack([t, self.h(t)])

        return [(graph, 0.0, self.R)]

    def _nearest_candidates(self, a: np.ndarray) -> np.ndarray:
        refl = [(sx, sy) for sx in (1.0, -1.0) for sy in (1.0, -1.0)]
        out = []
        grids = []
        best = math.inf
        for fn, lo, hi in self._quarter_pieces():
            t = lo + (hi - lo) * self._grid
            pts = fn(t)
            for sx, sy in refl:
                q = np.array([sx * a[0], a[1] if sy > 0 else self.D - a[1]])
                d2 = np.sum((pts - q) ** 2, axis=1)
                grids.append((fn, t, q, d2, sx, sy))
                best = min(best, float(np.sqrt(d2.min())))
        for fn, t, q, d2, sx, sy in grids:
            spacing = float(np.max(np.linalg.norm(np.diff(fn(t), axis=0), axis=1)))
            cutoff = (best + 2.0 * spacing) ** 2
            m = len(t)
            is_min = np.ones(m, dtype=bool)
            is_min[1:] &= d2[1:] <= d2[:-1]
            is_min[:-1] &= d2[:-1] <= d2[1:]
            for i in np.flatnonzero(is_min & (d2 <= cutoff)):
                lo, hi = t[max(i - 1, 0)], t[min(i + 1, m - 1)]

                def obj(s):
                    return float(np.sum((fn(np.array([s]))[0] - q) ** 2))

                res = minimize_scalar(obj, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13 * max(1.0, abs(hi))})
                cand = [res.x, lo, hi]
                vals = [obj(c) for c in cand]
                y = fn(np.array([cand[int(np.argmin(vals))]]))[0]
                out.append([sx * y[0], y[1] if sy > 0 else self.D - y[1]])
        return np.asarray(out)

    def to_spec(self) -> dict:
        spec = {"type": "graph2d", "h": self.h_kind, "R": self.R, "D": self.D}
        if self.h_kind == "power":
            spec["p"] = self.p
        elif self.h_kind == "exp_flat":
            spec["x_a"] = self.x_a
        return spec


def _bisect_increasing(fn, target, lo: float, hi: float, steps: int = 64) -> np.ndarray:
    target = np.asarray(target, dtype=float)
    a = np.full(target.shape, lo)
    b = np.full(target.shape, hi)
    for _ in range(steps):
        mid = 0.5 * (a + b)
        below = np.asarray(fn(mid)) < target
        a = np.where(below, mid, a)
        b = np.where(below, b, mid)
    return 0.5 * (a + b)


# --------------------------------------------------------------------------
# power-law domains
# --------------------------------------------------------------------------


class PowerDomain(ConvexBody):
    """Truncated region above g(x') = eta * sum_j |x_j|^{p_j}.

    Coordinates are ordered (power coordinates x_1..x_k, free coordinates,
    height x_n).  Free coordinates are confined to |x_i| < w_i.  The cap is

    * ``"flat"``: g(x') < x_n < height;
    * ``"mirror"``: g(x') < x_n < height - g(x'), the reflection of the lower
      surface, which keeps the upper boundary curved so that the only flat
      behaviour of the body is the one prescribed by the exponents.
    """

    smoothness = "piecewise"

    def __init__(self, eta: float, exponents, height: float, box=None, cap: str = "flat", dim: int | None = None):
        p = np.atleast_1d(np.asarray(exponents, dtype=float))
        w = np.zeros(0) if box is None else np.atleast_1d(np.asarray(box, dtype=float))
        n = p.size + w.size + 1 if dim is None else int(dim)
        if p.size + w.size + 1 != n:
            raise InputError("need len(exponents) + len(box) = n - 1")
        if not 1 <= p.size <= n - 1:
            raise InputError("need 1 <= k <= n - 1 exponents")
        if np.any(p <= 1):
            raise InputError("exponents must exceed 1")
        if eta <= 0 or height <= 0 or np.any(w <= 0):
            raise InputError("eta, height and box half-widths must be positive")
        if cap not in ("flat", "mirror"):
            raise InputError("cap must be 'flat' or 'mirror'")
        self.dim = n
        self.eta, self.p, self.box, self.height, self.cap = float(eta), p, w, float(height), cap
        self.k = p.size
        self.level = self.height if cap == "flat" else self.height / 2
        self._cheb: tuple[np.ndarray, float] | None = None

    def g(self, xp) -> np.ndarray:
        xp = np.atleast_2d(np.asarray(xp, dtype=float))
        return self.eta * np.sum(np.abs(xp) ** self.p, axis=1)

    def contains(self, x) -> np.ndarray:
        x = as_rows(x, self.dim)
        gv = self.g(x[:, : self.k])
        top = self.height if self.cap == "flat" else self.height - gv
        ok = (x[:, -1] > gv) & (x[:, -1] < top)
        if self.box.size:
            ok &= np.all(np.abs(x[:, self.k : -1]) < self.box, axis=1)
        return ok

    def _x_of_s(self, tp: np.ndarray, s: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", over="ignore"):
            mag = (np.abs(tp) / (s[:, None] * self.eta * self.p)) ** (1.0 / (self.p - 1))
        return np.sign(tp) * mag

    def support(self, theta) -> np.ndarray:
        theta = as_rows(theta, self.dim)
        tp = theta[:, : self.k]
        tn = theta[:, -1]
        out = np.abs(theta[:, self.k : -1]) @ self.box if self.box.size else np.zeros(len(theta))
        if self.cap == "flat":
            c = np.maximum(-tn, 0.0)
            out = out + np.maximum(tn, 0.0) * self.height
        else:
            c = np.abs(tn)
            out = out + np.maximum(tn, 0.0) * self.height
        L = self.level
        if self.k == 1:
            xL = (L / self.eta) ** (1.0 / self.p[0])
            sL = np.abs(tp[:, 0]) / (self.eta * self.p[0] * xL ** (self.p[0] - 1))
        else:
            sL = self._level_multiplier(tp, L)
        s = np.maximum(c, sL)
        zero = np.all(tp == 0, axis=1)
        s = np.where(zero, 1.0, s)
        x = self._x_of_s(tp, s)
        x[zero] = 0.0
        return out + np.sum(tp * x, axis=1) - c * self.g(x)

    def _level_multiplier(self, tp: np.ndarray, L: float) -> np.ndarray:
        """s with g(x(s)) = L, by bisection in log s (g decreases in s)."""
        nz = np.any(tp != 0, axis=1)
        lo = np.full(len(tp), -60.0)
        hi = np.full(len(tp), 60.0)
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            gm = self.g(self._x_of_s(tp, np.exp(mid)))
            above = gm > L
            lo = np.where(above, mid, lo)
            hi = np.where(above, hi, mid)
        return np.where(nz, np.exp(0.5 * (lo + hi)), 0.0)

    def chebyshev_center(self) -> tuple[np.ndarray, float]:
        if self._cheb is None:
            c = np.zeros(self.dim)
            if self.cap == "mirror":
                c[-1] = self.height / 2
                self._cheb = (c, self.distance(c))
            else:
                def neg(t):
                    z = np.zeros(self.dim)
                    z[-1] = t
                    return -self.distance(z)

                res = minimize_scalar(neg, bounds=(0.0, self.height), method="bounded",
                                      options={"xatol": 1e-12 * self.height})
                c[-1] = res.x
                self._cheb = (c, -float(res.fun))
        return self._cheb[0].copy(), self._cheb[1]

    def bounding_radius(self) -> float:
        ext = (self.level / self.eta) ** (1.0 / self.p)
        c = self.height / 2
        return float(math.sqrt(np.sum(ext**2) + np.sum(self.box**2) + c * c))

    def _surface_candidates(self, a: np.ndarray) -> list[np.ndarray]:
        """Local minimisers of |a - (x', g(x'))| over the untruncated lower surface."""
        k = self.k
        ap, an = a[:k], a[-1]
        if k == 1:
            p = self.p[0]
            span = max(abs(ap[0]), ((abs(an) + self.diameter_bound()) / self.eta) ** (1.0 / p))
            t = np.linspace(-span, span, 513)
            d2 = (t - ap[0]) ** 2 + (an - self.eta * np.abs(t) ** p) ** 2
            best = float(d2.min())
            cut = (math.sqrt(best) + 4 * span / 512 * (1 + self.eta * p * span ** (p - 1))) ** 2
            out = []
            for i in np.flatnonzero((d2 <= cut) & np.r_[True, d2[1:] <= d2[:-1]] & np.r_[d2[:-1] <= d2[1:], True]):
                lo, hi = t[max(i - 1, 0)], t[min(i + 1, len(t) - 1)]

                def obj(s):
                    return (s - ap[0]) ** 2 + (an - self.eta * abs(s) ** p) ** 2

                res = minimize_scalar(obj, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13 * max(1.0, span)})
                out.append(np.array([res.x]))
            return out

        sgn = np.where(ap >= 0, 1.0, -1.0)

        def obj(u):
            x = sgn * u
            r = an - self.eta * np.sum(u**self.p)
            return float(np.sum((x - ap) ** 2) + r * r)

        def grad(u):
            x = sgn * u
            r = an - self.eta * np.sum(u**self.p)
            dg = self.eta * self.p * u ** (self.p - 1)
            return 2.0 * sgn * (x - ap) - 2.0 * r * dg

        starts = [np.abs(ap), 0.5 * np.abs(ap), np.full(k, 1e-3)]
        best = None
        for u0 in starts:
            res = minimize(obj, u0, jac=grad, method="L-BFGS-B", bounds=[(0, None)] * k,
                           options={"ftol": 1e-15, "gtol": 1e-13, "maxiter": 500})
            if best is None or res.fun < best.fun:
                best = res
        u = best.x
        out = [sgn * u]
        for j in np.flatnonzero((ap == 0) & (u > 0)):
            flipped = sgn * u
            flipped[j] = -flipped[j]
            out.append(flipped)
        return out

    def _nearest_candidates(self, a: np.ndarray) -> np.ndarray:
        k = self.k
        cands = []
        for xp in self._surface_candidates(a):
            y = a.copy()
            y[:k] = xp
            y[-1] = self.g(xp)[0]
            cands.append(y)
        if self.cap == "flat":
            y = a.copy()
            y[-1] = self.height
            cands.append(y)
        else:
            b = a.copy()
            b[-1] = self.height - a[-1]
            for xp in self._surface_candidates(b):
                y = a.copy()
                y[:k] = xp
                y[-1] = self.height - self.g(xp)[0]
                cands.append(y)
        for i, w in enumerate(self.box):
            j = k + i
            for sgn in (1.0, -1.0):
                y = a.copy()
                y[j] = sgn * w
                cands.append(y)
        return np.asarray(cands)

    def to_spec(self) -> dict:
        spec = {"type": "power_domain", "eta": self.eta, "exponents": self.p.tolist(), "height": self.height,
                "box": self.box.tolist(), "cap": self.cap}
        return spec


# --------------------------------------------------------------------------
# body-spec JSON
# --------------------------------------------------------------------------


def body_from_spec(spec: dict) -> ConvexBody:
    """Build a body from its JSON mapping; malformed input raises :class:`InputError`."""
    from .polytope import HPolytope, VPolytope

    if not isinstance(spec, dict) or "type" not in spec:
        raise InputError("body spec must be an object with a 'type' field")
    kind = spec["type"]
    try:
        if kind == "hpolytope":
            return HPolytope(spec["normals"], spec["offsets"])
        if kind == "vpolytope":
            return VPolytope(spec["vertices"])
        if kind == "ellipsoid":
            return Ellipsoid(spec["semi_axes"], spec.get("center"), spec.get("rotation"))
        if kind == "graph2d":
            return GraphDomain2D(spec.get("h", "power"), spec.get("R"), spec.get("D"), spec.get("p"), spec.get("x_a"))
        if kind == "power_domain":
            return PowerDomain(spec["eta"], spec["exponents"], spec["height"], spec.get("box"), spec.get("cap", "flat"))
    except KeyError as exc:
        raise InputError(f"body spec of type {kind!r} is missing field {exc}") from None
    except (TypeError, np.linalg.LinAlgError) as exc:
        raise InputError(f"malformed {kind!r} spec: {exc}") from None
    raise InputError(f"unknown body type {kind!r}")
