"""Polar volumes f(a) = |(Omega - a)°| and the modulus omega(delta) = sup{f(a)^{-1/n} : d(a) <= delta}."""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import stats
from scipy.optimize import brentq, linprog, minimize

from .base import ConvexBody, as_vector, complement_basis
from .errors import (
    CurveTooNarrow,
    DeltaExceedsInradius,
    InsufficientPoints,
    OriginNotInterior,
    PointNotInterior,
    QuadratureNotConverged,
)
from .geometry import section_polar_volume
from .oracles import flat_spot_radius, unit_ball_volume
from .polytope import Polytope, VPolytope, hull_volume, polar_polytope, regular_simplex
from .sphere import SphereRule, default_rule, dilate_toward_pole

log = logging.getLogger(__name__)

MIN_BOUNDARY_DISTANCE = 1e-6
DEFAULT_QUAD_TOL = 1e-3
MAX_POLES = 4


@dataclass(frozen=True)
class PolarBody:
    """(Omega - base)° together with its volume f(base).

    ``polytope`` holds the exact polar for polytopes; otherwise ``radial``
    maps unit directions to the radial function 1/sigma_{Omega-base}.
    ``error`` is the estimated absolute quadrature error (zero on the exact path).
    """

    base: np.ndarray
    volume: float
    method: str
    polytope: VPolytope | None = None
    radial: Callable | None = None
    error: float = 0.0


def _exact_polar(body: Polytope, a: np.ndarray) -> VPolytope:
    slack = body.b - body.A @ a
    if np.any(slack <= 0):
        raise PointNotInterior(f"point {a.tolist()} is not in the interior of the polytope")
    return VPolytope(body.A / slack[:, None])


def _crossing_angles(body: ConvexBody, a: np.ndarray, pole: np.ndarray, level: float) -> np.ndarray:
    """Angles along great circles from ``pole`` at which sigma_{Omega-a} first reaches ``level``."""
    tang = complement_basis(pole)
    tang = np.vstack([tang, -tang])
    lo = np.zeros(len(tang))
    hi = np.full(len(tang), math.pi)

    def sig(phi):
        dirs = np.cos(phi)[:, None] * pole + np.sin(phi)[:, None] * tang
        return body.support_at(dirs, a)

    reach = sig(hi) >= level
    hi = np.where(reach, hi, math.pi)
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        above = sig(mid) >= level
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    return np.where(reach, 0.5 * (lo + hi), math.pi)


def _peak_poles(body: ConvexBody, a: np.ndarray, d: float) -> list[tuple[np.ndarray, float]]:
    """Directions where sigma_{Omega-a}^{-n} is sharply peaked, with their dilation factors."""
    cand = np.atleast_2d(body._nearest_candidates(a))
    dist = np.linalg.norm(cand - a, axis=1)
    order = np.argsort(dist, kind="stable")
    poles: list[tuple[np.ndarray, float]] = []
    for i in order:
        if dist[i] > 10.0 * d or len(poles) >= MAX_POLES:
            break
        nu = (cand[i] - a) / dist[i]
        level = 2.0 * float(body.support_at(nu, a)[0])
        phi = _crossing_angles(body, a, nu, level)
        lam = float(np.clip(np.exp(np.mean(np.log(np.maximum(phi, 1e-12)))) / 2.0, 1e-9, 1.0))
        if any(math.acos(min(1.0, float(nu @ p))) < 0.5 * min(lam, lp) for p, lp in poles):
            continue
        poles.append((nu, lam))
    return poles


def _pole_density(nodes: np.ndarray, pole: np.ndarray, lam: float) -> np.ndarray:
    """Node density (relative to the base rule) produced by :func:`dilate_toward_pole`."""
    if lam >= 1.0:
        return np.ones(len(nodes))
    n = nodes.shape[1]
    tp = nodes @ pole
    return (2.0 * lam / (lam * lam * (1.0 + tp) + (1.0 - tp))) ** (n - 1)


def _radial_integral(body: ConvexBody, a: np.ndarray, rule: SphereRule, poles) -> np.ndarray:
    """Per-node contributions to (1/n) * integral of sigma^{-n}, blended across poles."""
    n = body.dim
    parts = []
    for nu, lam in poles:
        r = dilate_toward_pole(rule, nu, lam)
        sig = body.support_at(r.nodes, a)
        if np.any(sig <= 0):
            raise PointNotInterior("support function is not positive; base point is not interior")
        share = _pole_density(r.nodes, nu, lam)
        total = sum(_pole_density(r.nodes, p, lp) for p, lp in poles)
        parts.append(r.weights * sig ** (-float(n)) * (share / total) / n)
    return np.concatenate(parts)


def f_omega(body: ConvexBody, a, tol: float = DEFAULT_QUAD_TOL, method: str | None = None, seed: int = 0) -> PolarBody:
    """f(a) = |(Omega - a)°|.

    Polytopes use the exact path (polar vertices A_i / (b_i - A_i a) and a hull
    volume).  Other bodies, or ``method="radial"``, integrate
    (1/n) sigma_{Omega-a}(theta)^{-n} over the sphere.  The base rule is
    composed with a stereographic dilation toward each sharp peak of the
    integrand (the directions of nearby boundary points), blended by a
    partition of unity so that each peak is resolved by its own dilated rule.
    """
    a = as_vector(a, body.dim)
    if method is None:
        method = "exact" if isinstance(body, Polytope) else "radial"
    if method == "exact":
        if not isinstance(body, Polytope):
            raise ValueError("exact path is only available for polytopes")
        polar = _exact_polar(body, a)
        return PolarBody(a, hull_volume(polar), "exact", polytope=polar)

    n = body.dim
    d = body.distance(a)
    if d < MIN_BOUNDARY_DISTANCE:
        raise QuadratureNotConverged(
            f"boundary distance {d:.3g} is below {MIN_BOUNDARY_DISTANCE:g}; use a closed form or asymptotic"
        )
    poles = _peak_poles(body, a, d)
    if not poles:
        poles = [(np.eye(n)[0], 1.0)]
    fine = _radial_integral(body, a, default_rule(n, seed=seed), poles)
    value = float(fine.sum())
    if n == 2:
        err = abs(value - float(_radial_integral(body, a, default_rule(2, coarse=True), poles).sum()))
    elif n == 3:
        err = abs(value - float(_radial_integral(body, a, default_rule(3, coarse=True), poles).sum())) / 3.0
    else:
        m = len(fine) // len(poles)
        halves = fine.reshape(len(poles), 2, m // 2).sum(axis=(0, 2)) * 2.0
        err = abs(halves[0] - halves[1]) / 2.0
    if not np.isfinite(value) or value <= 0 or err > tol * value:
        raise QuadratureNotConverged(f"estimated relative error {err / value:.3g} exceeds tol={tol:g}")

    def radial(theta, _a=a):
        return 1.0 / body.support_at(theta, _a)

    return PolarBody(a, value, "radial", radial=radial, error=err)


@dataclass(frozen=True)
class WorkhorseResult:
    lo: float
    hi: float
    f: float
    d: float
    nu: np.ndarray
    section_polar: float

    @property
    def holds(self) -> bool:
        return self.lo <= self.f <= self.hi


def workhorse_bounds(body: ConvexBody, a, tol: float = DEFAULT_QUAD_TOL) -> WorkhorseResult:
    """lo = |S°|/(n d) and hi = 2|S°|/d for the first nearest-normal nu, together with f(a)."""
    a = as_vector(a, body.dim)
    nu = body.normals(a)[0]
    d = body.distance(a)
    sp = section_polar_volume(body, a, nu)
    n = body.dim
    f = f_omega(body, a, tol=tol).volume
    return WorkhorseResult(sp / (n * d), 2.0 * sp / d, f, d, nu, sp)


# --------------------------------------------------------------------------
# sampling harness for omega
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class OmegaOptions:
    boundary_samples: int = 64
    refine_iters: int = 12
    seed: int = 0
    tol: float = DEFAULT_QUAD_TOL
    interior: bool = True


@dataclass
class _Eval:
    a: np.ndarray
    value: float
    f: float
    err: float
    level: bool
    lo: float = -math.inf
    hi: float = math.inf


@dataclass(frozen=True)
class OmegaResult:
    """Sampled estimate of omega(delta): a lower bound of the true supremum."""

    value: float
    argmax: np.ndarray
    samples_used: int
    sampling_tol: float
    quad_err: float
    lower: float = math.nan
    upper: float = math.nan


def _fibonacci_sphere(m: int) -> np.ndarray:
    i = np.arange(m) + 0.5
    z = 1.0 - 2.0 * i / m
    phi = math.pi * (1.0 + math.sqrt(5.0)) * i
    r = np.sqrt(1.0 - z * z)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def ray_directions(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """Deterministic, roughly uniform directions including the coordinate axes."""
    if n == 2:
        m = 4 * max(1, -(-m // 4))
        t = 2.0 * math.pi * np.arange(m) / m
        return np.column_stack([np.cos(t), np.sin(t)])
    eye = np.eye(n)
    base = [eye, -eye]
    if n == 3:
        base.append(_fibonacci_sphere(m))
    else:
        for i in range(n):
            for j in range(i + 1, n):
                for si in (1.0, -1.0):
                    for sj in (1.0, -1.0):
                        v = np.zeros(n)
                        v[i], v[j] = si, sj
                        base.append(v[None, :] / math.sqrt(2.0))
    extra = rng.standard_normal((max(m // 4, 4), n))
    base.append(extra / np.linalg.norm(extra, axis=1, keepdims=True))
    return np.vstack(base)


class _Scan:
    """Shared machinery for omega and the sandwich bounds at one delta."""

    def __init__(self, body: ConvexBody, delta: float, opts: OmegaOptions, task_index: int, bounds: bool):
        self.body = body
        self.delta = float(delta)
        self.opts = opts
        self.bounds = bounds
        self.rng = np.random.default_rng([opts.seed, task_index])
        self.center, self.inradius = body.chebyshev_center()
        self.scale = body.diameter_bound()
        self.evals: list[_Eval] = []
        if not 0.0 < self.delta <= self.inradius * (1.0 + 1e-9):
            raise DeltaExceedsInradius(f"delta={delta:g} must lie in (0, inradius={self.inradius:.6g}]")

    def _dist(self, x: np.ndarray) -> float:
        if not bool(self.body.contains(x)[0]):
            return 0.0
        return self.body.distance(x)

    def level_point(self, theta: np.ndarray) -> tuple[np.ndarray, float] | None:
        """Point on the ray from the center at boundary distance delta, and the ray's exit length."""
        tmax = 1.0 / float(self.body.gauge(self.center, theta)[0])
        if self.delta >= self.inradius * (1.0 - 1e-12):
            return self.center.copy(), tmax
        t = brentq(lambda s: self._dist(self.center + s * theta) - self.delta, 0.0, tmax,
                   xtol=1e-12 * self.scale, rtol=1e-15)
        return self.center + t * theta, tmax

    def evaluate(self, a: np.ndarray, level: bool) -> _Eval | None:
        n = self.body.dim
        try:
            pb = f_omega(self.body, a, tol=self.opts.tol, seed=self.opts.seed)
        except QuadratureNotConverged:
            if level:
                raise
            return None
        ev = _Eval(a, pb.volume ** (-1.0 / n), pb.volume, pb.error, level)
        if self.bounds:
            self._attach_bounds(ev)
        self.evals.append(ev)
        return ev

    def _attach_bounds(self, ev: _Eval) -> None:
        n = self.body.dim
        normals = self.body.normals(ev.a)
        sp = np.array([section_polar_volume(self.body, ev.a, nu) for nu in normals])
        if ev.level:
            ev.lo = float(np.max((self.delta / (2.0 * sp)) ** (1.0 / n)))
        ev.hi = float(np.min((n * self.delta / sp) ** (1.0 / n)))

    @staticmethod
    def _better(x: _Eval, y: _Eval | None) -> bool:
        if y is None or x.value > y.value:
            return True
        return x.value == y.value and tuple(x.a) < tuple(y.a)

    def run(self) -> OmegaResult:
        n = self.body.dim
        if self.delta >= self.inradius * (1.0 - 1e-12):
            ev = self.evaluate(self.center.copy(), True)
            if not self.opts.interior:
                return self._result(ev, 0.0)
            best, tol = self._body_wide(ev)
            return self._result(best, tol)
        dirs = ray_directions(n, self.opts.boundary_samples, self.rng)
        best: _Eval | None = None
        best_dir = None
        for theta in dirs:
            a, tmax = self.level_point(theta)
            ev = self.evaluate(a, True)
            if self._better(ev, best):
                best, best_dir = ev, theta
            if self.opts.interior:
                t_lvl = float(np.linalg.norm(a - self.center))
                mid = self.center + 0.5 * (t_lvl + tmax) * theta
                if self._dist(mid) >= 2.0 * MIN_BOUNDARY_DISTANCE:
                    ev = self.evaluate(mid, False)
                    if ev is not None and self._better(ev, best):
                        best, best_dir = ev, theta
        before = best.value
        best = self._refine(best, best_dir, dirs)
        return self._result(best, (best.value - before) / best.value)

    def _body_wide(self, start: _Eval) -> tuple[_Eval, float]:
        """At delta = inradius every point qualifies: maximise f^{-1/n} over the whole body.

        f is convex in the base point, so a local search from the centre finds
        the global minimum of f.  The returned tolerance is the spread of the
        final simplex on the omega scale, or the total gain if the search did
        not converge.
        """
        best = start
        floor = 2.0 * MIN_BOUNDARY_DISTANCE

        def objective(x):
            nonlocal best
            if self._dist(x) < floor:
                return math.inf
            ev = self.evaluate(np.asarray(x, dtype=float), False)
            if ev is None:
                return math.inf
            if self._better(ev, best):
                best = ev
            return ev.f

        n = self.body.dim
        simplex = np.vstack([self.center, self.center + 0.25 * self.inradius * np.eye(n)])
        res = minimize(objective, self.center, method="Nelder-Mead",
                       options={"initial_simplex": simplex, "xatol": 1e-9 * self.scale, "fatol": 1e-12 * start.f,
                                "maxfev": 200 * n})
        if res.success:
            fs = res.final_simplex[1]
            tol = 1.0 - (fs.min() / fs.max()) ** (1.0 / n) if np.all(np.isfinite(fs)) else 0.0
        else:
            tol = (best.value - start.value) / best.value
        return best, float(tol)

    def _refine(self, best: _Eval, theta: np.ndarray, dirs: np.ndarray) -> _Eval:
        if self.opts.refine_iters <= 0:
            return best
        cosines = np.clip(dirs @ theta, -1.0, 1.0)
        gaps = np.arccos(cosines[cosines < 1.0 - 1e-12])
        step = 0.5 * float(gaps.min()) if gaps.size else 0.1
        for _ in range(self.opts.refine_iters):
            improved = False
            for u in complement_basis(theta):
                for sgn in (1.0, -1.0):
                    trial = np.cos(step) * theta + sgn * np.sin(step) * u
                    trial /= np.linalg.norm(trial)
                    a, _ = self.level_point(trial)
                    ev = self.evaluate(a, True)
                    if self._better(ev, best):
                        best, theta, improved = ev, trial, True
                        break
            if not improved:
                step *= 0.5
        return best

    def _result(self, best: _Eval, sampling_tol: float) -> OmegaResult:
        lo = max((e.lo for e in self.evals), default=math.nan) if self.bounds else math.nan
        hi = max((e.hi for e in self.evals), default=math.nan) if self.bounds else math.nan
        return OmegaResult(
            value=best.value,
            argmax=best.a.copy(),
            samples_used=len(self.evals),
            sampling_tol=max(sampling_tol, 0.0),
            quad_err=max(e.err / e.f for e in self.evals),
            lower=lo,
            upper=hi,
        )


def omega(body: ConvexBody, delta: float, opts: OmegaOptions | None = None, task_index: int = 0) -> OmegaResult:
    """Sampled omega(delta): max of f^{-1/n} over rays to the delta level set plus interior probes."""
    return _Scan(body, delta, opts or OmegaOptions(), task_index, bounds=False).run()


@dataclass(frozen=True)
class SandwichBounds:
    lo: float
    hi: float
    omega: float
    sampling_tol: float


def t2_bounds(body: ConvexBody, delta: float, opts: OmegaOptions | None = None, task_index: int = 0) -> SandwichBounds:
    """Sampled (delta/(2|S°|))^{1/n} from below and (n delta/|S°|)^{1/n} from above.

    The lower bound is maximised over the sampled delta level set.  The upper
    bound is maximised over every sampled point, each evaluated with delta in
    place of its own boundary distance, so that it dominates every sampled
    value of f^{-1/n}.
    """
    res = _Scan(body, delta, opts or OmegaOptions(), task_index, bounds=True).run()
    return SandwichBounds(res.lower, res.upper, res.value, res.sampling_tol)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ALEXMOD_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class ModulusCurve:
    """omega on a delta grid together with the sandwich bounds and per-point metadata."""

    deltas: np.ndarray
    omega: np.ndarray
    lower_bound: np.ndarray
    upper_bound: np.ndarray
    argmax_points: np.ndarray
    samples_used: np.ndarray
    sampling_tol: np.ndarray
    quad_err: np.ndarray
    seed: int
    dim: int
    inradius: float
    omega_raw: np.ndarray | None = None
    warnings: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.deltas)

    def window(self, lo: float, hi: float) -> np.ndarray:
        return (self.deltas >= lo * (1 - 1e-12)) & (self.deltas <= hi * (1 + 1e-12))


def omega_curve(body: ConvexBody, deltas, opts: OmegaOptions | None = None, bounds: bool = True) -> ModulusCurve:
    """Sweep omega over ``deltas`` (strictly increasing); each grid point is an independent task."""
    opts = opts or OmegaOptions()
    deltas = np.asarray(deltas, dtype=float)
    if deltas.ndim != 1 or len(deltas) == 0 or np.any(np.diff(deltas) <= 0) or deltas[0] <= 0:
        raise ValueError("deltas must be positive and strictly increasing")

    def task(i):
        return _Scan(body, deltas[i], opts, i, bounds=bounds).run()

    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(task, range(len(deltas))))
    else:
        results = [task(i) for i in range(len(deltas))]

    raw = np.array([r.value for r in results])
    repaired = np.maximum.accumulate(raw)
    samp = np.array([r.sampling_tol for r in results])
    warnings = []
    for i in np.flatnonzero(repaired - raw > 1e-6 * repaired):
        msg = f"monotone repair at delta={deltas[i]:.6g}: {raw[i]:.9g} -> {repaired[i]:.9g}"
        log.warning(msg)
        warnings.append(msg)
    samp = np.maximum(samp, (repaired - raw) / repaired)
    return ModulusCurve(
        deltas=deltas,
        omega=repaired,
        lower_bound=np.array([r.lower for r in results]),
        upper_bound=np.array([r.upper for r in results]),
        argmax_points=np.array([r.argmax for r in results]),
        samples_used=np.array([r.samples_used for r in results], dtype=int),
        sampling_tol=samp,
        quad_err=np.array([r.quad_err for r in results]),
        seed=opts.seed,
        dim=body.dim,
        inradius=body.chebyshev_center()[1],
        omega_raw=raw,
        warnings=warnings,
    )


def sandwich_violations(curve: ModulusCurve) -> np.ndarray:
    """Indices where lower <= omega <= upper fails beyond the recorded per-point slack."""
    slack = np.maximum.reduce([np.full(len(curve), 1e-9), curve.quad_err, curve.sampling_tol])
    bad = (curve.lower_bound > curve.omega * (1 + slack)) | (curve.omega > curve.upper_bound * (1 + slack))
    return np.flatnonzero(bad)


@dataclass(frozen=True)
class ScalingFit:
    alpha: float
    c: float
    r2: float
    points: int


def fit_scaling_exponent(curve: ModulusCurve, window=None) -> ScalingFit:
    """Least-squares fit of log omega = alpha log delta + log c over the window."""
    mask = np.ones(len(curve), dtype=bool) if window is None else curve.window(*window)
    x, y = curve.deltas[mask], curve.omega[mask]
    if mask.sum() < 5:
        raise InsufficientPoints(f"need at least 5 grid points in the window, got {int(mask.sum())}")
    if np.any(y <= 0):
        raise InsufficientPoints("omega must be positive for a log fit")
    fit = stats.linregress(np.log(x), np.log(y))
    return ScalingFit(float(fit.slope), float(math.exp(fit.intercept)), float(fit.rvalue**2), int(mask.sum()))


# --------------------------------------------------------------------------
# flat spots and Mahler products
# --------------------------------------------------------------------------

FLAT_SPOT_THRESHOLD = 1e-3
TREND_CUTOFF = 0.05


@dataclass(frozen=True)
class FlatSpotCertificate:
    """Evidence for omega(delta) >= A delta^{1/n}.

    ``A`` is the minimum of omega / delta^{1/n} over the grid.  ``trend`` is
    the fitted log-log slope of that ratio; a clearly positive trend means the
    ratio decays to zero, and ``limit_A`` (the constant that survives
    delta -> 0) is then reported as 0.  ``R`` bounds |x - a| over the body for
    every interior a, which is what the slice-containment argument needs.
    """

    A: float
    limit_A: float
    trend: float
    R: float
    predicted_radius: float
    flat_spot: bool
    witness_facet: int | None = None
    witness_ball_radius: float | None = None


def body_diameter(body: ConvexBody) -> float:
    if isinstance(body, Polytope):
        V = body.vertices
        return float(np.max(np.linalg.norm(V[:, None, :] - V[None, :, :], axis=2)))
    return body.diameter_bound()


def facet_inradii(poly: Polytope) -> np.ndarray:
    """Inradius of each facet inside its own hyperplane."""
    A, b = poly.A, poly.b
    out = np.zeros(len(A))
    for i in range(len(A)):
        basis = complement_basis(A[i])
        x0 = A[i] * b[i]
        Ac = np.delete(A, i, axis=0) @ basis.T
        bc = np.delete(b, i) - np.delete(A, i, axis=0) @ x0
        live = np.linalg.norm(Ac, axis=1) > 1e-12
        if np.any(bc[~live] < -1e-12):
            continue
        Ac, bc = Ac[live], bc[live]
        nrm = np.linalg.norm(Ac, axis=1)
        k = basis.shape[0]
        c = np.zeros(k + 1)
        c[-1] = -1.0
        res = linprog(c, A_ub=np.hstack([Ac, nrm[:, None]]), b_ub=bc,
                      bounds=[(None, None)] * k + [(0, None)], method="highs")
        if res.status == 0:
            out[i] = max(0.0, -float(res.fun))
    return out


def flat_spot_certificate(body: ConvexBody, curve: ModulusCurve, threshold: float = FLAT_SPOT_THRESHOLD) -> FlatSpotCertificate:
    d = curve.deltas
    if math.log10(d[-1] / d[0]) < 2.0 - 1e-9:
        raise CurveTooNarrow("the curve must span at least two decades of delta")
    n = curve.dim
    ratio = curve.omega / d ** (1.0 / n)
    A = float(ratio.min())
    trend = float(stats.linregress(np.log(d), np.log(ratio)).slope)
    limit_A = A if trend <= TREND_CUTOFF else 0.0
    flat = limit_A >= threshold
    R = body_diameter(body)
    predicted = flat_spot_radius(limit_A, n, R) if flat else 0.0
    facet = radius = None
    if isinstance(body, Polytope):
        radii = facet_inradii(body)
        facet = int(np.argmax(radii))
        radius = float(radii[facet])
    return FlatSpotCertificate(A, limit_A, trend, R, predicted, flat, facet, radius)


@dataclass(frozen=True)
class MahlerResult:
    product: float
    volume: float
    polar_volume: float
    lower: float
    symmetric_upper: float | None


def mahler_product(poly: Polytope) -> tuple[float, float, float]:
    if np.any(poly.b <= 0):
        raise OriginNotInterior("origin must be interior")
    vol = hull_volume(poly)
    pvol = hull_volume(polar_polytope(poly))
    return vol * pvol, vol, pvol


def mahler_check(poly: Polytope) -> MahlerResult:
    """|P||P°| with the simplex product as reference and |B^n|^2 for symmetric bodies."""
    product, vol, pvol = mahler_product(poly)
    lower = mahler_product(regular_simplex(poly.dim))[0]
    upper = unit_ball_volume(poly.dim) ** 2 if poly.is_centrally_symmetric() else None
    return MahlerResult(product, vol, pvol, lower, upper)
