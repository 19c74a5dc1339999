"""Quadrature rules on the unit sphere S^{n-1}, n in {2, 3, 4}.

Three base rules are provided:

* ``n = 2``: composite trapezoid rule on equally spaced angles.
* ``n = 3``: subdivided icosahedron, one node per spherical triangle
  (normalized centroid) weighted by the exact spherical triangle area.
* ``n = 4``: scrambled Sobol points pushed to S^3 through the Gaussian
  inverse CDF, equal weights.

Integrands of the form ``sigma(theta) ** -n`` become sharply peaked when the
base point approaches the boundary of the body.  :func:`dilate_toward_pole`
composes any base rule with a conformal map of the sphere (a stereographic
dilation) that concentrates nodes around a chosen pole, so the same rule
resolves the peak.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gamma
from scipy.stats import norm, qmc


@dataclass(frozen=True)
class SphereRule:
    """Nodes on S^{n-1} with positive weights summing to |S^{n-1}|."""

    nodes: np.ndarray
    weights: np.ndarray

    @property
    def dim(self) -> int:
        return self.nodes.shape[1]

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))


def sphere_area(n: int) -> float:
    """Surface measure of S^{n-1} in R^n."""
    return 2.0 * np.pi ** (n / 2) / gamma(n / 2)


def trapezoid_circle(m: int = 4096, offset: float = 0.0) -> SphereRule:
    t = offset + 2.0 * np.pi * np.arange(m) / m
    nodes = np.column_stack([np.cos(t), np.sin(t)])
    return SphereRule(nodes, np.full(m, 2.0 * np.pi / m))


_PHI = (1.0 + np.sqrt(5.0)) / 2.0
_ICO_VERTS = np.array(
    [
        [-1, _PHI, 0], [1, _PHI, 0], [-1, -_PHI, 0], [1, -_PHI, 0],
        [0, -1, _PHI], [0, 1, _PHI], [0, -1, -_PHI], [0, 1, -_PHI],
        [_PHI, 0, -1], [_PHI, 0, 1], [-_PHI, 0, -1], [-_PHI, 0, 1],
    ],
    dtype=float,
)
_ICO_FACES = np.array(
    [
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ]
)


@lru_cache(maxsize=8)
def icosphere_mesh(level: int) -> tuple[np.ndarray, np.ndarray]:
    """Vertices and triangles of the icosahedron subdivided ``level`` times."""
    verts = [v / np.linalg.norm(v) for v in _ICO_VERTS]
    faces = [tuple(f) for f in _ICO_FACES]
    for _ in range(level):
        cache: dict[tuple[int, int], int] = {}

        def midpoint(i: int, j: int) -> int:
            key = (min(i, j), max(i, j))
            if key not in cache:
                m = verts[i] + verts[j]
                verts.append(m / np.linalg.norm(m))
                cache[key] = len(verts) - 1
            return cache[key]

        new_faces = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new_faces += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = new_faces
    v = np.array(verts)
    f = np.array(faces)
    v.setflags(write=False)
    f.setflags(write=False)
    return v, f


def _spherical_triangle_area(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    # Van Oosterom-Strackee solid angle formula.
    num = np.abs(np.einsum("ij,ij->i", a, np.cross(b, c)))
    den = 1.0 + np.einsum("ij,ij->i", a, b) + np.einsum("ij,ij->i", b, c) + np.einsum("ij,ij->i", c, a)
    return 2.0 * np.arctan2(num, den)


@lru_cache(maxsize=8)
def icosphere(level: int = 4) -> SphereRule:
    """Centroid rule on the ``level``-times subdivided icosahedron (20 * 4**level cells)."""
    v, f = icosphere_mesh(level)
    a, b, c = v[f[:, 0]], v[f[:, 1]], v[f[:, 2]]
    cen = a + b + c
    cen /= np.linalg.norm(cen, axis=1, keepdims=True)
    w = _spherical_triangle_area(a, b, c)
    return SphereRule(cen, w)


@lru_cache(maxsize=8)
def qmc_sphere(n: int = 4, log2_points: int = 17, seed: int = 0) -> SphereRule:
    """Equal-weight quasi-random rule on S^{n-1} from a scrambled Sobol sequence."""
    sob = qmc.Sobol(d=n, scramble=True, seed=seed)
    u = sob.random_base2(log2_points)
    u = np.clip(u, 1e-15, 1.0 - 1e-15)
    g = norm.ppf(u)
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    m = g.shape[0]
    return SphereRule(g, np.full(m, sphere_area(n) / m))


def default_rule(n: int, coarse: bool = False, seed: int = 0) -> SphereRule:
    """Rule used by the radial volume path; ``coarse`` gives the companion rule for error estimates."""
    if n == 2:
        return trapezoid_circle(2048 if coarse else 4096)
    if n == 3:
        return icosphere(3 if coarse else 4)
    if n == 4:
        return qmc_sphere(4, 16 if coarse else 17, seed)
    raise ValueError(f"no sphere rule for n={n}")


def dilate_toward_pole(rule: SphereRule, pole: np.ndarray, lam: float) -> SphereRule:
    """Push ``rule`` through the stereographic dilation by ``lam`` centred at ``pole``.

    In stereographic coordinates ``z`` taken from the antipode of ``pole`` the
    map is ``z -> lam * z``.  ``lam < 1`` pulls half of the nodes into a cap of
    angular radius about ``2 * lam`` around the pole.  Weights are multiplied by
    the Jacobian, so the result integrates exactly the same functions in the
    limit of infinitely many nodes.
    """
    pole = np.asarray(pole, dtype=float)
    pole = pole / np.linalg.norm(pole)
    if lam >= 1.0:
        return rule
    n = rule.dim
    w = rule.nodes
    wp = w @ pole
    wperp = w - wp[:, None] * pole
    q = (1.0 + wp) + lam**2 * (1.0 - wp)
    u = (2.0 * lam * wperp + ((1.0 + wp) - lam**2 * (1.0 - wp))[:, None] * pole) / q[:, None]
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    jac = (2.0 * lam / q) ** (n - 1)
    return SphereRule(u, rule.weights * jac)
