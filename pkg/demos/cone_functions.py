"""Cone functions are the extremal case of the modulus estimate.

u_a is the convex function equal to -1 at a, 0 on the boundary and affine on
segments from a.  Its subgradient image is (Omega - a)°.  On the pair
(a, nearest boundary point) the estimate holds with equality.

Run:  python demos/cone_functions.py
"""
import numpy as np

from alexmod import ConeFunction, Ellipsoid, OmegaOptions, SampledFunction, cube, equality_case_check, omega_curve, seminorm

for name, body, a in [("square", cube(2), [0.3, -0.4]), ("ellipse", Ellipsoid([2.0, 1.0]), [0.4, -0.6])]:
    a = np.asarray(a)
    eq = equality_case_check(body, a)
    grid = np.unique(np.append(np.logspace(-3, 0, 10) * body.chebyshev_center()[1], body.distance(a)))
    curve = omega_curve(body, grid, OmegaOptions(boundary_samples=32, refine_iters=6), bounds=False)
    sn = seminorm(SampledFunction.from_cone(ConeFunction(body, a)), curve, pairs=2000)
    print(f"{name}: extremal ratio {eq.ratio:.12f}; sampled seminorm {sn:.5f} <= |du(Omega)|^(1/2) = {eq.f ** 0.5:.5f}")
