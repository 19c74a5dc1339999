"""How the shape of the boundary sets the modulus of continuity.

A round boundary (the disk) gives omega ~ C delta^{3/4} with an explicit sharp
constant, while a flat facet (the square) gives omega ~ delta^{1/2}.  A boundary
flat to order p sits in between at delta^{(1 + 1/p)/2}.

Run:  python demos/round_versus_flat.py
"""
import math

import numpy as np

from alexmod import GraphDomain2D, OmegaOptions, cube, fit_scaling_exponent, omega_curve, unit_ball
from alexmod.oracles import corollary_alpha, t1_constant

opts = OmegaOptions(boundary_samples=32, refine_iters=6)
deltas = np.logspace(-4, -2, 7)

print("body              fitted alpha   predicted")
for name, body, predicted in [
    ("disk", unit_ball(2), 0.75),
    ("square", cube(2), 0.5),
    ("graph h = x^4", GraphDomain2D("power", 1.0, 2.0, 4.0), corollary_alpha(2, [4])),
]:
    fit = fit_scaling_exponent(omega_curve(body, deltas, opts, bounds=False))
    print(f"{name:16s}  {fit.alpha:11.4f}   {predicted:9.4f}")

# The disk has a closed form: omega(delta) = [delta (2 - delta)]^{3/4} / sqrt(pi).
curve = omega_curve(unit_ball(2), np.array([1e-3, 1e-2, 1e-1]), opts, bounds=False)
print("\ndisk: omega * delta^-3/4 against the sharp constant", round(t1_constant(2, 1.0), 6))
for d, w in zip(curve.deltas, curve.omega):
    print(f"  delta={d:7.0e}  ratio={w * d ** -0.75:.6f}  closed form={(2 - d) ** 0.75 / math.sqrt(math.pi):.6f}")
