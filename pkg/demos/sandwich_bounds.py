"""The two-sided bound on omega from polar volumes of hyperplane slices.

For every body, (delta / (2|S°|))^{1/n} <= omega(delta) <= (n delta / |S°|)^{1/n},
where S is the slice through the maximiser orthogonal to its nearest-point
normal.  This script sweeps a random polygon and prints the bracket.

Run:  python demos/sandwich_bounds.py
"""
import numpy as np

from alexmod import OmegaOptions, omega_curve, sandwich_violations
from alexmod.polytope import random_polytope

body = random_polytope(np.random.default_rng(7), 2)
r = body.chebyshev_center()[1]
curve = omega_curve(body, np.logspace(np.log10(1e-3 * r), np.log10(r), 8), OmegaOptions(seed=7))

print(f"random polygon with {len(body.A)} facets, inradius {r:.4f}")
print("    delta      lower      omega      upper")
for row in zip(curve.deltas, curve.lower_bound, curve.omega, curve.upper_bound):
    print("  ".join(f"{v:9.5f}" for v in row))
print("violations:", len(sandwich_violations(curve)))
