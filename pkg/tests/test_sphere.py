import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from alexmod.sphere import default_rule, dilate_toward_pole, icosphere_mesh, qmc_sphere, sphere_area, trapezoid_circle


@pytest.mark.parametrize("n", [2, 3, 4])
def test_weights_sum_to_area(n):
    rule = default_rule(n)
    assert rule.weights.sum() == pytest.approx(sphere_area(n), rel=1e-12)
    assert np.allclose(np.linalg.norm(rule.nodes, axis=1), 1.0)


def test_icosphere_counts():
    verts, faces = icosphere_mesh(4)
    assert len(faces) == 20 * 4**4 == 5120
    assert len(verts) - 3 * len(faces) // 2 + len(faces) == 2


@pytest.mark.parametrize("n,tol", [(2, 1e-12), (3, 1e-4), (4, 1e-3)])
def test_second_moment(n, tol):
    # the average of theta_1^2 over the sphere is 1/n
    rule = default_rule(n)
    assert rule.integrate(rule.nodes[:, 0] ** 2) / sphere_area(n) == pytest.approx(1 / n, abs=tol)


def test_qmc_is_seeded():
    assert np.array_equal(qmc_sphere(4, 10, seed=1).nodes, qmc_sphere(4, 10, seed=1).nodes)
    assert not np.array_equal(qmc_sphere(4, 10, seed=1).nodes, qmc_sphere(4, 10, seed=2).nodes)


@given(st.floats(5e-3, 1.0), st.floats(0, 2 * math.pi))
def test_dilation_preserves_integrals(lam, t):
    pole = np.array([math.cos(t), math.sin(t)])
    rule = dilate_toward_pole(trapezoid_circle(4096), pole, lam)
    assert rule.weights.sum() == pytest.approx(2 * math.pi, rel=1e-9)
    # a peak of width 1e-2 around the pole is resolved once the dilation is comparable
    if lam <= 0.05:
        peak = lambda th: 1.0 / (1e-4 + (1 - th @ pole))  # noqa: E731
        exact = 2 * math.pi / math.sqrt(1e-4 * (2 + 1e-4))
        assert rule.integrate(peak(rule.nodes)) == pytest.approx(exact, rel=1e-9)


def test_dilation_concentrates_nodes():
    pole = np.array([0.0, 0.0, 1.0])
    rule = dilate_toward_pole(default_rule(3), pole, 0.01)
    assert np.mean(rule.nodes @ pole > math.cos(0.05)) > 0.4
