import math

import numpy as np
import pytest
from hypothesis import given

from alexmod.bodies import Ellipsoid, unit_ball
from alexmod.errors import CollinearDegeneracy, EmptyCurveRange, PointNotInterior, PointOutsideDomain
from alexmod.ma import (
    ConeFunction,
    CurveModulus,
    Holder,
    SampledFunction,
    bar_point,
    cone_eval,
    cone_subgradient_image,
    equality_case_check,
    midpoint_violation,
    sample_interior,
    seminorm,
)
from alexmod.modulus import OmegaOptions, omega_curve
from alexmod.polytope import cube

from strategies import interior_point, polytope_and_point, seeds


class TestCone:
    def test_disk_center(self):
        u = ConeFunction(unit_ball(2), [0, 0])
        assert cone_eval(u, [0.5, 0])[0] == pytest.approx(-0.5)

    def test_apex_value(self):
        u = ConeFunction(cube(3), [0.1, 0.2, -0.3], scale=2.5)
        assert u([0.1, 0.2, -0.3])[0] == pytest.approx(-2.5)

    def test_square_facet_ratio(self):
        u = ConeFunction(cube(2), [0.5, 0])
        assert u([0.9, 0])[0] == pytest.approx(-0.2)

    def test_outside_rejected(self):
        u = ConeFunction(cube(2), [0, 0])
        with pytest.raises(PointOutsideDomain):
            u([1.5, 0])

    def test_apex_must_be_interior(self):
        with pytest.raises(PointNotInterior):
            ConeFunction(cube(2), [1.0, 0.0])

    @given(polytope_and_point(), seeds)
    def test_convexity(self, pa, seed):
        poly, a = pa
        fn = SampledFunction.from_cone(ConeFunction(poly, a))
        rng = np.random.default_rng(seed)
        pts = sample_interior(poly, 2000, rng)
        assert midpoint_violation(fn, pts[:1000], pts[1000:]) <= 1e-9

    def test_convexity_ten_thousand_pairs(self, rng):
        fn = SampledFunction.from_cone(ConeFunction(Ellipsoid([2.0, 1.0]), [0.5, -0.3]))
        pts = sample_interior(fn.domain, 20_000, rng)
        assert midpoint_violation(fn, pts[:10_000], pts[10_000:]) <= 1e-9

    @given(polytope_and_point())
    def test_vanishes_on_boundary(self, pa):
        poly, a = pa
        _, nearest = poly.nearest_boundary_points(a)
        assert np.abs(ConeFunction(poly, a)(nearest)).max() <= 1e-9


class TestSubgradientImage:
    def test_disk(self):
        assert cone_subgradient_image(ConeFunction(unit_ball(2), [0, 0])).volume == pytest.approx(math.pi)

    def test_scaled_square(self):
        img = cone_subgradient_image(ConeFunction(cube(2), [0, 0], scale=2.0))
        assert img.volume == pytest.approx(8.0)

    def test_square_off_center(self):
        img = cone_subgradient_image(ConeFunction(cube(2), [0, -0.5]))
        assert img.volume == pytest.approx(8 / 3)


class TestBarPoint:
    def test_disk(self):
        bp = bar_point(unit_ball(2), [0, 0], [0.5, 0])
        assert bp.b_bar == pytest.approx([1, 0])
        assert bp.theta == pytest.approx(0.5)
        assert bp.a_bar == pytest.approx([0.5, 0])

    def test_square(self):
        bp = bar_point(cube(2), [0, 0], [0, 0.5])
        assert bp.b_bar == pytest.approx([0, 1])
        assert bp.theta == pytest.approx(0.5)
        assert bp.a_bar == pytest.approx([0, 0.5])

    def test_coincident_points(self):
        with pytest.raises(CollinearDegeneracy):
            bar_point(cube(2), [0.1, 0.1], [0.1, 0.1])

    @given(polytope_and_point(), seeds)
    def test_contract(self, pa, seed):
        poly, a = pa
        b = interior_point(poly, np.random.default_rng([seed, 99]))
        bp = bar_point(poly, a, b)
        assert np.linalg.norm(bp.a_bar - bp.b_bar) == pytest.approx(np.linalg.norm(a - b), rel=1e-9, abs=1e-12)
        assert poly.gauge(a, bp.b_bar - a)[0] == pytest.approx(1.0)
        assert b == pytest.approx((1 - bp.theta) * a + bp.theta * bp.b_bar)
        # u_a is affine on the segment [a, b_bar], so it drops by the same amount over both pairs
        u = ConeFunction(poly, a)
        drop_ab = u(b)[0] - u(a)[0]
        drop_bar = u(bp.b_bar)[0] - u(bp.a_bar)[0]
        assert drop_ab == pytest.approx(drop_bar, abs=1e-9)


class TestSeminorm:
    def test_needs_thousand_pairs(self):
        fn = SampledFunction.from_cone(ConeFunction(cube(2), [0, 0]))
        with pytest.raises(ValueError):
            seminorm(fn, Holder(0.5), pairs=10)

    def test_lipschitz_cone(self):
        # u_0 on the unit disk is |x| - 1, with Lipschitz constant exactly 1
        fn = SampledFunction.from_cone(ConeFunction(unit_ball(2), [0, 0]))
        assert seminorm(fn, Holder(1.0)) == pytest.approx(1.0, abs=1e-9)

    def test_empty_range(self):
        fn = SampledFunction.from_cone(ConeFunction(cube(2), [0, 0]))
        curve = omega_curve(cube(2), [1e-6, 2e-6], OmegaOptions(boundary_samples=8, refine_iters=2))
        with pytest.raises(EmptyCurveRange):
            seminorm(fn, curve)

    def test_curve_modulus_extends_past_inradius(self):
        curve = omega_curve(cube(2), np.logspace(-2, 0, 5), OmegaOptions(boundary_samples=8, refine_iters=2))
        m = CurveModulus(curve)
        assert m(np.array([5.0]))[0] == pytest.approx(curve.omega[-1])
        assert math.isnan(m(np.array([1e-3]))[0])

    def test_cone_against_its_curve(self):
        body = cube(2)
        a = np.array([0.3, -0.4])
        curve = omega_curve(body, np.unique(np.append(np.logspace(-3, 0, 10), body.distance(a))),
                            OmegaOptions(boundary_samples=32, refine_iters=6))
        fn = SampledFunction.from_cone(ConeFunction(body, a))
        eq = equality_case_check(body, a)
        assert seminorm(fn, curve) <= eq.f ** 0.5 * (1 + 1e-2)


class TestEqualityCase:
    def test_disk(self):
        assert equality_case_check(unit_ball(2), [0, 0.5]).ratio == pytest.approx(1.0, abs=1e-9)

    def test_square(self):
        assert equality_case_check(cube(2), [0, -0.5]).ratio == pytest.approx(1.0, abs=1e-9)

    def test_ellipse_near_pole(self):
        assert equality_case_check(Ellipsoid([2.0, 1.0]), [0, -0.95]).ratio == pytest.approx(1.0, abs=1e-4)
