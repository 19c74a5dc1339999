import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from alexmod.bodies import Ellipsoid, GraphDomain2D, PowerDomain, body_from_spec, unit_ball
from alexmod.errors import InputError
from alexmod.geometry import distance_to_boundary, gauge, normal_set, section, section_polar_volume, support
from alexmod.polytope import cube
from alexmod.verify import random_rotation

from strategies import interior_point, seeds


def dense_boundary(body, m=200_000):
    t = np.linspace(0, 2 * math.pi, m, endpoint=False)
    dirs = np.column_stack([np.cos(t), np.sin(t)])
    c, _ = body.chebyshev_center()
    return c + dirs / body.gauge(c, dirs)[:, None]


class TestEllipsoid:
    def test_disk_support_and_gauge(self):
        disk = unit_ball(2)
        assert support(disk, [0.6, 0.8]) == pytest.approx(1.0)
        assert gauge(disk, [0, 0], [0.5, 0]) == pytest.approx(0.5)

    def test_disk_distance(self):
        assert distance_to_boundary(unit_ball(2), [0, 0.25]) == pytest.approx(0.75)

    def test_ellipse_distance_and_nearest_point(self):
        ell = Ellipsoid([2.0, 1.0])
        d, pts = ell.nearest_boundary_points([0, 0.9])
        assert d == pytest.approx(0.1, abs=1e-12)
        assert pts[0] == pytest.approx([0, 1], abs=1e-9)
        brute = np.linalg.norm(dense_boundary(ell) - [0, 0.9], axis=1).min()
        assert d == pytest.approx(brute, abs=1e-8)

    def test_disk_center_normals_are_spread(self):
        N = normal_set(unit_ball(2), [0, 0], tol=1e-3)
        assert len(N) >= 16
        ang = np.sort(np.arctan2(N[:, 1], N[:, 0]))
        assert np.diff(np.append(ang, ang[0] + 2 * math.pi)).max() < math.pi / 4

    def test_ball_slice(self):
        dl = 0.19
        sec = section(unit_ball(3), [0, 0, -1 + dl], [0, 0, -1])
        assert sec.measure == pytest.approx(math.pi * 0.3439, rel=1e-12)

    def test_disk_slice_polar(self):
        dl = 0.02
        v = section_polar_volume(unit_ball(2), [0, -1 + dl], [0, -1])
        assert v == pytest.approx(2 / math.sqrt(2 * dl - dl * dl), rel=1e-12)
        assert v == pytest.approx(10.0504, abs=1e-4)

    def test_ball_slice_polar(self):
        dl = 0.02
        v = section_polar_volume(unit_ball(3), [0, 0, -1 + dl], [0, 0, -1])
        assert v == pytest.approx(math.pi / (2 * dl - dl * dl), rel=1e-12)

    @given(seeds, st.sampled_from([2, 3, 4]))
    def test_gauge_characterizes_membership(self, seed, n):
        rng = np.random.default_rng(seed)
        ell = Ellipsoid(rng.uniform(0.5, 2, n), rng.uniform(-1, 1, n), random_rotation(rng, n))
        a = interior_point(ell, rng)
        v = rng.standard_normal(n)
        g = gauge(ell, a, v)
        assert ell.contains(a + 0.999 * v / g)[0]
        assert not ell.contains(a + 1.001 * v / g)[0]

    @given(seeds, st.sampled_from([2, 3]))
    def test_distance_is_exact(self, seed, n):
        rng = np.random.default_rng(seed)
        ell = Ellipsoid(rng.uniform(0.5, 2, n), None, random_rotation(rng, n))
        a = interior_point(ell, rng)
        d, pts = ell.nearest_boundary_points(a)
        # nearest points lie on the boundary and no boundary sample is closer
        assert np.allclose(ell.gauge(ell.center, pts - ell.center), 1.0, atol=1e-9)
        dirs = rng.standard_normal((20000, n))
        bd = ell.center + dirs / ell.gauge(ell.center, dirs)[:, None]
        assert np.linalg.norm(bd - a, axis=1).min() >= d - 1e-9

    def test_translation(self):
        ell = Ellipsoid([2.0, 1.0]).translate([1.0, -2.0])
        assert distance_to_boundary(ell, [1.0, -1.1]) == pytest.approx(0.1)


class TestGraphDomain:
    def test_power_profile(self):
        g = GraphDomain2D("power", 1.0, 2.0, 4.0)
        assert g.h_inverse(1e-4) == pytest.approx(0.1)
        assert g.contains([[0, 1], [0.99, 1.0]]).all()
        assert not g.contains([0.5, 0.01])[0]

    def test_power_support_matches_brute_force(self):
        g = GraphDomain2D("power", 1.0, 2.0, 4.0)
        bd = dense_boundary(g)
        for t in np.linspace(0, 2 * math.pi, 7):
            th = np.array([math.cos(t), math.sin(t)])
            assert g.support(th)[0] == pytest.approx((bd @ th).max(), abs=1e-8)

    def test_exp_flat_defaults(self):
        g = GraphDomain2D("exp_flat")
        assert g.h_inverse(1e-3) == pytest.approx(1 / abs(math.log(1e-3)), rel=1e-12)
        assert float(g.h(g.R)) == pytest.approx(g.D / 2, rel=1e-9)

    @pytest.mark.parametrize("R,D", [(0.7, None), (None, 1.0), (0.6, 1.0)])
    def test_exp_flat_fit(self, R, D):
        g = GraphDomain2D("exp_flat", R=R, D=D)
        if R is not None:
            assert g.R == pytest.approx(R, rel=1e-9)
        if D is not None:
            assert g.D == pytest.approx(D, rel=1e-9)

    def test_exp_flat_curvature_increases(self):
        g = GraphDomain2D("exp_flat")
        xs = np.linspace(1e-3, 0.17, 50)
        assert np.all(np.diff(g.curvature(xs)) > 0)

    def test_distance_near_bottom(self):
        g = GraphDomain2D("power", 1.0, 2.0, 4.0)
        # right above the flat bottom the nearest point is straight down
        assert distance_to_boundary(g, [0.0, 1e-3]) == pytest.approx(1e-3, rel=1e-9)

    def test_bad_profile(self):
        with pytest.raises(InputError):
            GraphDomain2D("power", p=1.0)
        with pytest.raises(InputError):
            GraphDomain2D("sine")


class TestPowerDomain:
    def test_mirror_matches_planar_graph_domain(self):
        pd = PowerDomain(1.0, [4.0], 2.0, cap="mirror")
        gd = GraphDomain2D("power", 1.0, 2.0, 4.0)
        for t in np.linspace(0.1, 6.2, 9):
            th = np.array([math.cos(t), math.sin(t)])
            assert pd.support(th)[0] == pytest.approx(gd.support(th)[0], abs=1e-10)
        a = np.array([0.3, 0.4])
        assert pd.distance(a) == pytest.approx(gd.distance(a), abs=1e-8)

    def test_parabola_support_formula(self):
        pd = PowerDomain(1.0, [2.0], 1e3)
        for y in ([0.3, -1.0], [-1.2, -0.4], [0.0, -2.0]):
            y = np.array(y)
            th = y / np.linalg.norm(y)
            sigma = pd.support_at(th, np.array([0.0, 1.0]))[0] * np.linalg.norm(y)
            assert sigma == pytest.approx(-y[0] ** 2 / (4 * y[1]) - y[1], rel=1e-9)

    def test_three_dimensional_with_box(self):
        pd = PowerDomain(1.0, [2.0], 1.0, box=[1.0])
        assert pd.dim == 3
        assert pd.contains([0.0, 0.5, 0.5])[0]
        assert distance_to_boundary(pd, [0.0, 0.0, 0.01]) == pytest.approx(0.01, rel=1e-6)

    @given(seeds)
    def test_support_dominates_samples(self, seed):
        rng = np.random.default_rng(seed)
        pd = PowerDomain(1.0, [2.0, 3.0], 1.0)
        pts = rng.uniform(-1, 1, (4000, 3))
        pts[:, 2] = rng.uniform(0, 1, 4000)
        pts = pts[pd.contains(pts)]
        th = rng.standard_normal(3)
        th /= np.linalg.norm(th)
        assert (pts @ th).max() <= pd.support(th)[0] + 1e-9

    @pytest.mark.parametrize("kw", [dict(exponents=[1.0]), dict(height=-1.0), dict(cap="round")])
    def test_bad_input(self, kw):
        args = dict(eta=1.0, exponents=[2.0], height=1.0)
        args.update(kw)
        with pytest.raises(InputError):
            PowerDomain(**args)


class TestSpecs:
    @pytest.mark.parametrize(
        "body",
        [cube(2), unit_ball(3), Ellipsoid([2.0, 1.0], [0.5, 0.0]), GraphDomain2D("power", 1.0, 2.0, 4.0),
         GraphDomain2D("exp_flat"), PowerDomain(1.0, [4.0], 1.0)],
    )
    def test_round_trip(self, body):
        again = body_from_spec(body.to_spec())
        th = np.array([0.6, 0.8] + [0.0] * (body.dim - 2))
        assert again.support(th)[0] == pytest.approx(body.support(th)[0], rel=1e-12)

    @pytest.mark.parametrize(
        "spec",
        [{}, {"type": "torus"}, {"type": "hpolytope", "normals": [[1, 0]]}, {"type": "ellipsoid"},
         {"type": "graph2d", "h": "power", "p": 0.5}, {"type": "ellipsoid", "semi_axes": [1, -1]}],
    )
    def test_malformed(self, spec):
        with pytest.raises(InputError):
            body_from_spec(spec)


def test_exp_flat_rejects_unreachable_shapes():
    # the curvature-monotone family has D close to 2R; a flat wide profile is not in it
    with pytest.raises(InputError):
        GraphDomain2D("exp_flat", R=1.0, D=0.5)
    with pytest.raises(InputError):
        GraphDomain2D("exp_flat", R=0.5)
