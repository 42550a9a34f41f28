"""Geometry layer: constructors, support data, gauge profile, Hausdorff, Steiner."""

import math

import numpy as np
import pytest

from isolab import convex, families
from isolab.errors import Degenerate, NotConvex, OriginOutside

SIDE = math.sqrt(math.pi)  # side of the area-pi square


def square(side=SIDE, center=(0.0, 0.0)):
    h = side / 2.0
    cx, cy = center
    return convex.make_polygon([(cx - h, cy - h), (cx + h, cy - h),
                                (cx + h, cy + h), (cx - h, cy + h)])


def unit_angles(n):
    return 2.0 * np.pi * (np.arange(n) + 0.5) / n


# ---------------------------------------------------------------------------
# constructor
# ---------------------------------------------------------------------------

def test_make_polygon_reorients_clockwise_input():
    cw = [(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]
    body = convex.make_polygon(cw)
    assert convex.area(body) == pytest.approx(1.0, abs=1e-15)
    v = body.vertices
    e = np.roll(v, -1, axis=0) - v
    e2 = np.roll(e, -1, axis=0)
    cross = e[:, 0] * e2[:, 1] - e[:, 1] * e2[:, 0]
    assert np.all(cross > 0.0), "vertices should come out counterclockwise"


def test_make_polygon_drops_closing_vertex():
    ring = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)]
    assert convex.make_polygon(ring).n == 4


def test_make_polygon_tolerates_collinear_vertex():
    body = convex.make_polygon([(0.0, 0.0), (0.5, 0.0), (1.0, 0.0),
                                (1.0, 1.0), (0.0, 1.0)])
    assert body.n == 5
    assert convex.area(body) == pytest.approx(1.0, abs=1e-14)
    assert convex.perimeter(body) == pytest.approx(4.0, abs=1e-14)


def test_make_polygon_rejects_bad_input():
    with pytest.raises(Degenerate):
        convex.make_polygon([(0.0, 0.0), (1.0, 0.0)])
    with pytest.raises(Degenerate):
        convex.make_polygon([(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)])
    with pytest.raises(Degenerate):  # coincident consecutive vertices
        convex.make_polygon([(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (1.0, 1.0)])
    with pytest.raises(NotConvex):
        convex.make_polygon([(0.0, 0.0), (2.0, 0.0), (2.0, 2.0),
                             (1.0, 0.5), (0.0, 2.0)])
    with pytest.raises(Degenerate):  # bowtie, signed area exactly zero
        convex.make_polygon([(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)])
    ang = math.pi / 2.0 + 0.8 * math.pi * np.arange(5)
    star = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    with pytest.raises(NotConvex):  # pentagram: left turns only, winds twice
        convex.make_polygon(star)
    with pytest.raises(Degenerate):
        convex.make_polygon([(0.0, 0.0), (np.nan, 0.0), (0.0, 1.0)])


def test_vertices_are_read_only():
    body = square()
    with pytest.raises(ValueError):
        body.vertices[0, 0] = 99.0


# ---------------------------------------------------------------------------
# basic functionals
# ---------------------------------------------------------------------------

def test_square_functionals():
    body = square(2.0, center=(3.0, -1.0))
    assert convex.area(body) == pytest.approx(4.0, abs=1e-14)
    assert convex.perimeter(body) == pytest.approx(8.0, abs=1e-14)
    assert convex.centroid(body) == pytest.approx((3.0, -1.0), abs=1e-14)
    assert convex.diameter(body) == pytest.approx(2.0 * math.sqrt(2.0),
                                                  abs=1e-14)


def test_normalize_area(hull_pool):
    for body in hull_pool:
        scaled = convex.normalize_area(body, np.pi)
        assert convex.area(scaled) == pytest.approx(math.pi, rel=1e-12)
        ratio = math.sqrt(math.pi / convex.area(body))
        assert convex.perimeter(scaled) == pytest.approx(
            ratio * convex.perimeter(body), rel=1e-12)
        assert convex.centroid(scaled) == pytest.approx(
            convex.centroid(body), abs=1e-12)


def test_rigid_motions_preserve_functionals(hull_pool):
    rng = np.random.Generator(np.random.Philox(5))
    for body in hull_pool[:12]:
        angle = rng.uniform(0.0, 2.0 * np.pi)
        shift = rng.uniform(-3.0, 3.0, size=2)
        moved = convex.translate(convex.rotate(body, angle), shift)
        assert convex.area(moved) == pytest.approx(convex.area(body), rel=1e-12)
        assert convex.perimeter(moved) == pytest.approx(
            convex.perimeter(body), rel=1e-12)
        assert convex.diameter(moved) == pytest.approx(
            convex.diameter(body), rel=1e-12)


# ---------------------------------------------------------------------------
# support function, mean width, quermassintegrals
# ---------------------------------------------------------------------------

def test_support_square():
    body = square(2.0)
    assert convex.support(body, 0.0) == pytest.approx(1.0, abs=1e-14)
    assert convex.support(body, math.pi / 4.0) == pytest.approx(
        math.sqrt(2.0), abs=1e-14)
    vals = convex.support(body, np.array([0.0, math.pi / 2.0, math.pi]))
    assert vals.shape == (3,)
    assert vals == pytest.approx((1.0, 1.0, 1.0), abs=1e-14)


def test_support_is_max_over_vertices(hull_pool):
    for body in hull_pool[:10]:
        th = unit_angles(64)
        direct = np.max(body.vertices @ np.stack([np.cos(th), np.sin(th)]),
                        axis=0)
        assert convex.support(body, th) == pytest.approx(direct, abs=1e-13)


def test_support_integral_and_mean_width(hull_pool):
    for body in hull_pool:
        p = convex.perimeter(body)
        assert abs(convex.support_integral(body) - p) <= 1e-10 * max(1.0, p)
        assert convex.mean_width(body) == pytest.approx(p / math.pi,
                                                        rel=1e-12)


def test_quermassintegrals(hull_pool):
    for body in hull_pool[:10]:
        q = convex.quermassintegrals(body)
        assert q.w0 == pytest.approx(convex.area(body), rel=1e-12)
        assert q.w1 == pytest.approx(convex.perimeter(body) / 2.0, rel=1e-10)
        assert q.w2 == pytest.approx(math.pi, abs=1e-14)


# ---------------------------------------------------------------------------
# Steiner polynomial against the explicit offset body
# ---------------------------------------------------------------------------

def test_steiner_polynomial_square():
    body = square(2.0)
    for rho in (0.0, 0.5, 2.0):
        expected = 4.0 + 8.0 * rho + math.pi * rho * rho
        assert convex.steiner_area(body, rho) == pytest.approx(expected,
                                                               rel=1e-14)
        assert convex.steiner_area_offset(body, rho) == pytest.approx(
            expected, rel=1e-12)


def test_steiner_rejects_negative_radius():
    with pytest.raises(ValueError):
        convex.steiner_area(square(), -0.1)
    with pytest.raises(ValueError):
        convex.steiner_area_offset(square(), -0.1)


def test_steiner_offset_matches_polynomial(hull_pool):
    worst = 0.0
    for body in hull_pool[:25]:
        for rho in (0.1, 1.0, 3.0):
            diff = abs(convex.steiner_area(body, rho)
                       - convex.steiner_area_offset(body, rho))
            worst = max(worst, diff)
    assert worst <= 1e-9, f"worst polynomial/offset gap {worst:.3e}"


# ---------------------------------------------------------------------------
# gauge profile
# ---------------------------------------------------------------------------

def test_gauge_profile_square_pieces():
    prof = convex.gauge_profile(square(2.0))
    assert len(prof.phi) == 4
    assert prof.dist == pytest.approx((1.0, 1.0, 1.0, 1.0), abs=1e-14)
    widths = np.diff(np.append(prof.theta0, prof.theta0[0] + 2.0 * np.pi))
    assert widths == pytest.approx(np.full(4, math.pi / 2.0), abs=1e-12)


def test_gauge_times_radial_is_one(hull_pool):
    for body in hull_pool[:10]:
        prof = convex.gauge_profile(body)
        th = unit_angles(257)
        assert prof.u(th) * prof.r(th) == pytest.approx(np.ones(257),
                                                        abs=1e-12)


def test_gauge_boundary_points_lie_on_boundary(hull_pool):
    for body in hull_pool[:10]:
        c = convex.centroid(body)
        prof = convex.gauge_profile(body)
        th = unit_angles(200)
        r = prof.r(th)
        pts = c + np.stack([r * np.cos(th), r * np.sin(th)], axis=1)
        for p in pts:
            assert convex.distance_to_boundary(body, p) <= 1e-10


def test_gauge_area_perimeter_closed_forms(hull_pool):
    for body in hull_pool:
        prof = convex.gauge_profile(body)
        assert convex.gauge_area(prof) == pytest.approx(convex.area(body),
                                                        rel=1e-10)
        assert convex.gauge_perimeter(prof) == pytest.approx(
            convex.perimeter(body), rel=1e-10)


def test_gauge_derivative_matches_finite_difference():
    body = families.near_ball(seed=11)
    prof = convex.gauge_profile(body)
    rng = np.random.Generator(np.random.Philox(2))
    th = rng.uniform(0.0, 2.0 * np.pi, size=200)
    eps = 1e-6
    fd = (prof.u(th + eps) - prof.u(th - eps)) / (2.0 * eps)
    exact = prof.du(th)
    # kinks at sector boundaries can straddle the stencil; drop those
    keep = np.abs(fd - exact) < 0.1
    assert keep.mean() > 0.9
    assert np.max(np.abs(fd[keep] - exact[keep])) <= 1e-5


def test_gauge_origin_must_be_interior():
    body = square(2.0, center=(5.0, 0.0))
    with pytest.raises(OriginOutside):
        convex.gauge_profile(body, origin=(0.0, 0.0))
    with pytest.raises(OriginOutside):
        convex.gauge_profile(body, origin=(4.0, 0.0))  # on the boundary


def test_radial_square():
    body = square(2.0)
    assert convex.radial(body, (0.0, 0.0), 0.0) == pytest.approx(1.0,
                                                                 abs=1e-13)
    assert convex.radial(body, (0.0, 0.0), math.pi / 4.0) == pytest.approx(
        math.sqrt(2.0), abs=1e-13)


# ---------------------------------------------------------------------------
# membership and distances
# ---------------------------------------------------------------------------

def test_contains_point_and_boundary_distance():
    body = square(2.0)
    assert convex.contains_point(body, (0.0, 0.0))
    assert convex.contains_point(body, (1.0, 1.0))
    assert not convex.contains_point(body, (1.0 + 1e-9, 0.0))
    assert convex.contains_point(body, (1.0 + 1e-9, 0.0), tol=1e-6)
    assert convex.distance_to_boundary(body, (0.0, 0.0)) == pytest.approx(
        1.0, abs=1e-14)
    assert convex.distance_to_boundary(body, (3.0, 0.0)) == pytest.approx(
        2.0, abs=1e-14)


def test_hausdorff_to_disk_square():
    body = square()
    got = convex.hausdorff_to_disk(body, (0.0, 0.0), 1.0)
    want = math.sqrt(math.pi / 2.0) - 1.0  # circumradius excess dominates
    assert got == pytest.approx(want, abs=1e-12)


def test_hausdorff_to_disk_matches_support_grid(hull_pool):
    # d_H(body, ball) is the sup-norm gap of support functions; a dense
    # angular grid bounds it from below within Lipschitz slack.
    rng = np.random.Generator(np.random.Philox(17))
    th = np.linspace(0.0, 2.0 * np.pi, 400_000, endpoint=False)
    e = np.stack([np.cos(th), np.sin(th)], axis=1)
    for body in hull_pool[:8]:
        c = convex.centroid(body) + rng.uniform(-0.05, 0.05, size=2)
        radius = rng.uniform(0.5, 1.5)
        grid = 0.0
        for chunk in np.array_split(np.arange(len(th)), 8):
            gap = (np.max(body.vertices @ e[chunk].T, axis=0)
                   - e[chunk] @ c - radius)
            grid = max(grid, float(np.max(np.abs(gap))))
        exact = convex.hausdorff_to_disk(body, c, radius)
        assert grid - 1e-12 <= exact <= grid + 1e-4


def test_hausdorff_between_translates(hull_pool):
    for body in hull_pool[:8]:
        shifted = convex.translate(body, (0.3, -0.4))
        d = convex.hausdorff_between(body, shifted)
        assert d == pytest.approx(0.5, abs=1e-12)
        assert convex.hausdorff_between(shifted, body) == pytest.approx(
            d, abs=1e-12)
        assert convex.hausdorff_between(body, body) <= 1e-12


def test_hausdorff_between_nested():
    inner = square(1.0)
    outer = square(2.0)
    # every outer vertex is sqrt(2)/2 past the inner corner
    assert convex.hausdorff_between(inner, outer) == pytest.approx(
        math.sqrt(2.0) / 2.0, abs=1e-12)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_body_json_roundtrip(tmp_path, hull_pool):
    body = hull_pool[0]
    again = convex.body_from_json(convex.body_to_json(body))
    assert np.array_equal(again.vertices, body.vertices)

    path = tmp_path / "body.json"
    convex.save_body(body, path)
    loaded = convex.load_body(path)
    assert np.array_equal(loaded.vertices, body.vertices)
