"""Shape generators: regular polygons, ellipses, stadia, random hulls, near balls."""

import math

import numpy as np
import pytest

from isolab import convex, families
from isolab.errors import BadK, BadParameter


# ---------------------------------------------------------------------------
# regular polygons
# ---------------------------------------------------------------------------

def test_regular_polygon_area_and_symmetry():
    for k in (3, 4, 7, 90):
        body = families.regular_polygon(k)
        assert body.n == k
        assert convex.area(body) == pytest.approx(math.pi, rel=1e-12)
        r = np.linalg.norm(body.vertices, axis=1)
        assert np.ptp(r) <= 1e-12 * r[0]


def test_regular_polygon_apothem_closed_form():
    # area-1 hexagon: apothem = 1 / sqrt(k tan(pi/k))
    body = families.regular_polygon(6, target_area=1.0)
    prof = convex.gauge_profile(body)
    want = 1.0 / math.sqrt(6.0 * math.tan(math.pi / 6.0))
    assert np.min(prof.dist) == pytest.approx(want, rel=1e-12)
    assert np.max(prof.dist) == pytest.approx(want, rel=1e-12)


def test_regular_polygon_rejects_bad_k():
    with pytest.raises(BadK):
        families.regular_polygon(2)
    with pytest.raises(BadK):
        families.regular_polygon(4.5)


def test_regular_deficit_scaling():
    ks = np.array([8, 16, 24, 32, 48, 64])
    deficits = np.array([convex.perimeter(families.regular_polygon(int(k)))
                         - 2.0 * math.pi for k in ks])
    assert np.all(np.diff(deficits) < 0.0)
    slope = np.polyfit(np.log(ks), np.log(deficits), 1)[0]
    assert slope == pytest.approx(-2.0, abs=0.05)
    # leading coefficient: deficit ~ pi^3 / (3 k^2)
    assert deficits[-1] * ks[-1] ** 2 == pytest.approx(math.pi ** 3 / 3.0,
                                                       rel=2e-3)


# ---------------------------------------------------------------------------
# ellipses
# ---------------------------------------------------------------------------

def test_ellipse_matches_exact_quadrature():
    eps = 0.2
    body = families.ellipse(eps, resolution=2048)
    assert convex.area(body) == pytest.approx(math.pi, rel=1e-12)
    # the area-pi ellipse with axis ratio 1 + eps has semi-axes
    # (1/sqrt(1+eps), sqrt(1+eps)); integrate its arc length directly
    a, b = 1.0 / math.sqrt(1.0 + eps), math.sqrt(1.0 + eps)
    t = np.linspace(0.0, 2.0 * math.pi, 800_001)
    p_exact = np.trapezoid(np.hypot(a * np.sin(t), b * np.cos(t)), t)
    assert convex.perimeter(body) == pytest.approx(p_exact, rel=1e-3)


def test_ellipse_deficit_quadratic_in_eps():
    # leading order: deficit = (3 pi / 8) eps^2; cubic corrections push the
    # finite-eps log-log slope a little below 2
    d = {e: convex.perimeter(families.ellipse(e, resolution=4096))
         - 2.0 * math.pi for e in (0.01, 0.02)}
    assert d[0.01] / 0.01 ** 2 == pytest.approx(3.0 * math.pi / 8.0, rel=0.01)
    assert 3.8 <= d[0.02] / d[0.01] <= 4.05


def test_ellipse_rejects_bad_parameters():
    for bad in (0.0, -0.1, 1.5):
        with pytest.raises(BadParameter):
            families.ellipse(bad)
    with pytest.raises(BadParameter):
        families.ellipse(0.2, resolution=32)


# ---------------------------------------------------------------------------
# stadia
# ---------------------------------------------------------------------------

def test_stadium_deficit_closed_form():
    # two unit half-disks joined by a 2t straight section, then rescaled:
    # deficit = (2 pi + 4t) sqrt(pi / (pi + 4t)) - 2 pi
    for t in (0.25, 1.0, 2.0):
        body = families.stadium(t, resolution=2048)
        want = ((2.0 * math.pi + 4.0 * t)
                * math.sqrt(math.pi / (math.pi + 4.0 * t)) - 2.0 * math.pi)
        got = convex.perimeter(body) - 2.0 * math.pi
        assert convex.area(body) == pytest.approx(math.pi, rel=1e-12)
        assert got == pytest.approx(want, rel=1e-4)


def test_stadium_zero_ratio_is_a_disk():
    body = families.stadium(0.0, resolution=1024)
    deficit = convex.perimeter(body) - 2.0 * math.pi
    assert 0.0 <= deficit <= 1e-4


def test_stadium_rejects_bad_parameters():
    with pytest.raises(BadParameter):
        families.stadium(-0.5)
    with pytest.raises(BadParameter):
        families.stadium(1.0, resolution=16)


# ---------------------------------------------------------------------------
# random hulls
# ---------------------------------------------------------------------------

def test_random_convex_deterministic_and_seed_sensitive():
    a = families.random_convex(24, seed=7)
    b = families.random_convex(24, seed=7)
    c = families.random_convex(24, seed=8)
    assert np.array_equal(a.vertices, b.vertices)
    assert a.vertices.shape != c.vertices.shape or not np.array_equal(
        a.vertices, c.vertices)


def test_random_convex_normalized(hull_pool):
    for body in hull_pool:
        assert convex.area(body) == pytest.approx(math.pi, rel=1e-12)
        assert body.n >= 3


def test_random_convex_hull_size_distribution():
    sizes = [families.random_convex(1000, seed=s).n for s in range(60)]
    assert 8 <= min(sizes) and max(sizes) <= 40


def test_random_convex_rejects_tiny_samples():
    with pytest.raises(BadParameter):
        families.random_convex(2, seed=0)


# ---------------------------------------------------------------------------
# near balls
# ---------------------------------------------------------------------------

def test_near_ball_is_close_to_the_unit_ball():
    for seed in range(50):
        body = families.near_ball(seed=seed)
        assert convex.area(body) == pytest.approx(math.pi, rel=1e-12)
        gap = convex.hausdorff_to_disk(body, convex.centroid(body), 1.0)
        assert gap < 0.5


def test_near_ball_amplitude_scaling():
    calm = families.near_ball(seed=5, amplitude=0.01)
    wild = families.near_ball(seed=5, amplitude=0.3)
    gap = lambda b: convex.hausdorff_to_disk(b, convex.centroid(b), 1.0)
    assert gap(calm) < gap(wild) < 0.5


def test_near_ball_rejects_bad_parameters():
    with pytest.raises(BadParameter):
        families.near_ball(seed=0, amplitude=0.5)
    with pytest.raises(BadParameter):
        families.near_ball(seed=0, resolution=16)


# ---------------------------------------------------------------------------
# family specs
# ---------------------------------------------------------------------------

def test_family_spec_roundtrip():
    specs = [
        families.FamilySpec(kind="regular", parameter=12),
        families.FamilySpec(kind="ellipse", parameter=0.3, resolution=512),
        families.FamilySpec(kind="stadium", parameter=1.5, resolution=256),
        families.FamilySpec(kind="random", parameter=20, seed=9),
    ]
    for spec in specs:
        again = families.spec_from_json(families.spec_to_json(spec))
        assert again == spec
        assert np.array_equal(families.build(again).vertices,
                              families.build(spec).vertices)


def test_build_matches_direct_constructors():
    direct = families.regular_polygon(10)
    built = families.build(families.FamilySpec(kind="regular", parameter=10))
    assert np.array_equal(direct.vertices, built.vertices)

    direct = families.random_convex(30, seed=4)
    built = families.build(families.FamilySpec(kind="random", parameter=30,
                                               seed=4))
    assert np.array_equal(direct.vertices, built.vertices)


def test_build_rejects_unknown_kind():
    with pytest.raises(BadParameter):
        families.build(families.FamilySpec(kind="banana", parameter=1.0))
