"""Exact geometry for planar convex bodies given as vertex polygons.

Everything in this module is closed form: shoelace areas, piecewise gauge
and support functions, Hausdorff distances via arc maxima over the normal
fan, Steiner areas both as a polynomial and as an explicit outer parallel
body. No operation here discretizes anything.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import Degenerate, NotConvex, OriginOutside

__all__ = [
    "ConvexBody2D",
    "GaugeProfile",
    "Quermass2D",
    "make_polygon",
    "area",
    "perimeter",
    "centroid",
    "diameter",
    "normalize_area",
    "support",
    "support_integral",
    "gauge_profile",
    "gauge_area",
    "gauge_perimeter",
    "radial",
    "contains_point",
    "distance_to_boundary",
    "hausdorff_to_disk",
    "hausdorff_between",
    "steiner_area",
    "steiner_area_offset",
    "mean_width",
    "quermassintegrals",
    "body_to_json",
    "body_from_json",
    "load_body",
    "save_body",
]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ConvexBody2D:
    """Convex polygon stored as an (n, 2) float array of CCW vertices.

    Instances are produced by :func:`make_polygon`, which validates the
    input; the transforms in this module construct new instances directly
    because convexity is preserved.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def n(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Quermass2D:
    """The three 2-D quermassintegrals: area, half perimeter, pi."""

    w0: float
    w1: float
    w2: float


def make_polygon(points) -> ConvexBody2D:
    """Validate a vertex list and return a convex body.

    Accepts either orientation (clockwise input is reversed), tolerates
    collinear vertices, and drops a repeated closing vertex. Raises
    Degenerate for fewer than three distinct vertices or vanishing area,
    NotConvex for reflex turns or a boundary that does not wind exactly
    once.
    """
    v = np.asarray(points, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2 or not np.all(np.isfinite(v)):
        raise Degenerate("expected a finite (n, 2) array of vertices")
    if len(v) >= 2 and np.linalg.norm(v[-1] - v[0]) <= 1e-12:
        v = v[:-1]
    if len(v) < 3:
        raise Degenerate("need at least 3 distinct vertices")
    gaps = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)
    if np.any(gaps <= 1e-12):
        raise Degenerate("consecutive vertices coincide")

    signed = _signed_area(v)
    scale2 = float(np.max(np.sum((v - v.mean(axis=0)) ** 2, axis=1)))
    if abs(signed) <= 1e-12 * scale2:
        raise Degenerate("vertices are collinear")
    if signed < 0.0:
        v = v[::-1].copy()

    e = np.roll(v, -1, axis=0) - v
    cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
    if np.any(cross < -1e-10 * scale2):
        raise NotConvex("reflex turn detected")
    turn = np.arctan2(cross, np.sum(e * np.roll(e, -1, axis=0), axis=1))
    if abs(float(np.sum(turn)) - TWO_PI) > 1e-6:
        raise NotConvex("boundary does not wind exactly once")
    return ConvexBody2D(v)


def _signed_area(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    x1, y1 = np.roll(x, -1), np.roll(y, -1)
    return 0.5 * float(np.sum(x * y1 - x1 * y))


def area(body: ConvexBody2D) -> float:
    """Enclosed area by the shoelace formula."""
    return _signed_area(body.vertices)


def perimeter(body: ConvexBody2D) -> float:
    """Total boundary length."""
    v = body.vertices
    return float(np.sum(np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)))


def centroid(body: ConvexBody2D) -> np.ndarray:
    """Area centroid of the polygon."""
    v = body.vertices
    w = np.roll(v, -1, axis=0)
    cr = v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]
    a = 0.5 * np.sum(cr)
    return np.sum((v + w) * cr[:, None], axis=0) / (6.0 * a)


def diameter(body: ConvexBody2D) -> float:
    """Largest pairwise vertex distance."""
    v = body.vertices
    best = 0.0
    for i in range(len(v) - 1):
        d = np.max(np.sum((v[i + 1:] - v[i]) ** 2, axis=1))
        if d > best:
            best = d
    return float(np.sqrt(best))


def normalize_area(body: ConvexBody2D, target: float = np.pi) -> ConvexBody2D:
    """Rescale about the centroid so the area equals ``target`` exactly."""
    if target <= 0.0:
        raise ValueError("target area must be positive")
    c = centroid(body)
    s = np.sqrt(target / area(body))
    return ConvexBody2D(c + s * (body.vertices - c))


def translate(body: ConvexBody2D, offset) -> ConvexBody2D:
    return ConvexBody2D(body.vertices + np.asarray(offset, float))


def rotate(body: ConvexBody2D, angle: float) -> ConvexBody2D:
    c, s = np.cos(angle), np.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    return ConvexBody2D(body.vertices @ rot.T)


# ---------------------------------------------------------------------------
# support function and the normal fan
# ---------------------------------------------------------------------------

def support(body: ConvexBody2D, angle):
    """Support function h(angle) = max over vertices of v . (cos, sin).

    ``angle`` may be a scalar or an array.
    """
    th = np.asarray(angle, dtype=float)
    u = np.stack([np.cos(th), np.sin(th)], axis=-1)
    vals = u @ body.vertices.T
    out = np.max(vals, axis=-1)
    return float(out) if np.isscalar(angle) or th.ndim == 0 else out


def _edge_normal_angles(body: ConvexBody2D) -> np.ndarray:
    """Outward normal angle of each edge, CCW increasing once unwrapped."""
    v = body.vertices
    e = np.roll(v, -1, axis=0) - v
    return np.arctan2(-e[:, 0], e[:, 1])


def _vertex_arcs(body: ConvexBody2D):
    """Normal-fan arc [lo_j, hi_j] of directions whose support argmax is vertex j.

    Arcs are returned with lo <= hi after unwrapping; widths are the
    exterior angles and sum to 2 pi.
    """
    phi = _edge_normal_angles(body)
    lo = np.roll(phi, 1)
    width = np.mod(phi - lo, TWO_PI)
    return lo, lo + width


def support_integral(body: ConvexBody2D) -> float:
    """Closed-form integral of the support function over all directions.

    For polygons this equals the perimeter (the Cauchy projection formula),
    which :func:`mean_width` uses as a cross-check.
    """
    lo, hi = _vertex_arcs(body)
    v = body.vertices
    return float(np.sum(v[:, 0] * (np.sin(hi) - np.sin(lo))
                        - v[:, 1] * (np.cos(hi) - np.cos(lo))))


def mean_width(body: ConvexBody2D) -> float:
    """Mean width, computed via the support integral and via the perimeter.

    The two closed forms must agree to 1e-10 times the scale; their common
    value perimeter / pi is returned.
    """
    p = perimeter(body)
    s = support_integral(body)
    if abs(s - p) > 1e-10 * max(1.0, p):
        raise ArithmeticError("support integral and perimeter disagree")
    return p / np.pi


def quermassintegrals(body: ConvexBody2D) -> Quermass2D:
    """Quermassintegrals (W0, W1, W2) = (area, perimeter / 2, pi).

    W1 is cross-checked against (pi / 2) times the mean width.
    """
    w1 = 0.5 * perimeter(body)
    alt = 0.5 * np.pi * mean_width(body)
    if abs(w1 - alt) > 1e-10 * max(1.0, w1):
        raise ArithmeticError("mean width route disagrees with perimeter route")
    return Quermass2D(area(body), w1, float(np.pi))


# ---------------------------------------------------------------------------
# gauge function (reciprocal radial function) of a star-shaped origin
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaugeProfile:
    """Piecewise description u(theta) = cos(theta - phi_j) / d_j per edge.

    Sector j covers [theta0[j], theta1[j]) with theta increasing and
    theta1[j] == theta0[j + 1]; the final sector ends at theta0[0] + 2 pi.
    ``phi`` is unwrapped so that theta - phi stays inside (-pi/2, pi/2) on
    each sector.
    """

    origin: np.ndarray
    phi: np.ndarray
    dist: np.ndarray
    theta0: np.ndarray
    theta1: np.ndarray

    @property
    def pieces(self):
        return list(zip(self.phi, self.dist, self.theta0, self.theta1))

    def piece_of(self, theta):
        t = np.mod(np.asarray(theta, float) - self.theta0[0], TWO_PI) + self.theta0[0]
        idx = np.searchsorted(self.theta0, t, side="right") - 1
        return np.clip(idx, 0, len(self.phi) - 1)

    def u(self, theta):
        """Gauge value(s); u(theta) * radial distance = 1."""
        j = self.piece_of(theta)
        t = np.mod(np.asarray(theta, float) - self.theta0[0], TWO_PI) + self.theta0[0]
        val = np.cos(t - self.phi[j]) / self.dist[j]
        return float(val) if np.isscalar(theta) else val

    def du(self, theta):
        """Derivative of the gauge in the angle: -sin(theta - phi_j) / d_j."""
        j = self.piece_of(theta)
        t = np.mod(np.asarray(theta, float) - self.theta0[0], TWO_PI) + self.theta0[0]
        val = -np.sin(t - self.phi[j]) / self.dist[j]
        return float(val) if np.isscalar(theta) else val

    def r(self, theta):
        """Radial function: distance from the origin to the boundary."""
        u = self.u(theta)
        return 1.0 / u


def gauge_profile(body: ConvexBody2D, origin=None) -> GaugeProfile:
    """Exact gauge profile about ``origin`` (default: the centroid).

    Raises OriginOutside unless the origin is at distance > 1e-9 from
    every edge line on the interior side.
    """
    o = centroid(body) if origin is None else np.asarray(origin, dtype=float)
    v = body.vertices - o
    e = np.roll(v, -1, axis=0) - v
    lengths = np.linalg.norm(e, axis=1)
    nrm = np.stack([e[:, 1], -e[:, 0]], axis=1) / lengths[:, None]
    d = np.sum(v * nrm, axis=1)
    if np.any(d <= 1e-9):
        raise OriginOutside("origin is not strictly inside the body")

    th = np.arctan2(v[:, 1], v[:, 0])
    theta0 = np.empty(len(v))
    theta0[0] = th[0]
    for j in range(1, len(v)):
        theta0[j] = theta0[j - 1] + np.mod(th[j] - th[j - 1], TWO_PI)
    theta1 = np.empty_like(theta0)
    theta1[:-1] = theta0[1:]
    theta1[-1] = theta0[0] + TWO_PI

    phi_raw = np.arctan2(nrm[:, 1], nrm[:, 0])
    mid = 0.5 * (theta0 + theta1)
    phi = phi_raw + TWO_PI * np.round((mid - phi_raw) / TWO_PI)
    return GaugeProfile(o, phi, d, theta0, theta1)


def radial(body: ConvexBody2D, origin, angle):
    """Distance from ``origin`` to the boundary along direction ``angle``."""
    return gauge_profile(body, origin).r(angle)


def gauge_area(profile: GaugeProfile) -> float:
    """Area from the gauge: one half the integral of r(theta) squared."""
    a = profile.theta0 - profile.phi
    b = profile.theta1 - profile.phi
    return float(np.sum(0.5 * profile.dist ** 2 * (np.tan(b) - np.tan(a))))


def gauge_perimeter(profile: GaugeProfile) -> float:
    """Perimeter from the gauge: integral of sqrt(u^2 + u'^2) / u^2."""
    a = profile.theta0 - profile.phi
    b = profile.theta1 - profile.phi
    return float(np.sum(profile.dist * (np.tan(b) - np.tan(a))))


# ---------------------------------------------------------------------------
# point queries and Hausdorff distances
# ---------------------------------------------------------------------------

def contains_point(body: ConvexBody2D, point, tol: float = 0.0) -> bool:
    p = np.asarray(point, float)
    v = body.vertices
    e = np.roll(v, -1, axis=0) - v
    w = p - v
    cross = e[:, 0] * w[:, 1] - e[:, 1] * w[:, 0]
    return bool(np.all(cross >= -tol))


def distance_to_boundary(body: ConvexBody2D, point) -> float:
    """Euclidean distance from a point to the polygon boundary."""
    p = np.asarray(point, float)
    v = body.vertices
    w = np.roll(v, -1, axis=0)
    e = w - v
    t = np.clip(np.sum((p - v) * e, axis=1) / np.sum(e * e, axis=1), 0.0, 1.0)
    proj = v + t[:, None] * e
    return float(np.min(np.linalg.norm(proj - p, axis=1)))


def _point_to_body(body: ConvexBody2D, points: np.ndarray) -> np.ndarray:
    """Distance from each point to the body (0 inside), vectorized."""
    pts = np.atleast_2d(points)
    v = body.vertices
    e = np.roll(v, -1, axis=0) - v
    ee = np.sum(e * e, axis=1)
    w = pts[:, None, :] - v[None, :, :]
    t = np.clip(np.einsum("pev,ev->pe", w, e) / ee, 0.0, 1.0)
    proj = v[None] + t[..., None] * e[None]
    d = np.min(np.linalg.norm(proj - pts[:, None, :], axis=2), axis=1)
    cross = np.einsum("ev,pev->pe", np.stack([-e[:, 1], e[:, 0]], axis=1), w)
    inside = np.all(cross <= 0.0, axis=1)
    d[inside] = 0.0
    return d


def hausdorff_to_disk(body: ConvexBody2D, center, radius: float) -> float:
    """Exact Hausdorff distance between the body and a closed disk.

    Equals the sup norm of the support function difference. On each
    normal-fan arc where vertex v is the support argmax the difference is
    (v - center) . u - radius, whose absolute maximum sits at the arc
    endpoints or where u lines up with +-(v - center).
    """
    c = np.asarray(center, float)
    lo, hi = _vertex_arcs(body)
    w = body.vertices - c
    rho = np.linalg.norm(w, axis=1)
    psi = np.arctan2(w[:, 1], w[:, 0])

    def f_at(theta):
        return w[:, 0] * np.cos(theta) + w[:, 1] * np.sin(theta) - radius

    cand = np.abs(np.concatenate([f_at(lo), f_at(hi)]))
    width = hi - lo
    in_arc = np.mod(psi - lo, TWO_PI) <= width
    anti = np.mod(psi + np.pi - lo, TWO_PI) <= width
    vals = [np.max(cand)]
    if np.any(in_arc):
        vals.append(np.max(np.abs(rho[in_arc] - radius)))
    if np.any(anti):
        vals.append(np.max(rho[anti] + radius))
    return float(max(vals))


def hausdorff_between(a: ConvexBody2D, b: ConvexBody2D) -> float:
    """Hausdorff distance between two convex polygons.

    The supremum of the distance-to-body function over a convex body is
    attained at a vertex, so checking vertices of each against the other
    is exact.
    """
    d_ab = float(np.max(_point_to_body(b, a.vertices)))
    d_ba = float(np.max(_point_to_body(a, b.vertices)))
    return max(d_ab, d_ba)


# ---------------------------------------------------------------------------
# Steiner formula
# ---------------------------------------------------------------------------

def steiner_area(body: ConvexBody2D, rho: float) -> float:
    """Area of the outer parallel set at distance rho, as a polynomial.

    area + perimeter * rho + pi * rho^2.
    """
    if rho < 0.0:
        raise ValueError("offset distance must be nonnegative")
    return area(body) + perimeter(body) * rho + np.pi * rho * rho


def steiner_area_offset(body: ConvexBody2D, rho: float) -> float:
    """Area of the outer parallel set built explicitly edge by edge.

    Green's theorem over the offset boundary: straight pieces contribute
    shoelace terms, each vertex contributes a circular arc whose line
    integral has a closed form. Serves as the independent cross-check of
    :func:`steiner_area`.
    """
    if rho < 0.0:
        raise ValueError("offset distance must be nonnegative")
    v = body.vertices
    e = np.roll(v, -1, axis=0) - v
    lengths = np.linalg.norm(e, axis=1)
    nrm = np.stack([e[:, 1], -e[:, 0]], axis=1) / lengths[:, None]
    phi = np.arctan2(nrm[:, 1], nrm[:, 0])

    total = 0.0
    n = len(v)
    for j in range(n):
        a = v[j] + rho * nrm[j]
        b = v[(j + 1) % n] + rho * nrm[j]
        total += 0.5 * (a[0] * b[1] - a[1] * b[0])
        # arc at vertex j+1 from normal j to normal j+1
        jj = (j + 1) % n
        alpha = phi[j]
        beta = alpha + np.mod(phi[jj] - phi[j], TWO_PI)
        cx, cy = v[jj]
        ea = np.array([np.cos(alpha), np.sin(alpha)])
        eb = np.array([np.cos(beta), np.sin(beta)])
        total += 0.5 * rho * (cx * (eb[1] - ea[1]) - cy * (eb[0] - ea[0]))
        total += 0.5 * rho * rho * (beta - alpha)
    return float(total)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def body_to_json(body: ConvexBody2D) -> str:
    """Serialize as {"vertices": [[x, y], ...]} with 17 significant digits."""
    rows = ", ".join(
        "[%.17g, %.17g]" % (x, y) for x, y in body.vertices
    )
    return '{"vertices": [%s]}' % rows


def body_from_json(text: str) -> ConvexBody2D:
    obj = json.loads(text)
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise Degenerate('shape JSON must be an object with a "vertices" key')
    return make_polygon(obj["vertices"])


def load_body(path) -> ConvexBody2D:
    with open(path, "r", encoding="utf-8") as fh:
        return body_from_json(fh.read())


def save_body(body: ConvexBody2D, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(body_to_json(body) + "\n")
