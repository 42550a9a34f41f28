"""Parameterized generators of convex test bodies, normalized to area pi.

Four families: regular polygons, inscribed-ellipse polygons, stadia
(rectangles with semicircular caps), and convex hulls of seeded uniform
points. Random draws use a counter-based generator so a seed pins the
shape exactly, independent of call order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import convex
from .convex import ConvexBody2D, make_polygon
from .errors import BadK, BadParameter, Degenerate

__all__ = [
    "FamilySpec",
    "regular_polygon",
    "ellipse",
    "stadium",
    "random_convex",
    "near_ball",
    "build",
    "spec_to_json",
    "spec_from_json",
]

DEFAULT_AREA = float(np.pi)
MIN_RESOLUTION = 64


@dataclass(frozen=True)
class FamilySpec:
    """Recipe for one generated body; serializable for reproducibility."""

    kind: str
    parameter: float
    resolution: int = 0
    seed: int = 0


def regular_polygon(k: int, target_area: float = DEFAULT_AREA) -> ConvexBody2D:
    """Regular k-gon with exact area, first vertex on the positive x-axis."""
    if int(k) != k or k < 3:
        raise BadK(f"need an integer k >= 3, got {k!r}")
    k = int(k)
    r = np.sqrt(2.0 * target_area / (k * np.sin(2.0 * np.pi / k)))
    ang = 2.0 * np.pi * np.arange(k) / k
    return make_polygon(r * np.stack([np.cos(ang), np.sin(ang)], axis=1))


def ellipse(eps: float, resolution: int = 1024,
            target_area: float = DEFAULT_AREA) -> ConvexBody2D:
    """Polygon inscribed in the ellipse with semi-axes (1, 1 + eps).

    Sampled at equal parameter angles and then rescaled to the target
    area, so the deficit is the scale-invariant one.
    """
    if not 0.0 < eps <= 1.0:
        raise BadParameter(f"eps must be in (0, 1], got {eps!r}")
    if resolution < MIN_RESOLUTION:
        raise BadParameter(f"resolution must be >= {MIN_RESOLUTION}")
    t = 2.0 * np.pi * np.arange(resolution) / resolution
    pts = np.stack([np.cos(t), (1.0 + eps) * np.sin(t)], axis=1)
    return convex.normalize_area(make_polygon(pts), target_area)


def stadium(cap_ratio: float, resolution: int = 1024,
            target_area: float = DEFAULT_AREA) -> ConvexBody2D:
    """Rectangle of half-length cap_ratio (in cap radii) with semicircular caps.

    cap_ratio 0 degenerates to the disk. Before normalization the unit-cap
    stadium has area pi + 4 * cap_ratio and perimeter 2 pi + 4 * cap_ratio.
    """
    if cap_ratio < 0.0:
        raise BadParameter(f"cap_ratio must be >= 0, got {cap_ratio!r}")
    if resolution < MIN_RESOLUTION:
        raise BadParameter(f"resolution must be >= {MIN_RESOLUTION}")
    half = resolution // 2
    right = np.linspace(-np.pi / 2.0, np.pi / 2.0, half + 1)
    left = np.linspace(np.pi / 2.0, 3.0 * np.pi / 2.0, resolution - half + 1)
    pts = np.concatenate([
        np.stack([cap_ratio + np.cos(right), np.sin(right)], axis=1),
        np.stack([-cap_ratio + np.cos(left), np.sin(left)], axis=1),
    ])
    keep = np.ones(len(pts), dtype=bool)
    keep[1:] = np.linalg.norm(np.diff(pts, axis=0), axis=1) > 1e-12
    if np.linalg.norm(pts[-1] - pts[0]) <= 1e-12:
        keep[-1] = False
    return convex.normalize_area(make_polygon(pts[keep]), target_area)


def _turn(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _convex_hull(points: np.ndarray) -> np.ndarray:
    """Monotone-chain hull, strict turns only, CCW order."""
    pts = points[np.lexsort((points[:, 1], points[:, 0]))]
    lower = []
    for p in pts:
        while len(lower) >= 2 and _turn(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in pts[::-1]:
        while len(upper) >= 2 and _turn(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    return np.asarray(lower[:-1] + upper[:-1])


def random_convex(n_points: int, seed: int = 0,
                  target_area: float = DEFAULT_AREA) -> ConvexBody2D:
    """Convex hull of n_points uniform draws in the unit square, normalized.

    Deterministic in the seed. Degenerate hulls (fewer than 3 strict
    vertices) trigger a resample, bounded at 100 attempts.
    """
    if n_points < 3:
        raise BadParameter(f"need n_points >= 3, got {n_points!r}")
    rng = np.random.Generator(np.random.Philox(seed))
    for _ in range(100):
        hull = _convex_hull(rng.random((n_points, 2)))
        if len(hull) >= 3:
            return convex.normalize_area(make_polygon(hull), target_area)
    raise Degenerate("could not draw a non-degenerate hull in 100 attempts")


def near_ball(seed: int = 0, amplitude: float = 0.08, resolution: int = 256,
              target_area: float = DEFAULT_AREA) -> ConvexBody2D:
    """Random smooth perturbation of the disk, guaranteed convex.

    The support function is 1 + sum of c_m cos(m theta + phase_m) over
    modes m = 2..5; convexity of the support body needs h + h'' >= 0,
    which holds when sum (m^2 - 1)|c_m| <= 1, enforced by scaling the
    draw to ``amplitude``. Boundary points come from the support
    parameterization (h cos - h' sin, h sin + h' cos).
    """
    if not 0.0 <= amplitude < 0.5:
        raise BadParameter("amplitude must be in [0, 0.5)")
    if resolution < MIN_RESOLUTION:
        raise BadParameter(f"resolution must be >= {MIN_RESOLUTION}")
    rng = np.random.Generator(np.random.Philox(key=seed, counter=7))
    modes = np.arange(2, 6)
    coef = rng.uniform(-1.0, 1.0, size=modes.size)
    phase = rng.uniform(0.0, 2.0 * np.pi, size=modes.size)
    weight = float(np.sum((modes ** 2 - 1) * np.abs(coef)))
    if weight > 0.0:
        coef *= amplitude / weight

    th = 2.0 * np.pi * np.arange(resolution) / resolution
    arg = np.outer(modes, th) + phase[:, None]
    h = 1.0 + coef @ np.cos(arg)
    hp = -(coef * modes) @ np.sin(arg)
    pts = np.stack([h * np.cos(th) - hp * np.sin(th),
                    h * np.sin(th) + hp * np.cos(th)], axis=1)
    return convex.normalize_area(make_polygon(pts), target_area)


def build(spec: FamilySpec, target_area: float = DEFAULT_AREA) -> ConvexBody2D:
    """Materialize a FamilySpec."""
    if spec.kind == "regular":
        return regular_polygon(int(spec.parameter), target_area)
    if spec.kind == "ellipse":
        return ellipse(spec.parameter, spec.resolution or 1024, target_area)
    if spec.kind == "stadium":
        return stadium(spec.parameter, spec.resolution or 1024, target_area)
    if spec.kind == "random":
        return random_convex(int(spec.parameter), spec.seed, target_area)
    raise BadParameter(f"unknown family kind {spec.kind!r}")


def spec_to_json(spec: FamilySpec) -> str:
    return json.dumps({"kind": spec.kind, "parameter": spec.parameter,
                       "resolution": spec.resolution, "seed": spec.seed})


def spec_from_json(text: str) -> FamilySpec:
    obj = json.loads(text)
    return FamilySpec(kind=obj["kind"], parameter=obj["parameter"],
                      resolution=int(obj.get("resolution", 0)),
                      seed=int(obj.get("seed", 0)))
