"""First Dirichlet eigenvalue of convex polygons by P1 finite elements.

The mesh starts as a centroid fan (boundary edges pre-split so no edge
exceeds an eighth of the diameter), refines uniformly one-to-four, and the
per-level eigenvalues are extrapolated with the observed convergence order
fitted from the last three levels. Conforming elements approach the true
eigenvalue from above, so the level sequence must decrease; extrapolation
then cancels the leading error term.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from . import convex
from .convex import ConvexBody2D
from .errors import EmptyInterior, LevelOutOfRange, NoConvergence

__all__ = [
    "Mesh",
    "SpectralEstimate",
    "triangulate",
    "assemble",
    "smallest_eigenvalue",
    "lambda1",
    "mesh_to_json",
    "DISK_LAMBDA1",
]

# First zero of the Bessel function J0, squared: the unit disk's eigenvalue.
DISK_LAMBDA1 = 5.783185962946785

MAX_LEVEL = 8


@dataclass(frozen=True)
class Mesh:
    """Triangulation with lexicographically ordered nodes.

    ``boundary_mask`` flags nodes lying on the polygon boundary; ``h`` is
    the longest edge. Triangles are positively oriented index triples.
    """

    nodes: np.ndarray
    triangles: np.ndarray
    boundary_mask: np.ndarray
    level: int
    h: float


@dataclass(frozen=True)
class SpectralEstimate:
    """Per-level eigenvalues plus their fitted-order extrapolation."""

    per_level: list
    extrapolated: float
    error_estimate: float
    order_observed: float

    @property
    def finest(self) -> float:
        return self.per_level[-1][1]


def _fan_mesh(body: ConvexBody2D):
    """Centroid fan with boundary edges split to at most diameter / 8."""
    c = convex.centroid(body)
    limit = convex.diameter(body) / 8.0
    v = body.vertices
    boundary_pts = []
    for j in range(len(v)):
        a, b = v[j], v[(j + 1) % len(v)]
        m = int(np.ceil(np.linalg.norm(b - a) / limit))
        for t in np.arange(m) / m:
            boundary_pts.append((1.0 - t) * a + t * b)
    boundary_pts = np.asarray(boundary_pts)
    nb = len(boundary_pts)
    nodes = np.vstack([boundary_pts, c[None, :]])
    ci = nb
    idx = np.arange(nb)
    tris = np.stack([idx, (idx + 1) % nb, np.full(nb, ci)], axis=1)
    mask = np.ones(nb + 1, dtype=bool)
    mask[ci] = False
    return nodes, tris, mask


def _refine_once(nodes, tris, mask):
    """Uniform 1-to-4 refinement; midpoints of single-owner edges are boundary."""
    n0 = len(nodes)
    edges = np.concatenate([tris[:, [0, 1]], tris[:, [1, 2]], tris[:, [2, 0]]])
    uniq, inv, counts = np.unique(np.sort(edges, axis=1), axis=0,
                                  return_inverse=True, return_counts=True)
    mid = 0.5 * (nodes[uniq[:, 0]] + nodes[uniq[:, 1]])
    nodes = np.vstack([nodes, mid])
    mask = np.concatenate([mask, counts == 1])

    nt = len(tris)
    m01 = n0 + inv[:nt]
    m12 = n0 + inv[nt:2 * nt]
    m20 = n0 + inv[2 * nt:]
    tris = np.concatenate([
        np.stack([tris[:, 0], m01, m20], axis=1),
        np.stack([tris[:, 1], m12, m01], axis=1),
        np.stack([tris[:, 2], m20, m12], axis=1),
        np.stack([m01, m12, m20], axis=1),
    ])
    return nodes, tris, mask


def _canonicalize(nodes, tris, mask):
    """Order nodes lexicographically and triangles by their index triples."""
    order = np.lexsort((nodes[:, 1], nodes[:, 0]))
    perm = np.empty(len(nodes), dtype=np.int64)
    perm[order] = np.arange(len(nodes))
    nodes = np.ascontiguousarray(nodes[order])
    mask = mask[order]
    tris = perm[tris]

    roll = np.argmin(tris, axis=1)
    cols = (np.arange(3)[None, :] + roll[:, None]) % 3
    tris = np.take_along_axis(tris, cols, axis=1)
    tris = tris[np.lexsort((tris[:, 2], tris[:, 1], tris[:, 0]))]

    p = nodes[tris]
    sign = ((p[:, 1, 0] - p[:, 0, 0]) * (p[:, 2, 1] - p[:, 0, 1])
            - (p[:, 2, 0] - p[:, 0, 0]) * (p[:, 1, 1] - p[:, 0, 1]))
    flip = sign < 0.0
    tris[flip] = tris[flip][:, [0, 2, 1]]
    return nodes, np.ascontiguousarray(tris), mask


def _max_edge(nodes, tris) -> float:
    p = nodes[tris]
    d = np.array([
        np.max(np.sum((p[:, 0] - p[:, 1]) ** 2, axis=1)),
        np.max(np.sum((p[:, 1] - p[:, 2]) ** 2, axis=1)),
        np.max(np.sum((p[:, 2] - p[:, 0]) ** 2, axis=1)),
    ])
    return float(np.sqrt(np.max(d)))


def triangulate(body: ConvexBody2D, level: int) -> Mesh:
    """Mesh at the given refinement depth (0 is the pre-split centroid fan)."""
    if not 0 <= level <= MAX_LEVEL:
        raise LevelOutOfRange(f"level must be in [0, {MAX_LEVEL}], got {level}")
    nodes, tris, mask = _fan_mesh(body)
    for _ in range(level):
        nodes, tris, mask = _refine_once(nodes, tris, mask)
    nodes, tris, mask = _canonicalize(nodes, tris, mask)
    return Mesh(nodes=nodes, triangles=tris, boundary_mask=mask,
                level=level, h=_max_edge(nodes, tris))


def assemble(mesh: Mesh, dirichlet: bool = True):
    """Stiffness and mass matrices, restricted to interior nodes by default.

    Standard piecewise-linear elements: per triangle, the stiffness entries
    are (b_i b_j + c_i c_j) / (4 area) with b, c the gradient coefficients,
    and the consistent mass entries are area/6 on the diagonal, area/12 off.
    With ``dirichlet`` the boundary rows and columns are eliminated; without
    it the full matrices come back (useful for checking partition-of-unity
    identities).
    """
    nodes, tris = mesh.nodes, mesh.triangles
    x = nodes[tris, 0]
    y = nodes[tris, 1]
    jj = [1, 2, 0]
    kk = [2, 0, 1]
    b = y[:, jj] - y[:, kk]
    c = x[:, kk] - x[:, jj]
    area = ((x[:, 1] - x[:, 0]) * (y[:, 2] - y[:, 0])
            - (x[:, 2] - x[:, 0]) * (y[:, 1] - y[:, 0])) / 2.0
    if np.any(area <= 0.0):
        raise ArithmeticError("mesh contains a non-positive triangle")

    rows = np.repeat(tris, 3, axis=1).ravel()
    cols = np.tile(tris, (1, 3)).ravel()
    k_vals = ((b[:, :, None] * b[:, None, :] + c[:, :, None] * c[:, None, :])
              / (4.0 * area)[:, None, None]).ravel()
    m_pattern = (np.ones((3, 3)) + np.eye(3)) / 12.0
    m_vals = (area[:, None, None] * m_pattern[None]).ravel()

    n = len(nodes)
    stiffness = sp.coo_matrix((k_vals, (rows, cols)), shape=(n, n)).tocsr()
    mass = sp.coo_matrix((m_vals, (rows, cols)), shape=(n, n)).tocsr()

    if not dirichlet:
        return stiffness, mass
    interior = np.flatnonzero(~mesh.boundary_mask)
    if interior.size == 0:
        raise EmptyInterior("no interior nodes; refine the mesh")
    stiffness = stiffness[interior][:, interior]
    mass = mass[interior][:, interior]
    return stiffness, mass


def smallest_eigenvalue(stiffness, mass, tol: float = 1e-10) -> float:
    """Smallest generalized eigenvalue by shift-free inverse iteration.

    Each step solves stiffness * y = mass * x. The contract is on solve
    quality, not method: the normwise relative residual
    ||K y - b|| / (||K|| ||y|| + ||b||) must stay below tol / 10, with one
    round of iterative refinement if the factorization alone misses it.
    The Rayleigh quotient stops when two successive values agree to
    tol * lambda. Caps at 500 iterations.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    lu = splu(stiffness.tocsc())
    k_norm = sp.linalg.norm(stiffness, np.inf)
    x = np.ones(stiffness.shape[0])
    x /= np.sqrt(x @ (mass @ x))
    lam_old = np.inf
    for _ in range(500):
        rhs = mass @ x

        def backward_error(sol):
            num = np.linalg.norm(stiffness @ sol - rhs)
            return num / (k_norm * np.linalg.norm(sol) + np.linalg.norm(rhs))

        y = lu.solve(rhs)
        resid = backward_error(y)
        if resid > tol / 10.0:
            y += lu.solve(rhs - stiffness @ y)
            resid = backward_error(y)
        if resid > tol / 10.0:
            raise NoConvergence(f"linear solve residual {resid:.3e} exceeds budget")
        my = mass @ y
        lam = float((y @ (stiffness @ y)) / (y @ my))
        x = y / np.sqrt(y @ my)
        if abs(lam - lam_old) < tol * lam:
            return lam
        lam_old = lam
    raise NoConvergence("inverse iteration hit the 500-iteration cap")


def _extrapolate(lams):
    """Fit lambda + C h^p through the last three levels (h halves per level)."""
    l2, l1, l0 = lams[-3], lams[-2], lams[-1]
    d1 = l2 - l1
    d2 = l1 - l0
    if d1 > 0.0 and d2 > 0.0 and d1 > d2:
        p = float(np.log2(d1 / d2))
        extrap = l0 - d2 / (2.0 ** p - 1.0)
    elif d2 > 0.0:
        p = 2.0
        extrap = l0 - d2 / 3.0
    else:
        p = 2.0
        extrap = l0
    return extrap, p


def lambda1(body: ConvexBody2D, levels: int = 4, tol: float = 1e-10) -> SpectralEstimate:
    """Extrapolated first Dirichlet eigenvalue from refinement levels 0..levels."""
    if not 2 <= levels <= MAX_LEVEL:
        raise LevelOutOfRange(f"levels must be in [2, {MAX_LEVEL}], got {levels}")
    nodes, tris, mask = _fan_mesh(body)
    per_level = []
    for lvl in range(levels + 1):
        if lvl > 0:
            nodes, tris, mask = _refine_once(nodes, tris, mask)
        cn, ct, cm = _canonicalize(nodes, tris, mask)
        mesh = Mesh(nodes=cn, triangles=ct, boundary_mask=cm,
                    level=lvl, h=_max_edge(cn, ct))
        k_mat, m_mat = assemble(mesh)
        per_level.append((mesh.h, smallest_eigenvalue(k_mat, m_mat, tol)))

    lams = [lam for _, lam in per_level]
    extrap, order = _extrapolate(lams)
    return SpectralEstimate(per_level=per_level,
                            extrapolated=extrap,
                            error_estimate=abs(lams[-1] - extrap),
                            order_observed=order)


def mesh_to_json(mesh: Mesh) -> str:
    """Serialize for external visualization."""
    import json

    return json.dumps({
        "nodes": mesh.nodes.tolist(),
        "triangles": mesh.triangles.tolist(),
        "boundary": mesh.boundary_mask.astype(int).tolist(),
    })
