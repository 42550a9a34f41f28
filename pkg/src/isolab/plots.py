"""Figure rendering for report-producing commands.

Each plotting helper takes the same rows the delimited output is built
from and writes a PNG next to it. Rendering uses the Agg backend so the
CLI works headless.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .spectral import DISK_LAMBDA1  # noqa: E402
from .verify import row_values  # noqa: E402

__all__ = [
    "plot_body",
    "plot_diagram",
    "plot_sweep",
    "plot_beta",
    "plot_gauge_ratios",
]

TWO_PI = 2.0 * math.pi


def _finite_pairs(rows, x_field, y_field):
    xs, ys = [], []
    for row in rows:
        vals = row_values(row)
        x, y = vals[x_field], vals[y_field]
        if math.isfinite(x) and math.isfinite(y):
            xs.append(x)
            ys.append(y)
    return np.asarray(xs), np.asarray(ys)


def _circle(ax, center, radius, **kw):
    t = np.linspace(0.0, TWO_PI, 256)
    ax.plot(center[0] + radius * np.cos(t), center[1] + radius * np.sin(t), **kw)


def plot_body(body, path, melas=None, centroid=None) -> None:
    """Outline of one body with its comparison circles."""
    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    v = np.vstack([body.vertices, body.vertices[:1]])
    ax.plot(v[:, 0], v[:, 1], "-", color="0.2", lw=1.5, label="body")
    if centroid is not None:
        _circle(ax, centroid, 1.0, color="goldenrod", ls="--", lw=1.2,
                label="unit circle at centroid")
    if melas is not None:
        _circle(ax, melas.inner_ball.center, melas.inner_ball.radius,
                color="tab:green", lw=1.0, label="inscribed ball")
        _circle(ax, melas.outer_ball.center, melas.outer_ball.radius,
                color="tab:red", lw=1.0, label="enclosing ball")
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_diagram(rows, path) -> None:
    """Perimeter against lambda1, random cloud plus reference curves."""
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    groups = {"random": ("0.25", 8, "random hulls"),
              "regular": ("tab:red", 22, "regular polygons"),
              "stadium": ("tab:blue", 22, "stadia")}
    for kind, (color, size, label) in groups.items():
        sub = [r for r in rows if r.kind == kind]
        if not sub:
            continue
        x, y = _finite_pairs(sub, "perimeter", "lambda1")
        ax.scatter(x, y, s=size, c=color, label=label,
                   alpha=0.6 if kind == "random" else 1.0, zorder=3)
    ax.scatter([TWO_PI], [DISK_LAMBDA1], marker="*", s=120, c="goldenrod",
               label="disk", zorder=4)
    ax.set_xlabel("perimeter at area pi")
    ax.set_ylabel("first Dirichlet eigenvalue")
    ax.legend(loc="upper left")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_sweep(result, path, x_field: str = "deficit",
               y_field: str = "fraenkel") -> None:
    """Log-log scatter of a sweep with its fitted power law, when present."""
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    x, y = _finite_pairs(result.rows, x_field, y_field)
    keep = (x > 0) & (y > 0)
    x, y = x[keep], y[keep]
    ax.loglog(x, y, "o", color="tab:blue")
    fit = result.slopes.get(f"{y_field}_vs_{x_field}")
    if fit is not None and len(x):
        grid = np.geomspace(x.min(), x.max(), 64)
        ax.loglog(grid, np.exp(fit.intercept) * grid ** fit.slope, "-",
                  color="tab:red",
                  label=f"slope {fit.slope:.3f} +- {fit.half_width:.3f}")
        ax.legend()
    ax.set_xlabel(x_field)
    ax.set_ylabel(y_field)
    ax.set_title(f"{result.family} family")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_beta(result, path) -> None:
    """Per-k power-law ratios against 1/k with the extrapolated coefficient."""
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    inc = [(1.0 / r.k, r.ratio) for r in result.rows if r.included]
    exc = [(1.0 / r.k, r.ratio) for r in result.rows if not r.included]
    if inc:
        ax.plot(*zip(*inc), "o", color="tab:blue", label="included k")
    if exc:
        ax.plot(*zip(*exc), "x", color="0.5", label="excluded k")
    ax.axhline(result.reference, color="tab:red", ls="--",
               label=f"reference {result.reference:.5f}")
    ax.plot([0.0], [result.beta_hat], "s", color="tab:green",
            label=f"extrapolated {result.beta_hat:.5f}")
    ax.set_xlabel("1 / k")
    ax.set_ylabel("relative gap / deficit^(3/2)")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_gauge_ratios(ks, ratios, path) -> None:
    """Gauge integral ratio against edge count, with the 1/2 asymptote."""
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    ax.semilogx(ks, ratios, "o-", color="tab:blue")
    ax.axhline(0.5, color="tab:red", ls="--", label="limit 1/2")
    ax.set_xlabel("edge count")
    ax.set_ylabel("integral ratio")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
