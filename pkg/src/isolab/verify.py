"""Inequality harness: reports, sweeps, exponent fits, and diagram sampling.

Every body is rescaled to area pi before anything is measured, so the
perimeter deficit, the asymmetries, and the spectral gap are the scale
invariant quantities that the inequalities relate. The disk eigenvalue
enters as a compiled constant (the squared first Bessel zero) so solver
error never contaminates the gap of the comparison ball.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta

from . import asymmetry, convex, families, spectral
from .convex import ConvexBody2D
from .errors import (AccuracyBudgetExceeded, InsufficientData,
                     LevelOutOfRange, TooFarFromBall)
from .spectral import DISK_LAMBDA1

__all__ = [
    "DISK_LAMBDA1",
    "BETA_REFERENCE",
    "CSV_COLUMNS",
    "InequalityReport",
    "ReportRow",
    "SweepResult",
    "ExponentFit",
    "BetaK",
    "BetaFitResult",
    "RegimeMin",
    "MinRatioScan",
    "GaugeLemmaResult",
    "report",
    "report_row",
    "row_values",
    "write_csv",
    "rows_to_json",
    "sweep",
    "fit_exponent",
    "beta_fit",
    "diagram",
    "min_ratio_scan",
    "gauge_lemma_ratio",
    "gauge_quadrature_gap",
]

TWO_PI = 2.0 * math.pi

# Coefficient of the three-halves power law for regular polygons, in the
# relative spectral gap: 4 * 3^(3/2) * zeta(3) / pi^(9/2).
BETA_REFERENCE = float(4.0 * 3.0 ** 1.5 * zeta(3) / np.pi ** 4.5)

# Deficit below which a body counts as a ball and ratio columns go NaN.
DEFICIT_FLOOR = 1e-6

RATIO_KEYS = ("r_main", "r_frank", "r_fk", "r_haus", "r_fmp", "r_brasco", "r_conj")

CSV_COLUMNS = (
    "id", "kind", "parameter", "area", "perimeter", "deficit", "fraenkel",
    "hausdorff_asym", "melas", "d_hausdorff", "lambda1", "lambda1_err",
    "dlambda1",
) + RATIO_KEYS


@dataclass(frozen=True)
class InequalityReport:
    """All functionals of one area-normalized body, plus inequality ratios.

    ``melas`` is an upper bound for the optimal two-ball distance (the
    balls are not jointly optimized). ``d_hausdorff`` is the distance to
    the centroid-centered unit ball; ``hausdorff_asym`` optimizes the
    center. Ratio keys: r_main = gap/deficit^2, r_frank = fraenkel/deficit,
    r_fk = gap/fraenkel^2, r_haus = d_hausdorff*2pi/deficit, r_fmp =
    deficit/fraenkel^2, r_brasco = lambda1/perimeter^2, r_conj =
    gap/deficit^(3/2). Deficit-based ratios are NaN below the deficit
    floor; spectral fields are NaN when the eigensolve is skipped.
    """

    area: float
    perimeter: float
    deficit: float
    fraenkel: float
    hausdorff_asym: float
    melas: float
    d_hausdorff: float
    lambda1: float
    lambda1_err: float
    dlambda1: float
    ratios: dict
    converged: bool = True


@dataclass(frozen=True)
class ReportRow:
    """Report plus the identity of the body it describes."""

    id: str
    kind: str
    parameter: float
    report: InequalityReport


def report(body: ConvexBody2D, spectral_levels: int = 4,
           tol: float = 1e-10) -> InequalityReport:
    """Normalize to area pi and evaluate every functional and ratio.

    ``spectral_levels = 0`` skips the eigensolve (geometry-only reports
    for sweeps that do not need it); spectral fields are then NaN.
    """
    b = convex.normalize_area(body, np.pi)
    a = convex.area(b)
    p = convex.perimeter(b)
    deficit = p - TWO_PI
    c = convex.centroid(b)

    fr = asymmetry.fraenkel(b)
    ha = asymmetry.hausdorff_asymmetry(b)
    me = asymmetry.melas_distance(b)
    d_h = convex.hausdorff_to_disk(b, c, 1.0)

    if spectral_levels:
        est = spectral.lambda1(b, levels=spectral_levels, tol=tol)
        lam, lam_err = est.extrapolated, est.error_estimate
        gap = lam - DISK_LAMBDA1
    else:
        lam = lam_err = gap = float("nan")

    nan = float("nan")
    if deficit > DEFICIT_FLOOR:
        ratios = {
            "r_main": gap / deficit ** 2,
            "r_frank": fr.value / deficit,
            "r_fk": gap / fr.value ** 2 if fr.value > 0.0 else nan,
            "r_haus": d_h * TWO_PI / deficit,
            "r_fmp": deficit / fr.value ** 2 if fr.value > 0.0 else nan,
            "r_conj": gap / deficit ** 1.5,
        }
    else:
        ratios = {k: nan for k in ("r_main", "r_frank", "r_fk", "r_haus",
                                   "r_fmp", "r_conj")}
    ratios["r_brasco"] = lam / p ** 2

    return InequalityReport(
        area=a, perimeter=p, deficit=deficit,
        fraenkel=fr.value, hausdorff_asym=ha.value, melas=me.value,
        d_hausdorff=d_h, lambda1=lam, lambda1_err=lam_err, dlambda1=gap,
        ratios=ratios, converged=fr.converged and ha.converged)


def report_row(id_: str, kind: str, parameter: float, body: ConvexBody2D,
               spectral_levels: int = 4) -> ReportRow:
    return ReportRow(id=id_, kind=kind, parameter=float(parameter),
                     report=report(body, spectral_levels))


# ---------------------------------------------------------------------------
# delimited output
# ---------------------------------------------------------------------------

def row_values(row: ReportRow) -> dict:
    """Flatten a row into the delimited-output column set."""
    r = row.report
    out = {
        "id": row.id, "kind": row.kind, "parameter": row.parameter,
        "area": r.area, "perimeter": r.perimeter, "deficit": r.deficit,
        "fraenkel": r.fraenkel, "hausdorff_asym": r.hausdorff_asym,
        "melas": r.melas, "d_hausdorff": r.d_hausdorff,
        "lambda1": r.lambda1, "lambda1_err": r.lambda1_err,
        "dlambda1": r.dlambda1,
    }
    for key in RATIO_KEYS:
        out[key] = r.ratios[key]
    return out


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    return "%.17g" % value


def write_csv(rows, path_or_file) -> None:
    """Write rows in the fixed column order, 17 significant digits."""
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, "w", encoding="utf-8", newline="") if own else path_or_file
    try:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for row in rows:
            vals = row_values(row)
            fh.write(",".join(_fmt(vals[c]) for c in CSV_COLUMNS) + "\n")
    finally:
        if own:
            fh.close()


def csv_text(rows) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def _jsonable(value):
    if isinstance(value, str):
        return value
    return value if math.isfinite(value) else None


def rows_to_json(rows) -> str:
    """JSON mirror of the delimited schema; NaN becomes null."""
    payload = [{k: _jsonable(v) for k, v in row_values(row).items()}
               for row in rows]
    return json.dumps(payload, indent=2)


# ---------------------------------------------------------------------------
# family sweeps and exponent fits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    family: str
    grid: tuple
    rows: list
    slopes: dict


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    half_width: float


def _child_seed(seed: int, index: int) -> int:
    return seed * 100_003 + index


def sweep(family: str, grid, spectral_levels: int = 0, seed: int = 0,
          resolution: int = 1024) -> SweepResult:
    """Evaluate one family along a parameter grid.

    Spectral levels default to 0 because the classical sharpness sweeps
    only need geometric functionals; pass a level to add eigenvalues.
    """
    grid = tuple(grid)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    rows = []
    for i, value in enumerate(grid):
        if family == "regular":
            body = families.regular_polygon(int(value))
        elif family == "ellipse":
            body = families.ellipse(value, resolution)
        elif family == "stadium":
            body = families.stadium(value, resolution)
        elif family == "random":
            body = families.random_convex(int(value), _child_seed(seed, i))
        else:
            raise ValueError(f"unknown family {family!r}")
        rows.append(report_row(f"{family}-{value:g}", family, value, body,
                               spectral_levels))

    slopes = {}
    for y_field in ("fraenkel", "dlambda1"):
        try:
            slopes[f"{y_field}_vs_deficit"] = fit_exponent(rows, "deficit", y_field)
        except InsufficientData:
            pass
    return SweepResult(family=family, grid=grid, rows=rows, slopes=slopes)


def fit_exponent(sweep_or_rows, x_field: str, y_field: str) -> ExponentFit:
    """Least-squares slope of log y against log x with a 2-sigma half width."""
    rows = getattr(sweep_or_rows, "rows", sweep_or_rows)
    xs, ys = [], []
    for row in rows:
        vals = row_values(row)
        x, y = vals[x_field], vals[y_field]
        if math.isfinite(x) and math.isfinite(y) and x > 0.0 and y > 0.0:
            xs.append(math.log(x))
            ys.append(math.log(y))
    if len(xs) < 5:
        raise InsufficientData(f"need >= 5 positive points, have {len(xs)}")
    x = np.asarray(xs)
    y = np.asarray(ys)
    n = len(x)
    xc = x - x.mean()
    sxx = float(xc @ xc)
    slope = float(xc @ y / sxx)
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (intercept + slope * x)
    sigma2 = float(resid @ resid) / (n - 2)
    return ExponentFit(slope=slope, intercept=intercept,
                       half_width=2.0 * math.sqrt(sigma2 / sxx))


# ---------------------------------------------------------------------------
# the three-halves power law for regular polygons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BetaK:
    k: int
    levels: int
    deficit: float
    gap: float
    ratio: float
    budget: float
    included: bool


@dataclass(frozen=True)
class BetaFitResult:
    beta_hat: float
    reference: float
    rows: list

    @property
    def included_ratios(self):
        return [r.ratio for r in self.rows if r.included]


def _beta_levels(k: int) -> int:
    return 6 if k <= 24 else 7


def beta_fit(k_values, spectral_levels: int = None) -> BetaFitResult:
    """Per-k ratios gap / deficit^(3/2) for regular k-gons, extrapolated in 1/k.

    The spectral gap is measured relative to the disk eigenvalue
    (lambda1 / DISK_LAMBDA1 - 1), which is the normalization under which
    the coefficient approaches BETA_REFERENCE. A k is excluded when the
    extrapolant's level-to-level movement exceeds a tenth of its gap,
    since the ratio would then be dominated by solver error.
    """
    k_values = [int(k) for k in k_values]
    if not k_values:
        raise ValueError("k_values must be nonempty")
    if spectral_levels is not None and spectral_levels < 3:
        raise LevelOutOfRange(
            "beta_fit needs spectral_levels >= 3 to compare two extrapolants")
    rows = []
    for k in k_values:
        if k < 12:
            raise ValueError(f"k = {k} is below the asymptotic regime (need >= 12)")
        levels = spectral_levels if spectral_levels else _beta_levels(k)
        body = families.regular_polygon(k)
        deficit = convex.perimeter(body) - TWO_PI
        est = spectral.lambda1(body, levels=levels)
        lams = [lam for _, lam in est.per_level]
        prev_extrap, _ = spectral._extrapolate(lams[:-1])
        budget = abs(est.extrapolated - prev_extrap)
        gap = est.extrapolated - DISK_LAMBDA1
        ratio = (gap / DISK_LAMBDA1) / deficit ** 1.5
        included = gap > 0.0 and budget < 0.1 * gap
        rows.append(BetaK(k=k, levels=levels, deficit=deficit, gap=gap,
                          ratio=ratio, budget=budget, included=included))

    used = [(r.k, r.ratio) for r in rows if r.included]
    if not used:
        raise AccuracyBudgetExceeded("every k exceeded the solver accuracy budget")
    if len(used) == 1:
        beta_hat = used[0][1]
    else:
        inv_k = np.array([1.0 / k for k, _ in used])
        ratios = np.array([r for _, r in used])
        coef = np.polynomial.polynomial.polyfit(inv_k, ratios, 1)
        beta_hat = float(coef[0])
    return BetaFitResult(beta_hat=beta_hat, reference=BETA_REFERENCE, rows=rows)


# ---------------------------------------------------------------------------
# diagram sampling and empirical minima
# ---------------------------------------------------------------------------

DIAGRAM_HULL_SIZES = (4, 6, 8, 12, 16, 24, 32, 48, 64, 96)
DIAGRAM_REGULAR_KS = (3, 4, 5, 6, 8, 12, 16, 24, 32, 48, 64)
DIAGRAM_STADIUM_RATIOS = (0.1, 0.25, 0.5, 1.0, 2.0)


def _reference_levels(k: int) -> int:
    if k <= 8:
        return 4
    if k <= 16:
        return 5
    return 6


def diagram(count: int, seed: int = 0, spectral_levels: int = 3,
            include_references: bool = True,
            max_reference_level: int = None) -> list:
    """Sampled (perimeter, lambda1) cloud plus tagged reference curves.

    ``count`` random hulls with cycling point budgets, each fully
    reported; regular polygons and stadia are appended as the reference
    families (refined per a size-dependent rule, optionally capped for
    cheap smoke runs). Rows come back sorted by perimeter.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rows = []
    for i in range(count):
        n = DIAGRAM_HULL_SIZES[i % len(DIAGRAM_HULL_SIZES)]
        body = families.random_convex(n, _child_seed(seed, i))
        rows.append(report_row(f"random-{i:04d}", "random", n, body,
                               spectral_levels))
    if include_references:
        cap = max_reference_level or spectral.MAX_LEVEL
        for k in DIAGRAM_REGULAR_KS:
            rows.append(report_row(f"regular-k{k}", "regular", k,
                                   families.regular_polygon(k),
                                   min(_reference_levels(k), cap)))
        for ratio in DIAGRAM_STADIUM_RATIOS:
            rows.append(report_row(f"stadium-r{ratio:g}", "stadium", ratio,
                                   families.stadium(ratio, resolution=256),
                                   min(4, cap)))
    rows.sort(key=lambda row: (row.report.perimeter, row.id))
    return rows


REGIME_EDGES = (0.1, 1.0)


@dataclass(frozen=True)
class RegimeMin:
    lo: float
    hi: float
    count: int
    value: float
    argmin_id: str


@dataclass(frozen=True)
class MinRatioScan:
    field: str
    value: float
    argmin_id: str
    regimes: list


def min_ratio_scan(rows, ratio_field: str, min_deficit: float = DEFICIT_FLOOR) -> MinRatioScan:
    """Empirical minimum of one ratio column, overall and per deficit regime.

    Regime buckets split the deficit axis at 0.1 and 1; they are reporting
    conventions, not constants from any inequality. Rows whose deficit is
    at or below ``min_deficit`` (or whose ratio is NaN) are skipped.
    """
    rows = list(rows)
    if not rows:
        raise ValueError("need at least one row")
    usable = []
    for row in rows:
        ratio = row_values(row)[ratio_field]
        if row.report.deficit > min_deficit and math.isfinite(ratio):
            usable.append((row.report.deficit, ratio, row.id))
    if not usable:
        raise InsufficientData("no rows survive the deficit filter")

    overall = min(usable, key=lambda t: t[1])
    edges = (min_deficit, *REGIME_EDGES, math.inf)
    regimes = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        bucket = [t for t in usable if lo < t[0] <= hi]
        if bucket:
            best = min(bucket, key=lambda t: t[1])
            regimes.append(RegimeMin(lo=lo, hi=hi, count=len(bucket),
                                     value=best[1], argmin_id=best[2]))
        else:
            regimes.append(RegimeMin(lo=lo, hi=hi, count=0,
                                     value=float("nan"), argmin_id=""))
    return MinRatioScan(field=ratio_field, value=overall[1],
                        argmin_id=overall[2], regimes=regimes)


# ---------------------------------------------------------------------------
# gauge comparison integrals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaugeLemmaResult:
    """Closed-form integrals of |1 - u| and (u')^2 with their ratio."""

    lhs: float
    rhs: float
    ratio: float
    per_edge: np.ndarray


def gauge_lemma_ratio(body: ConvexBody2D) -> GaugeLemmaResult:
    """Ratio of the two gauge integrals about the centroid, in closed form.

    Near-ball hypothesis: the area-pi rescaling of the body must lie
    within Hausdorff distance 0.5 of the centroid-centered unit ball,
    else TooFarFromBall. The integrals themselves are evaluated on the
    body exactly as given. Per edge sector, with psi = theta - phi:
    the derivative integral is [psi/2 - sin(2 psi)/4] / d^2 and the
    |1 - u| integral has antiderivative psi - sin(psi)/d with sign
    changes at psi = +-arccos(d) when d < 1.
    """
    normalized = convex.normalize_area(body, np.pi)
    gap = convex.hausdorff_to_disk(normalized, convex.centroid(normalized), 1.0)
    if gap >= 0.5:
        raise TooFarFromBall(f"normalized body is {gap:.4f} from the unit ball")

    prof = convex.gauge_profile(body)
    per_edge = np.empty((len(prof.phi), 2))
    for j, (phi, d, th0, th1) in enumerate(prof.pieces):
        lo, hi = th0 - phi, th1 - phi

        cuts = [lo, hi]
        if d < 1.0:
            psi_c = math.acos(d)
            for s in (-psi_c, psi_c):
                if lo < s < hi:
                    cuts.append(s)
        cuts.sort()
        lhs_j = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            lhs_j += abs((b - math.sin(b) / d) - (a - math.sin(a) / d))

        rhs_j = ((hi / 2.0 - math.sin(2.0 * hi) / 4.0)
                 - (lo / 2.0 - math.sin(2.0 * lo) / 4.0)) / (d * d)
        per_edge[j] = (lhs_j, rhs_j)

    lhs = float(per_edge[:, 0].sum())
    rhs = float(per_edge[:, 1].sum())
    return GaugeLemmaResult(lhs=lhs, rhs=rhs, ratio=lhs / rhs, per_edge=per_edge)


def gauge_quadrature_gap(body: ConvexBody2D, n_points: int = 1_000_000) -> float:
    """Worst gap between the closed-form gauge integrals and quadrature.

    Composite midpoint rule with the point budget spread over the smooth
    pieces (edge sectors, split where 1 - u changes sign), so the only
    error is the O(n^-2) smooth-piece term. Used to certify the
    antiderivatives in :func:`gauge_lemma_ratio`.
    """
    result = gauge_lemma_ratio(body)
    prof = convex.gauge_profile(body)

    breaks = [prof.theta0[0]]
    for phi, d, th0, th1 in prof.pieces:
        if d < 1.0:
            psi_c = math.acos(d)
            for s in (phi - psi_c, phi + psi_c):
                if th0 < s < th1:
                    breaks.append(s)
        breaks.append(th1)
    breaks = np.asarray(sorted(breaks))

    widths = np.diff(breaks)
    counts = np.maximum(1, np.rint(n_points * widths / widths.sum()).astype(int))
    thetas = np.concatenate([
        a + (np.arange(m) + 0.5) * (w / m)
        for a, w, m in zip(breaks[:-1], widths, counts)
    ])
    weights = np.repeat(widths / counts, counts)
    u = prof.u(thetas)
    du = prof.du(thetas)
    lhs_q = float(np.abs(1.0 - u) @ weights)
    rhs_q = float((du * du) @ weights)
    return max(abs(lhs_q - result.lhs), abs(rhs_q - result.rhs))
