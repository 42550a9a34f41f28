"""Command-line interface.

stdout (or --out) carries machine-readable CSV or JSON only; stderr
carries the human summaries. When --out names a file, report-style
commands also render a PNG figure next to it; verify-all writes a
directory of artifacts. Identical argv and seed give byte-identical
delimited output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import __version__, asymmetry, convex, families, spectral, verify
from .errors import AccuracyBudgetExceeded, IsolabError, NoConvergence, UsageError
from .spectral import DISK_LAMBDA1

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NONCONVERGED = 2
EXIT_USAGE = 64

QUADRATURE_POINTS_FULL = 1_000_000
QUADRATURE_POINTS_QUICK = 200_000


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.17g" % value


def _finite_or_none(value):
    if isinstance(value, (str, bool, int)):
        return value
    return value if math.isfinite(value) else None


class _Output:
    """Collects machine output and flushes it to stdout or a file."""

    def __init__(self, out: str):
        self.path = None if out in (None, "-") else out
        self.chunks = []

    def write(self, text: str):
        self.chunks.append(text)

    def csv_rows(self, header, rows):
        self.write(",".join(header) + "\n")
        for row in rows:
            self.write(",".join(_fmt(v) for v in row) + "\n")

    def json_payload(self, payload):
        self.write(json.dumps(payload, indent=2) + "\n")

    def flush(self):
        data = "".join(self.chunks)
        if self.path is None:
            sys.stdout.write(data)
        else:
            parent = os.path.dirname(self.path)
            if parent:
                os.makedirs(parent, exist_ok=True)
            with open(self.path, "w", encoding="utf-8", newline="") as fh:
                fh.write(data)

    def sibling(self, suffix: str):
        if self.path is None:
            return None
        stem, _ = os.path.splitext(self.path)
        return stem + suffix


def _say(message: str):
    sys.stderr.write(message + "\n")


# ---------------------------------------------------------------------------
# shape and grid parsing
# ---------------------------------------------------------------------------

def _parse_shape(text: str, seed: int, resolution: int):
    """Shape literal (kind:value) or path to a polygon/family JSON file."""
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
        if isinstance(obj, dict) and "vertices" in obj:
            return convex.make_polygon(obj["vertices"]), f"file:{os.path.basename(text)}"
        if isinstance(obj, dict) and "kind" in obj:
            spec = families.spec_from_json(json.dumps(obj))
            return families.build(spec), f"{spec.kind}:{spec.parameter:g}"
        raise UsageError(f"{text}: JSON must hold 'vertices' or a family spec")
    kind, sep, value = text.partition(":")
    if not sep:
        raise UsageError(f"shape {text!r} is neither kind:value nor an existing file")
    try:
        if kind == "regular":
            return families.regular_polygon(int(value)), text
        if kind == "ellipse":
            return families.ellipse(float(value), resolution), text
        if kind == "stadium":
            return families.stadium(float(value), resolution), text
        if kind == "random":
            return families.random_convex(int(value), seed), text
    except ValueError as exc:
        raise UsageError(f"bad shape parameter in {text!r}: {exc}") from exc
    raise UsageError(f"unknown shape kind {kind!r}")


def _parse_grid(text: str):
    try:
        if ":" in text:
            lo, hi, step = (float(part) for part in text.split(":"))
            if step <= 0.0:
                raise ValueError("step must be positive")
            values = []
            x = lo
            while x <= hi + 1e-9:
                values.append(round(x, 12))
                x += step
            return values
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_eig(args) -> int:
    body, _label = _parse_shape(args.shape, args.seed, args.resolution)
    est = spectral.lambda1(body, levels=args.levels)
    out = _Output(args.out)
    if args.format == "json":
        out.json_payload({
            "per_level": [{"h": h, "lambda1": lam} for h, lam in est.per_level],
            "extrapolated": est.extrapolated,
            "error_estimate": est.error_estimate,
            "order_observed": est.order_observed,
        })
    else:
        header = ("level", "h", "lambda1", "extrapolated", "error_estimate",
                  "order_observed")
        rows = [(lvl, h, lam, est.extrapolated, est.error_estimate,
                 est.order_observed)
                for lvl, (h, lam) in enumerate(est.per_level)]
        out.csv_rows(header, rows)
    out.flush()
    _say(f"lambda1 = {est.extrapolated:.9g} (error estimate "
         f"{est.error_estimate:.2e}, observed order {est.order_observed:.2f})")
    return EXIT_OK


def _cmd_asym(args) -> int:
    body, _label = _parse_shape(args.shape, args.seed, args.resolution)
    body = convex.normalize_area(body, np.pi)
    fr = asymmetry.fraenkel(body)
    ha = asymmetry.hausdorff_asymmetry(body)
    me = asymmetry.melas_distance(body)
    deficit = convex.perimeter(body) - 2.0 * np.pi

    out = _Output(args.out)
    if args.format == "json":
        out.json_payload({
            "fraenkel": {"value": fr.value, "center": list(fr.center),
                         "iterations": fr.iterations, "converged": fr.converged},
            "hausdorff_asym": {"value": ha.value, "center": list(ha.center),
                               "iterations": ha.iterations,
                               "converged": ha.converged},
            "melas": {"value": me.value,
                      "inner_ball": {"center": list(me.inner_ball.center),
                                     "radius": me.inner_ball.radius},
                      "outer_ball": {"center": list(me.outer_ball.center),
                                     "radius": me.outer_ball.radius},
                      "note": "upper bound; balls not jointly optimized"},
            "deficit": deficit,
        })
    else:
        header = ("measure", "value", "center_x", "center_y", "radius",
                  "iterations", "converged")
        rows = [
            ("fraenkel", fr.value, fr.center[0], fr.center[1], 1.0,
             fr.iterations, fr.converged),
            ("hausdorff_asym", ha.value, ha.center[0], ha.center[1], 1.0,
             ha.iterations, ha.converged),
            ("melas", me.value, "", "", "", "", True),
            ("melas_inner", me.inner_ball.radius, me.inner_ball.center[0],
             me.inner_ball.center[1], me.inner_ball.radius, "", True),
            ("melas_outer", me.outer_ball.radius, me.outer_ball.center[0],
             me.outer_ball.center[1], me.outer_ball.radius, "", True),
            ("deficit", deficit, "", "", "", "", True),
        ]
        out.csv_rows(header, rows)
    out.flush()
    _say(f"fraenkel {fr.value:.6g}  hausdorff {ha.value:.6g}  "
         f"melas<= {me.value:.6g}  deficit {deficit:.6g}")
    if not (fr.converged and ha.converged):
        _say("warning: an optimizer did not meet its tolerance; flags set")
        return EXIT_NONCONVERGED
    return EXIT_OK


def _cmd_report(args) -> int:
    body, label = _parse_shape(args.shape, args.seed, args.resolution)
    kind = label.split(":", 1)[0]
    try:
        parameter = float(label.split(":", 1)[1])
    except (IndexError, ValueError):
        parameter = float("nan")
    row = verify.ReportRow(id=label.replace(":", "-"), kind=kind,
                           parameter=parameter,
                           report=verify.report(body, args.levels))
    out = _Output(args.out)
    if args.format == "json":
        out.write(verify.rows_to_json([row]) + "\n")
    else:
        out.write(verify.csv_text([row]))
    out.flush()

    fig = out.sibling(".png")
    if fig is not None:
        from . import plots

        normalized = convex.normalize_area(body, np.pi)
        plots.plot_body(normalized, fig,
                        melas=asymmetry.melas_distance(normalized),
                        centroid=convex.centroid(normalized))
        _say(f"figure: {fig}")
    r = row.report
    _say(f"deficit {r.deficit:.6g}  fraenkel {r.fraenkel:.6g}  "
         f"lambda1 {r.lambda1:.9g}  gap {r.dlambda1:.6g}")
    return EXIT_OK if r.converged else EXIT_NONCONVERGED


def _cmd_sweep(args) -> int:
    grid = _parse_grid(args.grid)
    result = verify.sweep(args.family, grid, spectral_levels=args.levels,
                          seed=args.seed, resolution=args.resolution)
    out = _Output(args.out)
    if args.format == "json":
        out.write(verify.rows_to_json(result.rows) + "\n")
    else:
        out.write(verify.csv_text(result.rows))
    out.flush()
    for name, fit in sorted(result.slopes.items()):
        _say(f"{args.family}: {name} slope {fit.slope:.4f} "
             f"+- {fit.half_width:.4f}")
    fig = out.sibling(".png")
    if fig is not None:
        from . import plots

        plots.plot_sweep(result, fig)
        _say(f"figure: {fig}")
    return EXIT_OK


def _cmd_beta(args) -> int:
    k_values = [int(v) for v in _parse_grid(args.grid)]
    result = verify.beta_fit(k_values, spectral_levels=args.levels or None)
    out = _Output(args.out)
    if args.format == "json":
        out.json_payload({
            "beta_hat": result.beta_hat,
            "reference": result.reference,
            "rows": [{"k": r.k, "levels": r.levels, "deficit": r.deficit,
                      "gap": r.gap, "ratio": r.ratio, "budget": r.budget,
                      "included": r.included} for r in result.rows],
        })
    else:
        header = ("k", "levels", "deficit", "gap", "ratio", "budget",
                  "included", "beta_hat", "reference")
        rows = [(r.k, r.levels, r.deficit, r.gap, r.ratio, r.budget,
                 r.included, result.beta_hat, result.reference)
                for r in result.rows]
        out.csv_rows(header, rows)
    out.flush()
    excluded = [r.k for r in result.rows if not r.included]
    _say(f"beta_hat {result.beta_hat:.6f} vs reference "
         f"{result.reference:.6f} ({abs(result.beta_hat - result.reference) / result.reference:.1%} off)"
         + (f"; excluded k: {excluded}" if excluded else ""))
    fig = out.sibling(".png")
    if fig is not None:
        from . import plots

        plots.plot_beta(result, fig)
        _say(f"figure: {fig}")
    return EXIT_OK


def _cmd_diagram(args) -> int:
    rows = verify.diagram(args.count, seed=args.seed,
                          spectral_levels=args.levels,
                          max_reference_level=args.max_ref_level or None)
    out = _Output(args.out)
    if args.format == "json":
        out.write(verify.rows_to_json(rows) + "\n")
    else:
        out.write(verify.csv_text(rows))
    out.flush()
    scan = verify.min_ratio_scan(rows, "r_main", min_deficit=1e-4)
    _say(f"{len(rows)} rows; min gap/deficit^2 = {scan.value:.6g} "
         f"at {scan.argmin_id}")
    fig = out.sibling(".png")
    if fig is not None:
        from . import plots

        plots.plot_diagram(rows, fig)
        _say(f"figure: {fig}")
    return EXIT_OK


def _cmd_gauge(args) -> int:
    body, _label = _parse_shape(args.shape, args.seed, args.resolution)
    result = verify.gauge_lemma_ratio(body)
    out = _Output(args.out)
    if args.format == "json":
        out.json_payload({
            "lhs": result.lhs, "rhs": result.rhs, "ratio": result.ratio,
            "per_edge": [{"lhs": float(l), "rhs": float(r)}
                         for l, r in result.per_edge],
        })
    else:
        header = ("edge", "lhs", "rhs")
        rows = [(str(j), float(l), float(r))
                for j, (l, r) in enumerate(result.per_edge)]
        rows.append(("total", result.lhs, result.rhs))
        out.csv_rows(header, rows)
    out.flush()
    _say(f"lhs {result.lhs:.9g}  rhs {result.rhs:.9g}  ratio {result.ratio:.6f}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# the verify-all battery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Scale:
    disk_k: int
    disk_levels: int
    square_levels: int
    scan_count: int
    regular_grid: tuple
    ellipse_grid: tuple
    steiner_count: int
    quad_bodies: int
    quad_points: int
    quad_tol: float
    nearball_count: int
    gauge_ks: tuple
    beta_ks: tuple
    beta_levels: int
    diagram_count: int
    diagram_levels: int
    diagram_refs: bool


FULL_SCALE = _Scale(
    disk_k=512, disk_levels=4, square_levels=4, scan_count=1000,
    regular_grid=(8, 16, 24, 32, 40, 48, 56, 64),
    ellipse_grid=(0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4),
    steiner_count=100, quad_bodies=20, quad_points=QUADRATURE_POINTS_FULL,
    quad_tol=1e-8, nearball_count=100,
    gauge_ks=(16, 32, 64, 128, 256, 512),
    beta_ks=(16, 24, 32, 48), beta_levels=0,
    diagram_count=1200, diagram_levels=3, diagram_refs=True,
)

# The quick scale exists for smoke runs and the byte-determinism check.
# Near-disk reference polygons are omitted from its diagram: their spectral
# gaps are too small to resolve at the cheap refinement depths used here.
QUICK_SCALE = _Scale(
    disk_k=128, disk_levels=3, square_levels=4, scan_count=50,
    regular_grid=(8, 16, 24, 32, 48),
    ellipse_grid=(0.05, 0.1, 0.2, 0.3, 0.4),
    steiner_count=20, quad_bodies=5, quad_points=QUADRATURE_POINTS_QUICK,
    quad_tol=1e-6, nearball_count=20,
    gauge_ks=(16, 32, 64, 128),
    beta_ks=(12, 16), beta_levels=5,
    diagram_count=40, diagram_levels=2, diagram_refs=False,
)


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _scan_bodies(count: int, seed: int, offset: int):
    sizes = verify.DIAGRAM_HULL_SIZES
    for i in range(count):
        n = sizes[i % len(sizes)]
        yield i, n, families.random_convex(n, verify._child_seed(seed, offset + i))


def _battery(scale: _Scale, seed: int, outdir: str, verbose: bool) -> dict:
    os.makedirs(outdir, exist_ok=True)
    from . import plots

    checks = {}

    def record(name, ok, **details):
        checks[name] = {"pass": bool(ok), **details}
        _say(f"[{'pass' if ok else 'FAIL'}] {name}"
             + (f" {details}" if verbose else ""))

    # 1. disk eigenvalue against the Bessel constant
    est = spectral.lambda1(families.regular_polygon(scale.disk_k),
                           levels=scale.disk_levels)
    rel = abs(est.extrapolated - DISK_LAMBDA1) / DISK_LAMBDA1
    _write_csv(os.path.join(outdir, "disk_eigenvalue.csv"),
               ("level", "h", "lambda1", "extrapolated", "relative_error"),
               [(lvl, h, lam, est.extrapolated, rel)
                for lvl, (h, lam) in enumerate(est.per_level)])
    record("disk_eigenvalue", rel <= 3e-3, relative_error=rel,
           extrapolated=est.extrapolated)

    # 2. square closed forms
    square = families.regular_polygon(4)
    sq_lam = spectral.lambda1(square, levels=scale.square_levels).extrapolated
    sq_af = asymmetry.fraenkel(square).value
    sq_ah = asymmetry.hausdorff_asymmetry(square).value
    sq_dp = asymmetry.isoperimetric_deficit(square)
    theta = 2.0 * math.acos(math.sqrt(math.pi) / 2.0)
    af_oracle = 2.0 * (1.0 - (math.pi - 2.0 * (theta - math.sin(theta))) / math.pi)
    rows = [
        ("lambda1", sq_lam, 2.0 * math.pi, 0.002 * 2.0 * math.pi),
        ("gap", sq_lam - DISK_LAMBDA1, 2.0 * math.pi - DISK_LAMBDA1, 0.01),
        ("fraenkel", sq_af, af_oracle, 1e-3),
        ("hausdorff_asym", sq_ah, math.sqrt(math.pi / 2.0) - 1.0, 1e-6),
        ("deficit", sq_dp, 4.0 * math.sqrt(math.pi) - 2.0 * math.pi, 1e-9),
    ]
    ok = all(abs(got - want) <= tol for _, got, want, tol in rows)
    _write_csv(os.path.join(outdir, "square_checks.csv"),
               ("check", "measured", "expected", "tolerance", "pass"),
               [(n, g, w, t, abs(g - w) <= t) for n, g, w, t in rows])
    record("square_closed_forms", ok,
           worst=max(abs(g - w) / t for _, g, w, t in rows))

    # 3. Hausdorff bound scan: asym * 2 pi >= deficit
    scan_rows = []
    worst = math.inf
    for i, n, body in _scan_bodies(scale.scan_count, seed, offset=10_000):
        deficit = asymmetry.isoperimetric_deficit(body)
        asym = asymmetry.hausdorff_asymmetry(
            convex.normalize_area(body, np.pi)).value
        margin = asym * 2.0 * math.pi - deficit
        worst = min(worst, margin)
        scan_rows.append((f"scan-{i:04d}", n, deficit, asym, margin))
    _write_csv(os.path.join(outdir, "hausdorff_bound.csv"),
               ("id", "n_points", "deficit", "hausdorff_asym", "margin"),
               scan_rows)
    record("hausdorff_bound", worst >= -1e-6, worst_margin=worst,
           bodies=scale.scan_count)

    # 4. sharpness exponents
    reg = verify.sweep("regular", scale.regular_grid)
    ell = verify.sweep("ellipse", scale.ellipse_grid)
    verify.write_csv(reg.rows, os.path.join(outdir, "sweep_regular.csv"))
    verify.write_csv(ell.rows, os.path.join(outdir, "sweep_ellipse.csv"))
    plots.plot_sweep(reg, os.path.join(outdir, "sweep_regular.png"))
    plots.plot_sweep(ell, os.path.join(outdir, "sweep_ellipse.png"))
    s_reg = reg.slopes["fraenkel_vs_deficit"].slope
    s_ell = ell.slopes["fraenkel_vs_deficit"].slope
    record("sharpness_exponents",
           abs(s_reg - 1.0) <= 0.05 and abs(s_ell - 0.5) <= 0.05,
           regular_slope=s_reg, ellipse_slope=s_ell)

    # 5. Steiner polynomial vs explicit offset body
    st_rows = []
    worst = 0.0
    for i, n, body in _scan_bodies(scale.steiner_count, seed, offset=20_000):
        for rho in (0.1, 1.0, 3.0):
            poly = convex.steiner_area(body, rho)
            geo = convex.steiner_area_offset(body, rho)
            worst = max(worst, abs(poly - geo))
            st_rows.append((f"steiner-{i:04d}", n, rho, poly, geo,
                            abs(poly - geo)))
    _write_csv(os.path.join(outdir, "steiner.csv"),
               ("id", "n_points", "rho", "polynomial", "offset", "difference"),
               st_rows)
    record("steiner_agreement", worst <= 1e-9, worst_difference=worst)

    # 6. gauge integrals: quadrature match, near-ball floor, tangent limit
    quad_rows = []
    worst = 0.0
    quad_specs = [families.near_ball(seed=seed + j) for j in range(scale.quad_bodies - 2)]
    quad_specs += [families.regular_polygon(6), families.regular_polygon(24)]
    for j, body in enumerate(quad_specs):
        gap = verify.gauge_quadrature_gap(body, scale.quad_points)
        worst = max(worst, gap)
        quad_rows.append((f"quad-{j:02d}", gap))
    _write_csv(os.path.join(outdir, "gauge_quadrature.csv"),
               ("id", "max_abs_gap"), quad_rows)
    quad_ok = worst <= scale.quad_tol
    quad_worst = worst

    nb_rows = []
    worst = math.inf
    for j in range(scale.nearball_count):
        body = families.near_ball(seed=1000 * seed + j)
        ratio = verify.gauge_lemma_ratio(body).ratio
        worst = min(worst, ratio)
        nb_rows.append((f"nearball-{j:03d}", ratio))
    _write_csv(os.path.join(outdir, "gauge_nearball.csv"),
               ("id", "ratio"), nb_rows)
    nb_ok = worst >= 0.05
    nb_worst = worst

    ratios = []
    for k in scale.gauge_ks:
        tangent = families.regular_polygon(k, target_area=k * math.tan(math.pi / k))
        ratios.append(verify.gauge_lemma_ratio(tangent).ratio)
    _write_csv(os.path.join(outdir, "gauge_regular.csv"),
               ("k", "ratio"), list(zip(scale.gauge_ks, ratios)))
    plots.plot_gauge_ratios(scale.gauge_ks, ratios,
                            os.path.join(outdir, "gauge.png"))
    limit_ok = abs(ratios[-1] - 0.5) <= 0.02
    record("gauge_integrals", quad_ok and nb_ok and limit_ok,
           quadrature_worst=quad_worst, nearball_min=nb_worst,
           tangent_ratio_at_max_k=ratios[-1])

    # 7. three-halves power law for regular polygons
    beta = verify.beta_fit(scale.beta_ks,
                           spectral_levels=scale.beta_levels or None)
    _write_csv(os.path.join(outdir, "beta.csv"),
               ("k", "levels", "deficit", "gap", "ratio", "budget", "included"),
               [(r.k, r.levels, r.deficit, r.gap, r.ratio, r.budget, r.included)
                for r in beta.rows])
    plots.plot_beta(beta, os.path.join(outdir, "beta.png"))
    inc = beta.included_ratios
    monotone = all(a < b for a, b in zip(inc, inc[1:]))
    beta_ok = (monotone and inc
               and abs(beta.beta_hat - beta.reference) <= 0.2 * beta.reference)
    record("beta_power_law", beta_ok, beta_hat=beta.beta_hat,
           reference=beta.reference,
           excluded=[r.k for r in beta.rows if not r.included])

    # 8. diagram sampling, positivity, and the corner dominance
    rows = verify.diagram(scale.diagram_count, seed=seed,
                          spectral_levels=scale.diagram_levels,
                          include_references=scale.diagram_refs)
    verify.write_csv(rows, os.path.join(outdir, "diagram.csv"))
    plots.plot_diagram(rows, os.path.join(outdir, "diagram.png"))
    scan = verify.min_ratio_scan(rows, "r_main", min_deficit=1e-4)
    fk_violations = sum(
        1 for r in rows
        if r.report.lambda1 < 5.7832 - max(r.report.lambda1_err, 1e-9))
    iso_violations = sum(1 for r in rows if r.report.deficit < -1e-10)
    _write_csv(os.path.join(outdir, "minima.csv"),
               ("field", "deficit_lo", "deficit_hi", "count", "min", "argmin"),
               [(scan.field, reg.lo, reg.hi, reg.count, reg.value,
                 reg.argmin_id) for reg in scan.regimes])
    record("diagram_positivity",
           scan.value > 0.0 and fk_violations == 0 and iso_violations == 0,
           min_main_ratio=scan.value, argmin=scan.argmin_id,
           faber_krahn_violations=fk_violations,
           isoperimetric_violations=iso_violations, rows=len(rows))

    return checks


def _cmd_verify_all(args) -> int:
    scale = QUICK_SCALE if args.scale == "quick" else FULL_SCALE
    t0 = time.time()
    checks = _battery(scale, args.seed, args.out, args.verbose)
    elapsed = time.time() - t0
    all_pass = all(c["pass"] for c in checks.values())
    summary = {
        "scale": args.scale,
        "seed": args.seed,
        "elapsed_seconds": round(elapsed, 3),
        "all_pass": all_pass,
        "checks": {k: {kk: _finite_or_none(vv) if not isinstance(vv, list) else vv
                       for kk, vv in v.items()}
                   for k, v in checks.items()},
    }
    with open(os.path.join(args.out, "summary.json"), "w",
              encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    _say(f"verify-all ({args.scale}): "
         f"{sum(c['pass'] for c in checks.values())}/{len(checks)} checks "
         f"passed in {elapsed:.1f}s -> {args.out}")
    return EXIT_OK if all_pass else EXIT_VALIDATION


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def _add_common(sub, shape=False, family=False, levels_default=4):
    if shape:
        sub.add_argument("--shape", required=True,
                         help="kind:value literal (regular:k, ellipse:eps, "
                              "stadium:ratio, random:n) or JSON file path")
    if family:
        sub.add_argument("--family", required=True,
                         choices=("regular", "ellipse", "stadium", "random"))
        sub.add_argument("--grid", required=True,
                         help="lo:hi:step or comma-separated values")
    sub.add_argument("--levels", type=int, default=levels_default,
                     help=f"refinement depth (default {levels_default})")
    sub.add_argument("--seed", type=int, default=0,
                     help="random seed (default 0)")
    sub.add_argument("--out", default="-",
                     help="output file, or - for stdout (default -)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv",
                     help="machine output format (default csv)")
    sub.add_argument("--resolution", type=int, default=1024,
                     help="vertex count for curved shapes (default 1024)")
    sub.add_argument("--verbose", action="store_true",
                     help="more detail on stderr")


def build_parser() -> _Parser:
    parser = _Parser(prog="isolab",
                     description="Spectral and isoperimetric functionals of "
                                 "planar convex bodies")
    parser.add_argument("--version", action="version",
                        version=f"isolab {__version__}")
    cmds = parser.add_subparsers(dest="command", required=True)

    sub = cmds.add_parser("eig", help="first Dirichlet eigenvalue")
    _add_common(sub, shape=True)
    sub.set_defaults(func=_cmd_eig)

    sub = cmds.add_parser("asym", help="asymmetry functionals")
    _add_common(sub, shape=True)
    sub.set_defaults(func=_cmd_asym)

    sub = cmds.add_parser("report", help="full inequality report for one body")
    _add_common(sub, shape=True)
    sub.set_defaults(func=_cmd_report)

    sub = cmds.add_parser("sweep", help="family sweep with exponent fits")
    _add_common(sub, family=True, levels_default=0)
    sub.set_defaults(func=_cmd_sweep)

    sub = cmds.add_parser("beta", help="three-halves power-law coefficient")
    _add_common(sub, levels_default=0)
    sub.add_argument("--grid", default="16,24,32,48",
                     help="edge counts (default 16,24,32,48); "
                          "--levels 0 picks per-k depths")
    sub.set_defaults(func=_cmd_beta)

    sub = cmds.add_parser("diagram", help="perimeter/eigenvalue diagram sample")
    _add_common(sub, levels_default=3)
    sub.add_argument("--count", type=int, default=200,
                     help="random bodies to sample (default 200)")
    sub.add_argument("--max-ref-level", type=int, default=0,
                     help="cap reference-curve refinement (0 = family rule)")
    sub.set_defaults(func=_cmd_diagram)

    sub = cmds.add_parser("gauge", help="gauge comparison integrals")
    _add_common(sub, shape=True)
    sub.set_defaults(func=_cmd_gauge)

    sub = cmds.add_parser("verify-all", help="run the whole verification battery")
    sub.add_argument("--seed", type=int, default=42)
    sub.add_argument("--out", default="verify_out",
                     help="artifact directory (default verify_out)")
    sub.add_argument("--scale", choices=("quick", "full"), default="full",
                     help="battery size (default full)")
    sub.add_argument("--verbose", action="store_true")
    sub.set_defaults(func=_cmd_verify_all)
    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (NoConvergence, AccuracyBudgetExceeded) as exc:
        sys.stderr.write(f"did not converge: {exc}\n")
        return EXIT_NONCONVERGED
    except IsolabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
