"""Acceptance battery: every headline guarantee, one printed pass/fail line each.

Each test prints "[PASS] name: detail" (or FAIL) before asserting, so the
whole scorecard is visible in one place when the suite runs with -rP.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from isolab import asymmetry, convex, families, spectral, verify
from isolab.spectral import DISK_LAMBDA1

TWO_PI = 2.0 * math.pi
SEED = 42


def scorecard(name, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


def scan_bodies(count, seed, offset):
    sizes = verify.DIAGRAM_HULL_SIZES
    for i in range(count):
        n = sizes[i % len(sizes)]
        yield families.random_convex(n, verify._child_seed(seed, offset + i))


def test_disk_eigenvalue_reference_constant():
    """512-gon, four refinement levels: within 0.3% of the disk value."""
    t0 = time.perf_counter()
    est = spectral.lambda1(families.regular_polygon(512), levels=4)
    elapsed = time.perf_counter() - t0
    rel = abs(est.extrapolated - DISK_LAMBDA1) / DISK_LAMBDA1
    ok = rel <= 3e-3 and elapsed < 60.0
    scorecard("disk eigenvalue", ok,
              f"relative error {rel:.2e}, {elapsed:.1f}s")
    assert rel <= 3e-3, f"relative error {rel:.3e} above 3e-3"
    assert elapsed < 60.0, f"took {elapsed:.1f}s, budget is 60s"


def test_square_closed_forms():
    """Five square oracles, each from an independent closed form."""
    square = families.regular_polygon(4)
    lam = spectral.lambda1(square, levels=4).extrapolated
    theta = 2.0 * math.acos(math.sqrt(math.pi) / 2.0)
    af_oracle = 2.0 * (1.0 - (math.pi - 2.0 * (theta - math.sin(theta)))
                       / math.pi)
    checks = [
        ("lambda1", lam, TWO_PI, 0.002 * TWO_PI),
        ("gap", lam - DISK_LAMBDA1, TWO_PI - DISK_LAMBDA1, 0.01),
        ("fraenkel", asymmetry.fraenkel(square).value, af_oracle, 1e-3),
        ("hausdorff_asym", asymmetry.hausdorff_asymmetry(square).value,
         math.sqrt(math.pi / 2.0) - 1.0, 1e-6),
        ("deficit", asymmetry.isoperimetric_deficit(square),
         4.0 * math.sqrt(math.pi) - TWO_PI, 1e-9),
    ]
    worst = max(abs(got - want) / tol for _, got, want, tol in checks)
    ok = worst <= 1.0
    scorecard("square closed forms", ok,
              f"worst deviation {worst:.3f} of tolerance")
    for name, got, want, tol in checks:
        assert abs(got - want) <= tol, (
            f"{name}: got {got!r}, want {want!r} within {tol}")


def test_hausdorff_distance_bounded_by_deficit():
    """One thousand random hulls: 2 pi * asymmetry covers the deficit."""
    t0 = time.perf_counter()
    worst = math.inf
    for body in scan_bodies(1000, SEED, offset=10_000):
        deficit = asymmetry.isoperimetric_deficit(body)
        asym = asymmetry.hausdorff_asymmetry(
            convex.normalize_area(body, math.pi)).value
        worst = min(worst, asym * TWO_PI - deficit)
    elapsed = time.perf_counter() - t0
    ok = worst >= -1e-6 and elapsed < 120.0
    scorecard("hausdorff bound scan", ok,
              f"worst margin {worst:+.4f} over 1000 bodies, {elapsed:.1f}s")
    assert worst >= -1e-6, f"bound violated by {worst:.3e}"
    assert elapsed < 120.0, f"took {elapsed:.1f}s, budget is 120s"


def test_sharpness_exponents():
    """Fraenkel vs deficit: slope 1 for regular polygons, 1/2 for ellipses."""
    reg = verify.sweep("regular", tuple(range(8, 65, 8)))
    ell = verify.sweep("ellipse", tuple(np.arange(0.05, 0.41, 0.05)))
    s_reg = reg.slopes["fraenkel_vs_deficit"].slope
    s_ell = ell.slopes["fraenkel_vs_deficit"].slope
    ok = abs(s_reg - 1.0) <= 0.05 and abs(s_ell - 0.5) <= 0.05
    scorecard("sharpness exponents", ok,
              f"regular {s_reg:.4f} (want 1), ellipse {s_ell:.4f} (want 1/2)")
    assert abs(s_reg - 1.0) <= 0.05
    assert abs(s_ell - 0.5) <= 0.05


def test_steiner_polynomial_matches_offset_bodies():
    """Quermassintegral polynomial equals the constructed parallel body."""
    worst = 0.0
    for body in scan_bodies(100, SEED, offset=20_000):
        for rho in (0.1, 1.0, 3.0):
            diff = abs(convex.steiner_area(body, rho)
                       - convex.steiner_area_offset(body, rho))
            worst = max(worst, diff)
    ok = worst <= 1e-9
    scorecard("steiner offset agreement", ok,
              f"worst |polynomial - offset| = {worst:.2e}")
    assert worst <= 1e-9


def test_gauge_comparison_integrals():
    """Closed-form gauge integrals: certified, bounded below, sharp limit."""
    bodies = [families.near_ball(seed=SEED + j) for j in range(18)]
    bodies += [families.regular_polygon(6), families.regular_polygon(24)]
    quad_worst = max(verify.gauge_quadrature_gap(b, 1_000_000)
                     for b in bodies)

    nb_min = min(verify.gauge_lemma_ratio(
        families.near_ball(seed=1000 * SEED + j)).ratio for j in range(100))

    tangent = [verify.gauge_lemma_ratio(families.regular_polygon(
        k, target_area=k * math.tan(math.pi / k))).ratio
        for k in (16, 32, 64, 128, 256, 512)]
    limit_gap = abs(tangent[-1] - 0.5)

    ok = quad_worst <= 1e-8 and nb_min >= 0.05 and limit_gap <= 0.02
    scorecard("gauge integrals", ok,
              f"quadrature gap {quad_worst:.2e}, near-ball min {nb_min:.3f}, "
              f"tangent limit off by {limit_gap:.2e}")
    assert quad_worst <= 1e-8, "closed forms disagree with quadrature"
    assert nb_min >= 0.05, f"near-ball ratio dipped to {nb_min}"
    assert limit_gap <= 0.02, f"tangent-polygon ratio {tangent[-1]}"


def test_power_law_coefficient_for_regular_polygons():
    """Per-k gap/deficit^1.5 climbs monotonically to the reference constant."""
    result = verify.beta_fit((16, 24, 32, 48))
    included = result.included_ratios
    monotone = all(a < b for a, b in zip(included, included[1:]))
    gap = abs(result.beta_hat - result.reference)
    excluded = [r.k for r in result.rows if not r.included]
    ok = (bool(included) and monotone
          and gap <= 0.2 * result.reference)
    scorecard("power-law coefficient", ok,
              f"beta_hat {result.beta_hat:.6f} vs {result.reference:.6f} "
              f"({gap / result.reference:.1%} off), excluded k: {excluded}")
    assert included, "every k was excluded by the accuracy budget"
    assert monotone, f"ratios not monotone: {included}"
    assert gap <= 0.2 * result.reference


@pytest.fixture(scope="module")
def diagram_rows():
    return verify.diagram(1200, seed=SEED, spectral_levels=3)


def test_gap_positive_whenever_deficit_is(diagram_rows):
    """Across 1200 samples plus references, the gap/deficit^2 ratio stays
    positive and neither classical inequality is ever violated."""
    scan = verify.min_ratio_scan(diagram_rows, "r_main", min_deficit=1e-4)
    fk = sum(1 for r in diagram_rows
             if r.report.lambda1 < 5.7832 - max(r.report.lambda1_err, 1e-9))
    iso = sum(1 for r in diagram_rows if r.report.deficit < -1e-10)
    regimes = ", ".join(
        f"(%g,%g]: min %.4f" % (r.lo, r.hi, r.value)
        for r in scan.regimes if r.count)
    ok = scan.value > 0.0 and fk == 0 and iso == 0
    scorecard("spectral gap positivity", ok,
              f"{len(diagram_rows)} rows, min ratio {scan.value:.5f} at "
              f"{scan.argmin_id}; regimes {regimes}; "
              f"violations fk={fk} iso={iso}")
    assert len(diagram_rows) >= 1200
    assert scan.value > 0.0, f"ratio fell to {scan.value} at {scan.argmin_id}"
    assert fk == 0, f"{fk} rows dipped below the disk eigenvalue"
    assert iso == 0, f"{iso} rows had negative deficit"


def test_battery_is_deterministic(tmp_path):
    """verify-all --scale quick twice: identical CSV bytes, all checks pass."""
    outs = []
    for name in ("one", "two"):
        outdir = tmp_path / name
        proc = subprocess.run(
            [sys.executable, "-m", "isolab.cli", "verify-all",
             "--seed", str(SEED), "--scale", "quick", "--out", str(outdir)],
            capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        outs.append(outdir)
    names = sorted(p.name for p in outs[0].glob("*.csv"))
    assert names, "battery produced no CSV artifacts"
    mismatched = [n for n in names
                  if (outs[0] / n).read_bytes() != (outs[1] / n).read_bytes()]
    ok = not mismatched
    scorecard("battery determinism", ok,
              f"{len(names)} CSVs byte-identical across runs"
              if ok else f"mismatch in {mismatched}")
    assert not mismatched
