"""Spectral and isoperimetric functionals for planar convex bodies.

The library measures how far a convex polygon is from a disk (perimeter
deficit, overlap and Hausdorff asymmetries, two-ball sandwich distance),
computes its first Dirichlet eigenvalue by extrapolated finite elements,
and ships a verification harness relating the two families of quantities.
"""

import os as _os

# ISOLAB_THREADS caps BLAS parallelism; 0 or unset leaves library defaults.
# Must happen before numpy loads its BLAS, hence before the imports below.
_threads = _os.environ.get("ISOLAB_THREADS", "").strip()
if _threads.isdigit() and _threads != "0":
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _threads)
del _os, _threads

from . import asymmetry, convex, families, spectral, verify  # noqa: E402
from .asymmetry import (  # noqa: E402
    AsymmetryResult,
    Ball,
    MelasResult,
    disk_polygon_intersection_area,
    fraenkel,
    hausdorff_asymmetry,
    isoperimetric_deficit,
    melas_distance,
    symmetric_difference_radial,
)
from .convex import (  # noqa: E402
    ConvexBody2D,
    GaugeProfile,
    Quermass2D,
    area,
    body_from_json,
    body_to_json,
    centroid,
    diameter,
    gauge_profile,
    hausdorff_between,
    hausdorff_to_disk,
    make_polygon,
    mean_width,
    normalize_area,
    perimeter,
    quermassintegrals,
    steiner_area,
    steiner_area_offset,
    support,
)
from .errors import (  # noqa: E402
    AccuracyBudgetExceeded,
    BadK,
    BadParameter,
    Degenerate,
    EmptyInterior,
    InsufficientData,
    IsolabError,
    LevelOutOfRange,
    NoConvergence,
    NotConvex,
    OriginOutside,
    TooFarFromBall,
    UsageError,
)
from .families import (  # noqa: E402
    FamilySpec,
    build,
    ellipse,
    near_ball,
    random_convex,
    regular_polygon,
    stadium,
)
from .spectral import (  # noqa: E402
    DISK_LAMBDA1,
    Mesh,
    SpectralEstimate,
    assemble,
    lambda1,
    smallest_eigenvalue,
    triangulate,
)
from .verify import (  # noqa: E402
    BETA_REFERENCE,
    BetaFitResult,
    GaugeLemmaResult,
    InequalityReport,
    MinRatioScan,
    ReportRow,
    SweepResult,
    beta_fit,
    diagram,
    fit_exponent,
    gauge_lemma_ratio,
    min_ratio_scan,
    report,
    sweep,
)

__version__ = "0.1.0"
