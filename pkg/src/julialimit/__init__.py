"""Filled Julia sets of z**n + q(z), their large-n limit sets, and
quantitative convergence diagnostics."""

from .classify import (
    Hyperbolicity,
    Regime,
    RegimeVerdict,
    circle_fixed_points,
    classify_regime,
    hyperbolicity_heuristic,
    max_modulus_on_disk,
    min_modulus_on_disk,
)
from .errors import (
    DegreeTooLow,
    EmptyAnnulus,
    EmptySet,
    EmptySource,
    NewtonDivergence,
    NoConvergence,
    NoCycleFound,
    NumericalError,
)
from .metrics import (
    DistanceField,
    SweepRow,
    convergence_sweep,
    distance_transform,
    hausdorff,
    hausdorff_masks,
    hausdorff_points,
    pointwise_distance_sequence,
    sweep_csv_lines,
)
from .orbits import (
    CycleInfo,
    EscapeParams,
    OrbitClass,
    OrbitKind,
    Stability,
    classify_orbit,
    detect_cycle,
    detect_cycle_of_poly,
    escape_radius,
    escape_time,
    orbit_deviation,
    refine_cycle_under_map,
)
from .poly import (
    Polynomial,
    PowerPolyMap,
    cpow,
    format_complex,
    format_poly,
    parse_complex,
    parse_poly,
)
from .raster import (
    GridSpec,
    RasterMask,
    mask_boundary,
    rasterize_filled_julia,
    rasterize_limit_set,
    read_pgm,
    write_pgm,
)
from .roots import ClusterStats, RootSet, cluster_stats, find_roots, fixed_points

__version__ = "0.1.0"
