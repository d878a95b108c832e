"""Set metrics: exact distance transforms, Hausdorff distance, sweeps.

The distance transform is the separable two-pass lower-envelope algorithm
(exact Euclidean distances between pixel centers, in plane units).  The
Hausdorff distance between two masks on one grid uses the transforms, which
is exact at pixel centers; point sets (e.g. densely sampled curves) use a
direct nearest-neighbor scan so thin sets never pay a second discretization.

Convergence sweeps rasterize K(f_n) for each n and measure its Hausdorff
distance to an analytic target (closed unit disk / unit circle) or to the
rasterized limit set of q.  Disk and circle targets keep the outward
direction analytic (distance from a point to the disk or circle has a
closed form); the inward direction samples the target densely: the circle
at 4*cols points, the disk additionally at every in-disk pixel center.
"""

import time
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import EmptySet, EmptySource
from .orbits import EscapeParams
from .poly import Polynomial, PowerPolyMap
from .raster import GridSpec, RasterMask, rasterize_filled_julia, rasterize_limit_set

TARGETS = ("disk", "circle", "kinf")


@dataclass(frozen=True)
class DistanceField:
    grid: GridSpec
    dist: np.ndarray  # float64 (rows, cols), plane units


@dataclass(frozen=True)
class SweepRow:
    n: int
    d_h: float
    target: str
    grid_res: int
    runtime_ms: int


def points_to_mask(points, grid: GridSpec):
    """Mark the pixel nearest each point (for point-set sources)."""
    pts = np.asarray(points, dtype=np.complex128).ravel()
    if pts.size == 0:
        raise EmptySource("no source points")
    xmin = grid.center.real - grid.width / 2.0
    ymin = grid.center.imag - grid.height / 2.0
    i = np.clip(np.round((pts.real - xmin) / grid.pixel_width - 0.5).astype(int),
                0, grid.cols - 1)
    j = np.clip(np.round((pts.imag - ymin) / grid.pixel_height - 0.5).astype(int),
                0, grid.rows - 1)
    src = np.zeros((grid.rows, grid.cols), bool)
    src[j, i] = True
    return src


def distance_transform(source, grid: GridSpec) -> DistanceField:
    """Distance from every pixel center to the nearest source pixel center.

    `source` is a boolean (rows, cols) array, or a complex point set whose
    points are snapped to their nearest pixel first.
    """
    if isinstance(source, np.ndarray) and source.dtype == bool:
        src = source
        if src.shape != (grid.rows, grid.cols):
            raise ValueError("source mask does not match the grid")
    else:
        src = points_to_mask(source, grid)
    if not src.any():
        raise EmptySource("distance transform of an empty source set")
    aspect = grid.pixel_height / grid.pixel_width
    g = kernels.edt_row_dist(src.astype(np.uint8))
    g = g * aspect
    d2 = kernels.edt_envelope(g * g)
    return DistanceField(grid=grid, dist=grid.pixel_width * np.sqrt(d2))


def _as_points(obj):
    if isinstance(obj, RasterMask):
        pts = obj.inside_points()
    else:
        pts = np.asarray(obj, dtype=np.complex128).ravel()
    if pts.size == 0:
        raise EmptySet("empty point set")
    return pts


def min_dists_to(points, targets) -> np.ndarray:
    """Distance from each of `points` to the nearest of `targets`."""
    a = _as_points(points)
    b = _as_points(targets)
    d2 = kernels.min_sq_dists(
        np.ascontiguousarray(a.real), np.ascontiguousarray(a.imag),
        np.ascontiguousarray(b.real), np.ascontiguousarray(b.imag),
    )
    return np.sqrt(d2)


def hausdorff_points(a, b) -> float:
    """max(sup_a d(a, B), sup_b d(b, A)) for two point sets."""
    return max(float(min_dists_to(a, b).max()),
               float(min_dists_to(b, a).max()))


def hausdorff_masks(a: RasterMask, b: RasterMask) -> float:
    """Hausdorff distance between the primary sets of two same-grid masks."""
    if a.grid != b.grid:
        raise ValueError("masks live on different grids")
    am = a.inside()
    bm = b.inside()
    if not am.any() or not bm.any():
        raise EmptySet("mask with no positive pixels")
    field_b = distance_transform(bm, a.grid).dist
    field_a = distance_transform(am, a.grid).dist
    return max(float(field_b[am].max()), float(field_a[bm].max()))


def hausdorff(a, b) -> float:
    """Generic entry point: masks on one grid use distance fields, anything
    else is treated as point sets (masks contribute their pixel centers)."""
    if isinstance(a, RasterMask) and isinstance(b, RasterMask) and a.grid == b.grid:
        return hausdorff_masks(a, b)
    return hausdorff_points(_as_points(a), _as_points(b))


def pointwise_distance_sequence(z, masks) -> list:
    """d(z, Inside(mask)) for each mask: the raw inner/outer limit diagnostic."""
    z = complex(z)
    out = []
    for m in masks:
        pts = m.inside_points()
        if pts.size == 0:
            raise EmptySet("mask with no Inside pixels")
        out.append(float(np.abs(pts - z).min()))
    return out


def circle_samples(count, radius=1.0):
    k = np.arange(count)
    return radius * np.exp(2j * np.pi * k / count)


def _distance_to_disk_target(mask: RasterMask) -> float:
    """d_H(Inside(mask), closed unit disk); outward direction analytic."""
    pts = mask.inside_points()
    if pts.size == 0:
        raise EmptySet("mask with no Inside pixels")
    out_dir = float(np.maximum(np.abs(pts) - 1.0, 0.0).max())
    field = distance_transform(mask.inside(), mask.grid).dist
    centers = mask.grid.centers_complex()
    in_disk = np.abs(centers) <= 1.0
    in_dir = float(field[in_disk].max()) if in_disk.any() else 0.0
    samples = circle_samples(4 * mask.grid.cols)
    in_dir = max(in_dir, float(min_dists_to(samples, pts).max()))
    return max(out_dir, in_dir)


def _distance_to_circle_target(mask: RasterMask) -> float:
    """d_H(Inside(mask), unit circle); outward direction analytic."""
    pts = mask.inside_points()
    if pts.size == 0:
        raise EmptySet("mask with no Inside pixels")
    out_dir = float(np.abs(np.abs(pts) - 1.0).max())
    samples = circle_samples(4 * mask.grid.cols)
    in_dir = float(min_dists_to(samples, pts).max())
    return max(out_dir, in_dir)


def convergence_sweep(
    q: Polynomial,
    n_list,
    grid: GridSpec,
    target: str,
    p: EscapeParams,
    J: int = 8,
) -> list:
    """Hausdorff distance of K(f_n) to the target for each n, ascending."""
    if target not in TARGETS:
        raise ValueError(f"target must be one of {TARGETS}")
    n_list = [int(n) for n in n_list]
    if n_list != sorted(n_list):
        raise ValueError("n_list must be ascending")
    limit_mask = None
    if target == "kinf":
        limit_mask = rasterize_limit_set(q, grid, p, J=J)
    rows = []
    for n in n_list:
        f = PowerPolyMap(n, q)
        t0 = time.perf_counter()
        jmask = rasterize_filled_julia(f, grid, p)
        if target == "disk":
            d = _distance_to_disk_target(jmask)
        elif target == "circle":
            d = _distance_to_circle_target(jmask)
        else:
            d = hausdorff_masks(jmask, limit_mask)
        ms = int(round((time.perf_counter() - t0) * 1000.0))
        rows.append(SweepRow(n=n, d_h=d, target=target,
                             grid_res=grid.cols, runtime_ms=ms))
    return rows


def sweep_csv_lines(rows) -> list:
    lines = ["n,d_hausdorff,target,grid,runtime_ms"]
    for r in rows:
        lines.append(f"{r.n},{r.d_h:.9g},{r.target},{r.grid_res},{r.runtime_ms}")
    return lines
