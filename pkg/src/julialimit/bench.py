"""Backend benchmark: numba kernels vs the pure-numpy fallback.

Run with `python -m julialimit.bench [--grid N] [--n N]`.  Each kernel is
warmed once per backend (JIT compile + cache), then timed, and the results
are cross-checked (mask labels must agree exactly; root sets to 1e-8).
"""

import argparse
import os
import time

import numpy as np

from . import backend
from .metrics import distance_transform, hausdorff_points
from .orbits import EscapeParams
from .poly import PowerPolyMap, parse_poly
from .raster import GridSpec, rasterize_filled_julia, rasterize_limit_set
from .roots import fixed_points


def _timed(fn, repeat=2):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return result, best


def _with_backend(name, fn):
    old = os.environ.get("JULIA_LIMIT_BACKEND")
    os.environ["JULIA_LIMIT_BACKEND"] = name
    try:
        return _timed(fn)
    finally:
        if old is None:
            del os.environ["JULIA_LIMIT_BACKEND"]
        else:
            os.environ["JULIA_LIMIT_BACKEND"] = old


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=384, help="grid resolution (default: %(default)s)")
    ap.add_argument("--n", type=int, default=200, help="power-map degree (default: %(default)s)")
    args = ap.parse_args(argv)

    q = parse_poly("0.25+0.25i,0,1")
    grid = GridSpec.from_window(-1.5, 1.5, -1.5, 1.5, args.grid)
    p = EscapeParams(max_iter=200)
    f = PowerPolyMap(args.n, q)

    rng = np.random.default_rng(11)
    src = np.zeros((args.grid, args.grid), bool)
    src[rng.integers(0, args.grid, 200), rng.integers(0, args.grid, 200)] = True
    pts_a = rng.standard_normal(4096) + 1j * rng.standard_normal(4096)
    pts_b = rng.standard_normal(4096) + 1j * rng.standard_normal(4096)

    cases = [
        ("julia render", lambda: rasterize_filled_julia(f, grid, p).labels),
        ("limit render", lambda: rasterize_limit_set(q, grid, p).labels),
        ("fixed points n=256", lambda: fixed_points(PowerPolyMap(256, q)).points),
        ("distance transform", lambda: distance_transform(src, grid).dist),
        ("hausdorff 4096x4096", lambda: hausdorff_points(pts_a, pts_b)),
    ]

    if not backend._numba_available():
        print("numba unavailable; nothing to compare")
        return 0

    print(f"grid {args.grid}x{args.grid}, n={args.n}")
    print(f"{'kernel':<22}{'numba':>10}{'numpy':>10}{'speedup':>9}  agree")
    for name, fn in cases:
        r_nb, t_nb = _with_backend("numba", fn)
        r_np, t_np = _with_backend("numpy", fn)
        if isinstance(r_nb, np.ndarray) and r_nb.dtype.kind in "iu":
            agree = bool(np.array_equal(r_nb, r_np))
        elif isinstance(r_nb, np.ndarray):
            agree = bool(np.allclose(np.sort_complex(r_nb.ravel()) if r_nb.dtype.kind == "c" else r_nb,
                                     np.sort_complex(r_np.ravel()) if r_np.dtype.kind == "c" else r_np,
                                     atol=1e-8))
        else:
            agree = abs(r_nb - r_np) < 1e-9
        print(f"{name:<22}{t_nb * 1e3:>8.1f}ms{t_np * 1e3:>8.1f}ms{t_np / t_nb:>8.1f}x  {agree}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
