"""Command-line driver.

Subcommands: render-julia, render-kinf, sweep, fixed-points, classify,
cycle, distance.  Exit codes: 0 success, 2 usage/config error, 3 numerical
failure.  Every flag has a default, mirrors one key in the flat key=value
config format (`--config FILE` loads, `--dump-config FILE` writes a file
that reproduces the run), and is documented in `--help`.

Environment: JULIA_LIMIT_THREADS caps kernel parallelism (0 = auto) and
never changes output bytes; JULIA_LIMIT_BACKEND selects numba or numpy
kernels.  Identical invocations write byte-identical PGM files; sweep CSVs
are identical except for the runtime_ms timing column.
"""

import argparse
import sys
import time

import numpy as np

from .classify import classify_regime
from .errors import NumericalError
from .metrics import TARGETS, convergence_sweep, hausdorff_masks, sweep_csv_lines
from .orbits import EscapeParams, detect_cycle_of_poly, refine_cycle_under_map
from .poly import PowerPolyMap, format_complex, parse_complex, parse_poly
from .raster import (
    GridSpec,
    RasterMask,
    rasterize_filled_julia,
    rasterize_limit_set,
    read_pgm,
    write_pgm,
    write_png,
)
from .roots import cluster_stats, fixed_points, roots_csv_lines

DEFAULT_WINDOW = "-1.5,1.5,-1.5,1.5"


def _parse_window(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"window {text!r}: expected xmin,xmax,ymin,ymax")
    xmin, xmax, ymin, ymax = (float(v) for v in parts)
    if not (xmin < xmax and ymin < ymax):
        raise ValueError(f"window {text!r}: need xmin < xmax and ymin < ymax")
    return xmin, xmax, ymin, ymax


def _parse_grid(text):
    if "x" in text:
        c, r = text.split("x", 1)
        cols, rows = int(c), int(r)
    else:
        cols = rows = int(text)
    if cols < 1 or rows < 1:
        raise ValueError(f"grid {text!r}: dimensions must be positive")
    return cols, rows


def _parse_n_list(text):
    ns = [int(v) for v in text.split(",") if v.strip()]
    if not ns:
        raise ValueError("empty n list")
    return ns


def _grid_from_args(args):
    cols, rows = _parse_grid(args.grid)
    xmin, xmax, ymin, ymax = _parse_window(args.window)
    return GridSpec.from_window(xmin, xmax, ymin, ymax, cols, rows)


def _radius_from_args(args):
    if args.escape_radius == "auto":
        return None
    return float(args.escape_radius)


def _band_from_args(args, grid):
    if args.band_delta == "auto":
        return 2.0 * grid.pixel_diag
    return float(args.band_delta)


def _load_config(path):
    values = {}
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


def _dump_config(args, keys, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"command={args.command}\n")
        for key in keys:
            value = getattr(args, key.replace("-", "_"))
            if value is not None:
                fh.write(f"{key}={value}\n")


class _Flags:
    """Tracks a subparser's configurable flags for config round-trips."""

    def __init__(self, sub):
        self.sub = sub
        self.keys = []
        self.types = {}

    def add(self, name, **kw):
        key = name.lstrip("-")
        self.keys.append(key)
        if "type" in kw:
            self.types[key.replace("-", "_")] = kw["type"]
        self.sub.add_argument(name, **kw)

    def finish(self):
        self.sub.add_argument("--config", default=None, metavar="FILE",
                              help="load key=value defaults from FILE")
        self.sub.add_argument("--dump-config", default=None, metavar="FILE",
                              help="write the resolved configuration to FILE")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="julia-limit",
        description="Filled Julia sets of z^n + q(z) and their large-n limits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    flags = {}

    def new(name, help_):
        s = sub.add_parser(name, help=help_)
        f = _Flags(s)
        flags[name] = f
        return f

    f = new("render-julia", "rasterize a filled Julia set to PGM")
    f.add("--q", default="0", help="polynomial q, low-to-high coefficients (default: %(default)s)")
    f.add("--n", type=int, default=200, help="power-map degree (default: %(default)s)")
    f.add("--grid", default="512", help="COLS or COLSxROWS (default: %(default)s)")
    f.add("--window", default=DEFAULT_WINDOW, help="xmin,xmax,ymin,ymax (default: %(default)s)")
    f.add("--max-iter", type=int, default=500, help="iteration budget (default: %(default)s)")
    f.add("--escape-radius", default="auto", help="escape radius or 'auto' (default: %(default)s)")
    f.add("--out", default="julia.pgm", help="output PGM path (default: %(default)s)")
    f.add("--png", default=None, help="optional PNG path (needs Pillow)")
    f.finish()

    f = new("render-kinf", "rasterize the limit set of q to PGM")
    f.add("--q", default="0", help="polynomial q (default: %(default)s)")
    f.add("--grid", default="512", help="COLS or COLSxROWS (default: %(default)s)")
    f.add("--window", default=DEFAULT_WINDOW, help="xmin,xmax,ymin,ymax (default: %(default)s)")
    f.add("--kq-iter", type=int, default=200, help="orbit budget under q (default: %(default)s)")
    f.add("--band-delta", default="auto",
          help="half-thickness of the circle band, or 'auto' = 2 pixel diagonals")
    f.add("--J", type=int, default=8, help="deepest shell kept (default: %(default)s)")
    f.add("--out", default="kinf.pgm", help="output PGM path (default: %(default)s)")
    f.add("--png", default=None, help="optional PNG path (needs Pillow)")
    f.finish()

    f = new("sweep", "Hausdorff distance of K(f_n) to a target across n")
    f.add("--q", default="0", help="polynomial q (default: %(default)s)")
    f.add("--target", default="disk", choices=TARGETS,
          help="comparison target (default: %(default)s)")
    f.add("--n", default="10,50,200", help="ascending n list (default: %(default)s)")
    f.add("--grid", default="512", help="COLS or COLSxROWS (default: %(default)s)")
    f.add("--window", default=DEFAULT_WINDOW, help="xmin,xmax,ymin,ymax (default: %(default)s)")
    f.add("--max-iter", type=int, default=500, help="iteration budget (default: %(default)s)")
    f.add("--escape-radius", default="auto", help="escape radius or 'auto' (default: %(default)s)")
    f.add("--kq-iter", type=int, default=200, help="orbit budget under q (default: %(default)s)")
    f.add("--band-delta", default="auto", help="band half-thickness or 'auto' (kinf target)")
    f.add("--J", type=int, default=8, help="deepest shell kept (default: %(default)s)")
    f.add("--out", default="sweep.csv", help="output CSV path (default: %(default)s)")
    f.finish()

    f = new("fixed-points", "fixed points of z^n + q(z) with clustering stats")
    f.add("--q", default="0", help="polynomial q (default: %(default)s)")
    f.add("--n", type=int, default=256, help="power-map degree (default: %(default)s)")
    f.add("--tol", type=float, default=1e-12, help="root-finder tolerance (default: %(default)s)")
    f.add("--eps", type=float, default=0.1,
          help="annulus half-width for the stats (default: %(default)s)")
    f.add("--out", default=None, help="output CSV path (default: stdout)")
    f.finish()

    f = new("classify", "limit-regime verdict for q")
    f.add("--q", default="0,0,1", help="polynomial q (default: %(default)s)")
    f.add("--samples", type=int, default=4096,
          help="circle samples behind the certificates (default: %(default)s)")
    f.add("--fixed-tol", type=float, default=1e-6,
          help="distance to the circle that counts as 'on it' (default: %(default)s)")
    f.add("--max-iter", type=int, default=500,
          help="orbit budget for the hyperbolicity heuristic (default: %(default)s)")
    f.finish()

    f = new("cycle", "detect the cycle attracting the orbit of z0 under q")
    f.add("--q", default="0,0,1", help="polynomial q (default: %(default)s)")
    f.add("--z0", default="0", help="starting point (default: %(default)s)")
    f.add("--max-period", type=int, default=64, help="period budget (default: %(default)s)")
    f.add("--max-iter", type=int, default=500, help="burn-in length (default: %(default)s)")
    f.add("--n", type=int, default=None,
          help="also continue the cycle to z^n + q(z) for this n")
    f.finish()

    f = new("distance", "Hausdorff distance between two stored PGM masks")
    f.add("--a", default="a.pgm", help="first PGM path (default: %(default)s)")
    f.add("--b", default="b.pgm", help="second PGM path (default: %(default)s)")
    f.add("--window", default=None,
          help="xmin,xmax,ymin,ymax override when the PGMs carry no window")
    f.finish()

    return parser, flags


def _cmd_render_julia(args):
    q = parse_poly(args.q)
    grid = _grid_from_args(args)
    f = PowerPolyMap(args.n, q)
    p = EscapeParams(max_iter=args.max_iter, escape_radius=_radius_from_args(args))
    t0 = time.perf_counter()
    mask = rasterize_filled_julia(f, grid, p)
    frac = float(mask.inside().mean())
    write_pgm(mask, args.out)
    if args.png:
        write_png(mask, args.png)
    print(
        f"render-julia n={args.n} grid={grid.cols}x{grid.rows} "
        f"inside_fraction={frac:.6g} elapsed={time.perf_counter() - t0:.2f}s",
        file=sys.stderr,
    )
    return 0


def _cmd_render_kinf(args):
    q = parse_poly(args.q)
    grid = _grid_from_args(args)
    p = EscapeParams(kq_iter=args.kq_iter, band_delta=_band_from_args(args, grid))
    t0 = time.perf_counter()
    mask = rasterize_limit_set(q, grid, p, J=args.J)
    write_pgm(mask, args.out)
    if args.png:
        write_png(mask, args.png)
    core = int((mask.labels == -1).sum())
    shells = int((mask.labels >= 0).sum())
    print(
        f"render-kinf grid={grid.cols}x{grid.rows} core_pixels={core} "
        f"shell_pixels={shells} truncated={mask.meta['truncated_shells']} "
        f"elapsed={time.perf_counter() - t0:.2f}s",
        file=sys.stderr,
    )
    return 0


def _cmd_sweep(args):
    q = parse_poly(args.q)
    grid = _grid_from_args(args)
    p = EscapeParams(
        max_iter=args.max_iter,
        escape_radius=_radius_from_args(args),
        band_delta=_band_from_args(args, grid),
        kq_iter=args.kq_iter,
    )
    rows = convergence_sweep(q, _parse_n_list(args.n), grid, args.target, p, J=args.J)
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write("\n".join(sweep_csv_lines(rows)) + "\n")
    for r in rows:
        print(f"sweep n={r.n} d_h={r.d_h:.6g} ({r.runtime_ms} ms)", file=sys.stderr)
    return 0


def _cmd_fixed_points(args):
    q = parse_poly(args.q)
    f = PowerPolyMap(args.n, q)
    m = fixed_points(f, args.tol)
    stats = cluster_stats(m, args.eps)
    lines = roots_csv_lines(m, stats)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        print("\n".join(lines))
    return 0


def _cmd_classify(args):
    q = parse_poly(args.q)
    p = EscapeParams(max_iter=args.max_iter)
    v = classify_regime(q, p, samples=args.samples, fixed_tol=args.fixed_tol)
    print(v.record_line())
    notes = {
        "DiskLimit": "q maps the closed unit disk strictly inside itself; "
        "the filled sets fill out the disk as n grows.",
        "CircleLimit": "q maps the closed unit disk strictly outside the open "
        "disk; only the circle survives in the limit.",
        "KInfinityCandidate": "q straddles the unit circle; the limit is the "
        "mixed core-plus-shells set (compare with render-kinf).",
        "Inconclusive": "certificates straddle 1 within their sampling pad, "
        "or q has a fixed point on the circle; no regime is forced.",
    }
    print(f"note: {notes[v.regime.value]}")
    if v.circle_fixed_points:
        pts = ", ".join(format_complex(z) for z in v.circle_fixed_points)
        print(f"note: fixed points on the circle: {pts}")
    return 0


def _cmd_cycle(args):
    q = parse_poly(args.q)
    z0 = parse_complex(args.z0)
    p = EscapeParams(max_iter=args.max_iter)
    cycle = detect_cycle_of_poly(q, z0, p, args.max_period)
    pts = ";".join(format_complex(z) for z in cycle.points)
    print(
        f"cycle period={cycle.period} stability={cycle.stability.value} "
        f"multiplier={format_complex(cycle.multiplier)} points={pts}"
    )
    if args.n is not None:
        f = PowerPolyMap(args.n, q)
        refined = refine_cycle_under_map(cycle, f)
        pts = ";".join(format_complex(z) for z in refined.points)
        print(
            f"refined n={args.n} period={refined.period} "
            f"stability={refined.stability.value} "
            f"multiplier={format_complex(refined.multiplier)} "
            f"displacement={refined.max_seed_displacement:.6g} points={pts}"
        )
    return 0


def _mask_from_pgm(path, window_flag):
    values, window, vocab = read_pgm(path)
    if window is None:
        if window_flag is None:
            raise ValueError(f"{path}: no window in the PGM; pass --window")
        window = _parse_window(window_flag)
    rows, cols = values.shape
    grid = GridSpec.from_window(*window, cols=cols, rows=rows)
    labels = np.where(values == 255, np.int32(-2), np.int32(-1))
    # vocabulary only affects which values count as positive; everything
    # below 255 is part of the stored set for both palettes
    return RasterMask(grid=grid, labels=labels, vocab="limit", meta={"from": str(path)})


def _cmd_distance(args):
    a = _mask_from_pgm(args.a, args.window)
    b = _mask_from_pgm(args.b, args.window)
    if a.grid != b.grid:
        raise ValueError("the two PGM masks live on different grids/windows")
    d = hausdorff_masks(a, b)
    print(f"d_hausdorff={d:.9g}")
    return 0


_COMMANDS = {
    "render-julia": _cmd_render_julia,
    "render-kinf": _cmd_render_kinf,
    "sweep": _cmd_sweep,
    "fixed-points": _cmd_fixed_points,
    "classify": _cmd_classify,
    "cycle": _cmd_cycle,
    "distance": _cmd_distance,
}


def _merge_dash_values(argv, flags):
    """Turn `--q -0.1+0.75i,0,1` into `--q=-0.1...` so argparse does not
    mistake a leading-minus value for an option."""
    if not argv or argv[0] not in flags:
        return argv
    known = {f"--{k}" for k in flags[argv[0]].keys} | {"--config", "--dump-config"}
    out = [argv[0]]
    i = 1
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (
            tok in known
            and nxt is not None
            and nxt.startswith("-")
            and nxt not in known
            and nxt != "-h"
            and not nxt.startswith("--")
        ):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, flags = build_parser()
    argv = _merge_dash_values(argv, flags)
    # resolve --config before the real parse so flags override file values
    if argv and argv[0] in _COMMANDS and "--config" in argv:
        cfg_path = argv[argv.index("--config") + 1] if argv.index("--config") + 1 < len(argv) else None
        if cfg_path:
            try:
                values = _load_config(cfg_path)
            except (OSError, ValueError) as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 2
            command = values.pop("command", argv[0])
            if command != argv[0]:
                print(
                    f"error: config file {cfg_path} was dumped for "
                    f"{command!r}, not {argv[0]!r}",
                    file=sys.stderr,
                )
                return 2
            known = {k.replace("-", "_") for k in flags[argv[0]].keys}
            unknown = {k for k in values if k.replace("-", "_") not in known}
            if unknown:
                print(f"error: unknown config keys {sorted(unknown)}", file=sys.stderr)
                return 2
            flags[argv[0]].sub.set_defaults(
                **{k.replace("-", "_"): v for k, v in values.items()}
            )
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    # argparse does not run type= over defaults; config values arrive as strings
    for key, caster in flags[args.command].types.items():
        if isinstance(getattr(args, key), str):
            try:
                setattr(args, key, caster(getattr(args, key)))
            except ValueError:
                print(f"error: {key} expects {caster.__name__}", file=sys.stderr)
                return 2
    if getattr(args, "dump_config", None):
        try:
            _dump_config(args, flags[args.command].keys, args.dump_config)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        return _COMMANDS[args.command](args)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
