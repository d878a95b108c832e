"""Rasterization of filled Julia sets and the unit-disk limit set.

A GridSpec is a rectangular window of the plane sampled at pixel centers
(imaginary axis up).  Masks carry one of two label vocabularies:

  'julia': -1 = Inside (orbit stayed within the escape radius),
           s >= 0 = Outside, escaped at step s.
  'limit': -1 = Core (orbit of q stayed below 1-delta for the whole budget),
           j in 0..J = Shell(j) (first band entry at step j),
           -2 = Outside (escaped, or shell deeper than J, truncated).

PGM export (P5, maxval 255) is byte-exact for identical inputs:
Inside/Core = 0, Outside = 255, Shell(j) = 40 + 20*min(j, 8).  The window
is recorded in a header comment so masks round-trip with their geometry.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .orbits import EscapeParams, escape_radius
from .poly import Polynomial, PowerPolyMap

JULIA_INSIDE = -1
LIMIT_CORE = -1
LIMIT_OUTSIDE = -2


@dataclass(frozen=True)
class GridSpec:
    """Pixel (i, j) center: center + ((i+.5)/cols - .5)*width
    + 1i*((j+.5)/rows - .5)*height."""

    center: complex
    width: float
    height: float
    cols: int
    rows: int

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("window width/height must be positive")
        if self.cols < 1 or self.rows < 1:
            raise ValueError("cols/rows must be positive")
        if not (math.isfinite(self.center.real) and math.isfinite(self.center.imag)):
            raise ValueError("non-finite grid center")

    @classmethod
    def from_window(cls, xmin, xmax, ymin, ymax, cols, rows=None):
        if not (xmin < xmax and ymin < ymax):
            raise ValueError("window must satisfy xmin < xmax and ymin < ymax")
        rows = cols if rows is None else rows
        return cls(
            center=complex((xmin + xmax) / 2.0, (ymin + ymax) / 2.0),
            width=xmax - xmin,
            height=ymax - ymin,
            cols=cols,
            rows=rows,
        )

    @property
    def pixel_width(self):
        return self.width / self.cols

    @property
    def pixel_height(self):
        return self.height / self.rows

    @property
    def pixel_diag(self):
        return math.hypot(self.pixel_width, self.pixel_height)

    def xs(self):
        i = np.arange(self.cols, dtype=np.float64)
        return self.center.real + ((i + 0.5) / self.cols - 0.5) * self.width

    def ys(self):
        j = np.arange(self.rows, dtype=np.float64)
        return self.center.imag + ((j + 0.5) / self.rows - 0.5) * self.height

    def pixel_center(self, i, j):
        return complex(self.xs()[i], self.ys()[j])

    def centers_complex(self):
        z = np.empty((self.rows, self.cols), np.complex128)
        z.real[:] = self.xs()[None, :]
        z.imag[:] = self.ys()[:, None]
        return z


@dataclass
class RasterMask:
    grid: GridSpec
    labels: np.ndarray  # int32 (rows, cols)
    vocab: str          # 'julia' | 'limit'
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.vocab not in ("julia", "limit"):
            raise ValueError(f"unknown mask vocabulary {self.vocab!r}")
        if self.labels.shape != (self.grid.rows, self.grid.cols):
            raise ValueError("label array does not match the grid")

    def inside(self):
        """Boolean array of the primary set (Inside / Core + shells)."""
        if self.vocab == "julia":
            return self.labels == JULIA_INSIDE
        return self.labels > LIMIT_OUTSIDE

    def inside_points(self):
        z = self.grid.centers_complex()
        return z[self.inside()]

    def to_pgm_array(self):
        out = np.full(self.labels.shape, 255, np.uint8)
        if self.vocab == "julia":
            out[self.labels == JULIA_INSIDE] = 0
        else:
            out[self.labels == LIMIT_CORE] = 0
            shell = self.labels >= 0
            j = np.minimum(self.labels[shell], 8)
            out[shell] = (40 + 20 * j).astype(np.uint8)
        return out


def rasterize_filled_julia(f: PowerPolyMap, grid: GridSpec, p: EscapeParams) -> RasterMask:
    """Escape-time verdict per pixel center; deterministic for any schedule."""
    required = escape_radius(f)
    p = p.with_radius_for(f)
    if p.escape_radius < required - 1e-12:
        raise ValueError(
            f"escape radius {p.escape_radius:g} is below the certified "
            f"radius {required:g} for this map"
        )
    r2 = p.escape_radius * p.escape_radius
    labels = kernels.julia_escape_steps(
        grid.xs(), grid.ys(), f.q.as_array(), f.n, r2, p.max_iter
    )
    meta = {"n": f.n, "max_iter": p.max_iter, "escape_radius": p.escape_radius}
    return RasterMask(grid=grid, labels=labels, vocab="julia", meta=meta)


def rasterize_limit_set(q: Polynomial, grid: GridSpec, p: EscapeParams, J: int = 8) -> RasterMask:
    """Classify every pixel by its q-orbit: core, shell j <= J, or outside.

    band_delta defaults to two pixel diagonals so shells are visible but
    thin at any resolution; shells deeper than J are truncated to Outside
    and counted in meta['truncated_shells'].
    """
    if J < 1:
        raise ValueError("J must be >= 1")
    delta = p.band_delta if p.band_delta is not None else 2.0 * grid.pixel_diag
    lo2 = (1.0 - delta) ** 2
    hi2 = (1.0 + delta) ** 2
    codes = kernels.limit_orbit_codes(
        grid.xs(), grid.ys(), q.as_array(), p.kq_iter, lo2, hi2
    )
    labels = np.full(codes.shape, LIMIT_OUTSIDE, np.int32)
    labels[codes == -1] = LIMIT_CORE
    shell = codes >= 0
    labels[shell & (codes <= J)] = codes[shell & (codes <= J)]
    truncated = int((shell & (codes > J)).sum())
    meta = {"J": J, "band_delta": delta, "kq_iter": p.kq_iter,
            "truncated_shells": truncated}
    return RasterMask(grid=grid, labels=labels, vocab="limit", meta=meta)


def mask_boundary(mask: RasterMask, predicate) -> np.ndarray:
    """Pixel centers matching predicate with a 4-neighbor that does not
    (grid-edge pixels count); predicate maps an int32 label array to bool."""
    m = predicate(mask.labels)
    interior = np.zeros_like(m)
    interior[1:-1, 1:-1] = (
        m[1:-1, 1:-1]
        & m[:-2, 1:-1] & m[2:, 1:-1] & m[1:-1, :-2] & m[1:-1, 2:]
    )
    boundary = m & ~interior
    return mask.grid.centers_complex()[boundary]


def write_pgm(mask: RasterMask, path):
    data = mask.to_pgm_array()
    g = mask.grid
    xmin = g.center.real - g.width / 2.0
    xmax = g.center.real + g.width / 2.0
    ymin = g.center.imag - g.height / 2.0
    ymax = g.center.imag + g.height / 2.0
    header = (
        f"P5\n# window {xmin!r} {xmax!r} {ymin!r} {ymax!r}\n"
        f"# vocab {mask.vocab}\n{g.cols} {g.rows}\n255\n"
    )
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(data[::-1].tobytes())  # top image row = largest imag


def read_pgm(path):
    """Returns (values uint8 (rows, cols) with row 0 at ymin, window, vocab)."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if not blob.startswith(b"P5"):
        raise ValueError(f"{path}: not a binary PGM (P5) file")
    window = None
    vocab = None
    pos = 2
    fields = []
    while len(fields) < 3:
        if pos >= len(blob):
            raise ValueError(f"{path}: truncated PGM header")
        ch = blob[pos:pos + 1]
        if ch == b"#":
            eol = blob.index(b"\n", pos)
            comment = blob[pos + 1:eol].decode("ascii").split()
            if comment[:1] == ["window"] and len(comment) == 5:
                window = tuple(float(v) for v in comment[1:])
            if comment[:1] == ["vocab"] and len(comment) == 2:
                vocab = comment[1]
            pos = eol + 1
        elif ch.isspace():
            pos += 1
        else:
            end = pos
            while end < len(blob) and not blob[end:end + 1].isspace():
                end += 1
            fields.append(int(blob[pos:end]))
            pos = end
    pos += 1  # single whitespace after maxval
    cols, rows, maxval = fields
    if maxval != 255:
        raise ValueError(f"{path}: expected maxval 255, found {maxval}")
    data = np.frombuffer(blob[pos:pos + rows * cols], np.uint8)
    if data.size != rows * cols:
        raise ValueError(f"{path}: pixel payload is short")
    return data.reshape(rows, cols)[::-1].copy(), window, vocab


def write_png(mask: RasterMask, path):
    """Optional grayscale PNG with the PGM palette (requires Pillow)."""
    try:
        from PIL import Image
    except ImportError as exc:
        raise RuntimeError("PNG export needs the optional Pillow dependency") from exc
    Image.fromarray(mask.to_pgm_array()[::-1], mode="L").save(path, format="PNG")
