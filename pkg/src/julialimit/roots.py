"""Polynomial root finding and unit-circle clustering statistics.

Roots come from the Aberth-Ehrlich simultaneous iteration (Gauss-Seidel
sweeps), which handles the z**n + (low-degree part) shape well at degrees
in the hundreds without any linear-algebra dependency.  Initial guesses sit
on the circle of radius (|a_0/a_d|)**(1/d) rotated by 0.4 rad; the rotation
breaks the symmetry that stalls the iteration on near-symmetric inputs.

The clustering statistics treat the root multiset as an empirical measure
and compare its angular distribution with the uniform one via the star
discrepancy of the sorted normalized arguments.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import EmptyAnnulus, NoConvergence
from .poly import Polynomial, PowerPolyMap

MAX_SWEEPS = 500
_MIN_START_RADIUS = 1e-3


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicity (length == degree) plus their residuals."""

    points: np.ndarray      # complex128, one entry per root
    residuals: np.ndarray   # |p(root)| for each root
    residual_scale: float   # max(1, sampled sup of |p| on the unit circle)

    def __len__(self):
        return self.points.size


@dataclass(frozen=True)
class ClusterStats:
    annulus_fraction: float    # share of roots with ||z|-1| <= eps
    max_radial_dev: float      # max ||z|-1| over the annulus roots
    angular_discrepancy: float # star discrepancy of their normalized angles


def _initial_guesses(p):
    deg = p.degree
    a0 = abs(p.coeffs[0])
    ad = abs(p.coeffs[-1])
    radius = (a0 / ad) ** (1.0 / deg) if a0 > 0 else 0.0
    radius = max(radius, _MIN_START_RADIUS)
    ks = np.arange(deg)
    angles = 2.0 * np.pi * ks / deg + 0.4
    return radius * np.exp(1j * angles)


def _circle_sup(p, samples=256):
    zs = np.exp(2j * np.pi * np.arange(samples) / samples)
    vals = np.zeros(samples, dtype=np.complex128)
    for c in reversed(p.coeffs):
        vals = vals * zs + c
    return float(np.abs(vals).max())


def find_roots(p: Polynomial, tol: float = 1e-12, max_sweeps: int = MAX_SWEEPS) -> RootSet:
    """All complex roots of p (with multiplicity) to the given correction tol.

    Raises NoConvergence listing the offending indices if some correction is
    still above tol after max_sweeps sweeps, or if a converged root fails the
    residual bound tol * max(1, sup |p| on the unit circle).
    """
    if p.degree < 1:
        raise ValueError("find_roots needs degree >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    coeffs = p.as_array()
    dcoeffs = p.derivative().as_array()
    x0 = _initial_guesses(p).astype(np.complex128)
    roots, corr, _ = kernels.aberth_solve(coeffs, dcoeffs, x0, float(tol), int(max_sweeps))
    bad = np.nonzero(corr > tol)[0]
    if bad.size:
        raise NoConvergence(bad.tolist())
    scale = max(1.0, _circle_sup(p))
    residuals = np.abs([p(complex(r)) for r in roots])
    # a residual below the Horner evaluation-noise envelope eps * sum
    # |a_k| |x|^k is indistinguishable from an exact root, so roots well
    # outside the unit circle get that allowance instead of tol * scale
    eps = float(np.finfo(np.float64).eps)
    mods = np.abs(roots)
    envelope = np.zeros_like(mods)
    for c in reversed(p.coeffs):
        envelope = envelope * mods + abs(c)
    over = np.nonzero((residuals > tol * scale) & (residuals > 4.0 * eps * envelope))[0]
    if over.size:
        raise NoConvergence(over.tolist(), f"residuals exceed {tol:g} * {scale:g}")
    return RootSet(points=roots, residuals=residuals, residual_scale=scale)


def fixed_points(f: PowerPolyMap, tol: float = 1e-12) -> RootSet:
    """The n fixed points of f, i.e. the roots of z**n + q(z) - z."""
    return find_roots(f.fixed_point_poly(), tol)


def star_discrepancy(us):
    """D* of points in [0,1): max_i max(i/N - u_(i), u_(i) - (i-1)/N)."""
    u = np.sort(np.asarray(us, dtype=np.float64))
    n = u.size
    if n == 0:
        raise ValueError("star_discrepancy of an empty sample")
    i = np.arange(1, n + 1, dtype=np.float64)
    return float(np.maximum(i / n - u, u - (i - 1.0) / n).max())


def cluster_stats(m: RootSet, eps: float) -> ClusterStats:
    """How tightly the roots hug the unit circle, and how evenly in angle."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if len(m) == 0:
        raise ValueError("empty root set")
    radial = np.abs(np.abs(m.points) - 1.0)
    in_annulus = radial <= eps
    count = int(in_annulus.sum())
    if count == 0:
        raise EmptyAnnulus(f"no roots within {eps:g} of the unit circle")
    angles = np.angle(m.points[in_annulus]) / (2.0 * math.pi)
    us = np.mod(angles, 1.0)
    return ClusterStats(
        annulus_fraction=count / len(m),
        max_radial_dev=float(radial[in_annulus].max()),
        angular_discrepancy=star_discrepancy(us),
    )


def roots_csv_lines(m: RootSet, stats: ClusterStats):
    """CSV rows re,im,modulus,arg plus the `# stats:` trailer line."""
    lines = ["re,im,modulus,arg"]
    for z in m.points:
        z = complex(z)
        lines.append(
            f"{z.real:.9g},{z.imag:.9g},{abs(z):.9g},{math.atan2(z.imag, z.real):.9g}"
        )
    lines.append(
        "# stats: "
        f"annulus_fraction={stats.annulus_fraction:.9g} "
        f"max_radial_dev={stats.max_radial_dev:.9g} "
        f"angular_discrepancy={stats.angular_discrepancy:.9g}"
    )
    return lines
