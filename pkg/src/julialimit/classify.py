"""Limit-regime classification of q via certified circle-modulus bounds.

Whether the filled Julia sets of z**n + q(z) settle on the closed unit disk,
the unit circle, or something in between is decided by where q sends the
closed unit disk.  Both extremal moduli of q on the disk are attained on the
circle (maximum modulus principle; minimum modulus once q is zero-free on
the disk), so sampling the circle plus a derivative-based rigidity pad
L * (pi/samples), L = sum i*|a_i|, yields one-sided certificates:

  upper bound on max |q|:  sampled max + pad     (never under-reports)
  lower bound on min |q|:  sampled min - pad, or 0 when q has a root in
                           the closed disk       (never over-reports)

Verdicts straddling 1 within the pad stay Inconclusive, as do polynomials
with a fixed point on the circle.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegreeTooLow
from .orbits import (
    EscapeParams,
    DEFAULT_BAND_DELTA,
    Stability,
    detect_cycle_of_poly,
    poly_escape_radius,
)
from .errors import NewtonDivergence, NoConvergence, NoCycleFound
from .poly import Polynomial
from .roots import find_roots


class Regime(Enum):
    DISK_LIMIT = "DiskLimit"
    CIRCLE_LIMIT = "CircleLimit"
    KINF_CANDIDATE = "KInfinityCandidate"
    INCONCLUSIVE = "Inconclusive"


class Hyperbolicity(Enum):
    LIKELY = "LikelyHyperbolic"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class RegimeVerdict:
    regime: Regime
    max_mod_on_circle: float      # certified upper bound of max |q| on the disk
    min_mod_on_disk: float        # certified lower bound of min |q| on the disk
    circle_fixed_points: tuple    # fixed points of q with ||z|-1| < tol
    hyperbolic: Hyperbolicity
    margin: float                 # certified distance of the verdict from 1

    def record_line(self):
        return (
            f"regime={self.regime.value} "
            f"max_circle={self.max_mod_on_circle:.9g} "
            f"min_disk={self.min_mod_on_disk:.9g} "
            f"circle_fixed={len(self.circle_fixed_points)} "
            f"hyperbolic={self.hyperbolic.value} "
            f"margin={self.margin:.9g}"
        )


def _sampled_circle_moduli(q: Polynomial, samples: int):
    zs = np.exp(2j * np.pi * np.arange(samples) / samples)
    vals = np.zeros(samples, dtype=np.complex128)
    for c in reversed(q.coeffs):
        vals = vals * zs + c
    mods = np.abs(vals)
    return float(mods.min()), float(mods.max())


def _pad(q: Polynomial, samples: int):
    return q.lipschitz_on_disk() * (math.pi / samples)


def max_modulus_on_disk(q: Polynomial, samples: int = 4096) -> float:
    """Certified upper bound on max |q| over the closed unit disk."""
    if samples < 64:
        raise ValueError("samples must be >= 64")
    _, smax = _sampled_circle_moduli(q, samples)
    return smax + _pad(q, samples)


def min_modulus_on_disk(q: Polynomial, tol: float = 1e-12, samples: int = 4096) -> float:
    """Certified lower bound on min |q| over the closed unit disk.

    Zero once q has any root of modulus <= 1; otherwise the sampled circle
    minimum less the rigidity pad (clamped at 0).
    """
    if q.degree >= 1:
        rs = find_roots(q, tol)
        if np.any(np.abs(rs.points) <= 1.0):
            return 0.0
    smin, _ = _sampled_circle_moduli(q, samples)
    return max(0.0, smin - _pad(q, samples))


def circle_fixed_points(q: Polynomial, tol: float = 1e-6):
    """Fixed points of q lying within tol of the unit circle."""
    shifted = list(q.coeffs)
    while len(shifted) < 2:
        shifted.append(0j)
    shifted[1] -= 1
    g = Polynomial(shifted)
    if g.is_zero:
        raise ValueError("q(z) - z is identically zero")
    if g.degree < 1:
        return ()  # q(z) = z + c, c != 0: no fixed points at all
    rs = find_roots(g, 1e-12)
    keep = np.abs(np.abs(rs.points) - 1.0) < tol
    return tuple(complex(z) for z in rs.points[keep])


def _poly_orbit_escapes(q: Polynomial, z, radius, max_iter):
    r2 = radius * radius
    w = complex(z)
    for s in range(max_iter + 1):
        m2 = w.real * w.real + w.imag * w.imag
        if not (m2 <= r2):
            return True
        if s < max_iter:
            w = q(w)
    return False


def hyperbolicity_heuristic(q: Polynomial, p: EscapeParams, max_period: int = 64) -> Hyperbolicity:
    """LikelyHyperbolic if every critical orbit of q escapes or lands on an
    attracting cycle that keeps clear of the unit circle; else Unknown.

    Heuristic only: a cycle hugging the circle, an indifferent multiplier,
    or any detection failure all map to Unknown.
    """
    if q.degree < 2:
        raise DegreeTooLow("hyperbolicity heuristic needs degree >= 2")
    delta = p.band_delta if p.band_delta is not None else DEFAULT_BAND_DELTA
    radius = poly_escape_radius(q)
    crit = find_roots(q.derivative(), 1e-12)
    for c in crit.points:
        if _poly_orbit_escapes(q, c, radius, p.max_iter):
            continue
        try:
            cycle = detect_cycle_of_poly(q, complex(c), p, max_period)
        except (NoCycleFound, NewtonDivergence, NoConvergence):
            return Hyperbolicity.UNKNOWN
        if cycle.stability is not Stability.ATTRACTING:
            return Hyperbolicity.UNKNOWN
        if any(abs(abs(z) - 1.0) <= delta for z in cycle.points):
            return Hyperbolicity.UNKNOWN
    return Hyperbolicity.LIKELY


def classify_regime(
    q: Polynomial,
    p: EscapeParams | None = None,
    samples: int = 4096,
    fixed_tol: float = 1e-6,
) -> RegimeVerdict:
    """Decide the limit regime of q with one-sided certificates.

    DiskLimit / CircleLimit need the respective certificate strictly on the
    right side of 1 and no fixed point of q on the circle; the intermediate
    KInfinityCandidate regime needs the sampled maximum above 1 and the
    minimum certificate below 1.  Anything straddling 1 within its pad is
    Inconclusive rather than forced.
    """
    if q.degree < 2:
        raise DegreeTooLow("classification needs degree(q) >= 2")
    p = p or EscapeParams()
    smin, smax = _sampled_circle_moduli(q, samples)
    pad = _pad(q, samples)
    max_ub = smax + pad
    max_lb = smax
    rs = find_roots(q, 1e-12)
    root_in_disk = bool(np.any(np.abs(rs.points) <= 1.0))
    min_ub = 0.0 if root_in_disk else smin
    min_lb = 0.0 if root_in_disk else max(0.0, smin - pad)
    fixed = circle_fixed_points(q, fixed_tol)
    hyper = hyperbolicity_heuristic(q, p)

    def verdict(regime, margin):
        return RegimeVerdict(
            regime=regime,
            max_mod_on_circle=max_ub,
            min_mod_on_disk=min_lb,
            circle_fixed_points=fixed,
            hyperbolic=hyper,
            margin=margin,
        )

    if fixed:
        return verdict(Regime.INCONCLUSIVE, 0.0)
    if max_ub < 1.0:
        return verdict(Regime.DISK_LIMIT, 1.0 - max_ub)
    if min_lb > 1.0:
        return verdict(Regime.CIRCLE_LIMIT, min_lb - 1.0)
    if max_lb > 1.0 and min_ub < 1.0:
        return verdict(Regime.KINF_CANDIDATE, min(max_lb - 1.0, 1.0 - min_ub))
    return verdict(Regime.INCONCLUSIVE, 0.0)
