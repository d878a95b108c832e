"""Orbit primitives: escape certificates, orbit classification, cycles.

The escape radius R = max(2, (2(M+1))**(1/(n-d))) with M = sum |a_i| is a
computable constant with the property that |f(z)| >= 2|z| once |z| >= R
(for d >= 1; for constant q the growth certificate still forces escape),
so a single threshold crossing certifies divergence.

Orbit classification under q drives the limit-set raster: an orbit that
never reaches modulus 1-delta within the budget counts as staying interior;
the first entry into the band [1-delta, 1+delta] marks a shell crossing;
jumping past the band counts as escape.  The band is a raster-thickness
device, not a claim about the underlying curves.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum

from .errors import NewtonDivergence, NoCycleFound
from .poly import Polynomial, PowerPolyMap

NEWTON_RESIDUAL = 1e-12
NEWTON_MAX_STEPS = 60
RETURN_TOL = 1e-6
STABILITY_MARGIN = 1e-9
DISTINCT_TOL = 1e-9


@dataclass(frozen=True)
class EscapeParams:
    """Iteration budgets and thresholds shared by the orbit operations.

    escape_radius=None means "derive from the map at the point of use";
    band_delta=None means "use the caller's context default" (0.01 for
    scalar classification, two pixel diagonals for rasters).
    """

    max_iter: int = 500
    escape_radius: float | None = None
    band_delta: float | None = None
    kq_iter: int = 200

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if self.kq_iter < 1:
            raise ValueError("kq_iter must be positive")
        if self.escape_radius is not None and not self.escape_radius > 1:
            raise ValueError("escape_radius must exceed 1")
        if self.band_delta is not None and not 0 < self.band_delta < 0.5:
            raise ValueError("band_delta must lie in (0, 0.5)")

    def with_radius_for(self, f: PowerPolyMap):
        if self.escape_radius is not None:
            return self
        return replace(self, escape_radius=escape_radius(f))


DEFAULT_BAND_DELTA = 0.01


class OrbitKind(Enum):
    INTERIOR = "interior"      # whole budgeted orbit stayed below 1-delta
    SHELL = "shell"            # first band entry at step j
    ESCAPED = "escaped"        # jumped past the band / left the radius
    UNDETERMINED = "undetermined"  # reserved for re-classifying callers


@dataclass(frozen=True)
class OrbitClass:
    kind: OrbitKind
    step: int = -1  # shell index or escape step; -1 for INTERIOR


class Stability(Enum):
    ATTRACTING = "Attracting"
    REPELLING = "Repelling"
    INDIFFERENT = "Indifferent"


@dataclass(frozen=True)
class CycleInfo:
    period: int
    points: tuple          # orbit order
    multiplier: complex
    stability: Stability
    max_seed_displacement: float = 0.0  # refinement distance (0 for detection)


def _stability_of(multiplier):
    lam = abs(multiplier)
    if lam < 1.0 - STABILITY_MARGIN:
        return Stability.ATTRACTING
    if lam > 1.0 + STABILITY_MARGIN:
        return Stability.REPELLING
    return Stability.INDIFFERENT


def escape_radius(f: PowerPolyMap) -> float:
    """Certified escape radius for f(z) = z**n + q(z)."""
    m = f.q.coeff_abs_sum()
    d = f.q.degree
    return max(2.0, (2.0 * (m + 1.0)) ** (1.0 / (f.n - d)))


def poly_escape_radius(q: Polynomial) -> float:
    """Escape radius for iterating q itself: |q(z)| >= 2|z| once |z| >= R.

    Needs degree >= 2 (a linear map cannot certify doubling): for |z| >= 1,
    |q(z)| >= |z|^(d-2) * (|a_d| |z| - sum of the lower |a_i|).
    """
    if q.degree < 2:
        raise ValueError("poly_escape_radius needs degree >= 2")
    lead = abs(q.coeffs[-1])
    rest = q.coeff_abs_sum() - lead
    return max(2.0, (rest + 2.0) / lead)


def escape_time(f: PowerPolyMap, z, p: EscapeParams):
    """(escaped, step): step is the first index with |f^step(z)| > radius.

    Returns (False, -1) if the orbit stays within the radius for the whole
    budget.  Overflow or NaN during iteration counts as escape at that step.
    """
    p = p.with_radius_for(f)
    r2 = p.escape_radius * p.escape_radius
    w = complex(z)
    for s in range(p.max_iter + 1):
        m2 = w.real * w.real + w.imag * w.imag
        if not (m2 <= r2):
            return True, s
        if s < p.max_iter:
            w = f(w)
    return False, -1


def classify_orbit(q: Polynomial, z, p: EscapeParams) -> OrbitClass:
    """Classify z by its orbit under q relative to the unit circle band."""
    delta = p.band_delta if p.band_delta is not None else DEFAULT_BAND_DELTA
    lo2 = (1.0 - delta) ** 2
    hi2 = (1.0 + delta) ** 2
    w = complex(z)
    for s in range(p.kq_iter + 1):
        m2 = w.real * w.real + w.imag * w.imag
        if not (m2 < lo2):
            if m2 <= hi2:
                return OrbitClass(OrbitKind.SHELL, s)
            return OrbitClass(OrbitKind.ESCAPED, s)
        if s < p.kq_iter:
            w = q(w)
    return OrbitClass(OrbitKind.INTERIOR)


def orbit_deviation(q: Polynomial, f: PowerPolyMap, z, m: int) -> float:
    """max over 0 <= i <= m of |f^i(z) - q^i(z)| (inf if either blows up)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    wq = wf = complex(z)
    worst = 0.0
    for i in range(m + 1):
        d = abs(wf - wq)
        if not math.isfinite(d):
            return math.inf
        worst = max(worst, d)
        if i < m:
            wq = q(wq)
            wf = f(wf)
    return worst


def _orbit_and_multiplier(map_eval, map_deriv, z, k):
    """One loop of length k: returns (endpoint, derivative product)."""
    w = complex(z)
    dp = 1.0 + 0.0j
    for _ in range(k):
        dp = dp * map_deriv(w)
        w = map_eval(w)
    return w, dp


def _newton_periodic(map_eval, map_deriv, z0, k):
    """Newton on F(z) = map^k(z) - z down to |F| < NEWTON_RESIDUAL."""
    z = complex(z0)
    for _ in range(NEWTON_MAX_STEPS):
        w, dp = _orbit_and_multiplier(map_eval, map_deriv, z, k)
        fval = w - z
        if not (math.isfinite(fval.real) and math.isfinite(fval.imag)):
            raise NewtonDivergence("non-finite Newton iterate")
        if abs(fval) < NEWTON_RESIDUAL:
            return z
        fderiv = dp - 1.0
        if fderiv == 0:
            raise NewtonDivergence("vanishing derivative in Newton step")
        z = z - fval / fderiv
    raise NewtonDivergence(f"no Newton convergence within {NEWTON_MAX_STEPS} steps")


def _minimal_period(map_eval, z, k):
    for d in range(1, k):
        if k % d:
            continue
        w = complex(z)
        for _ in range(d):
            w = map_eval(w)
        if abs(w - z) <= DISTINCT_TOL:
            return d
    return k


def _cycle_from_point(map_eval, map_deriv, z, k):
    k = _minimal_period(map_eval, z, k)
    points = []
    w = complex(z)
    lam = 1.0 + 0.0j
    for _ in range(k):
        points.append(w)
        lam = lam * map_deriv(w)
        w = map_eval(w)
    return points, lam


def detect_cycle(map_eval, map_deriv, z0, p: EscapeParams, max_period: int) -> CycleInfo:
    """Find the attracting/periodic behaviour of the orbit of z0.

    Burns in p.max_iter steps, scans the next max_period iterates for a
    return to within RETURN_TOL of the burn-in endpoint, then polishes the
    candidate with Newton on map^k(z) - z and reduces to the fundamental
    period.  The escape radius must be set by the caller (cycle detection
    is map-agnostic, so there is nothing to derive it from).
    """
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    if p.escape_radius is None:
        raise ValueError("detect_cycle needs an explicit escape_radius")
    r2 = p.escape_radius * p.escape_radius
    w = complex(z0)
    for _ in range(p.max_iter):
        m2 = w.real * w.real + w.imag * w.imag
        if not (m2 <= r2):
            raise NoCycleFound("orbit escaped during burn-in")
        w = map_eval(w)
    anchor = w
    period = 0
    for k in range(1, max_period + 1):
        m2 = w.real * w.real + w.imag * w.imag
        if not (m2 <= r2):
            raise NoCycleFound("orbit escaped during the period scan")
        w = map_eval(w)
        if abs(w - anchor) < RETURN_TOL:
            period = k
            break
    if period == 0:
        raise NoCycleFound(f"no return within {max_period} steps of the endpoint")
    z = _newton_periodic(map_eval, map_deriv, anchor, period)
    points, lam = _cycle_from_point(map_eval, map_deriv, z, period)
    return CycleInfo(
        period=len(points),
        points=tuple(points),
        multiplier=lam,
        stability=_stability_of(lam),
    )


def detect_cycle_of_poly(q: Polynomial, z0, p: EscapeParams, max_period: int) -> CycleInfo:
    if p.escape_radius is None:
        p = replace(p, escape_radius=poly_escape_radius(q))
    dq = q.derivative()
    return detect_cycle(q, dq, z0, p, max_period)


def refine_cycle_under_map(cycle: CycleInfo, f: PowerPolyMap) -> CycleInfo:
    """Continue a cycle of q to a cycle of f(z) = z**n + q(z) of equal period.

    Meaningful when the source cycle lies inside the open unit disk, where
    z**n is a small perturbation of q for large n; a cycle that touches the
    unit circle has no persistence guarantee and refinement will typically
    drift or report a non-matching orbit.  Indifferent cycles are rejected.

    Each cycle point seeds a Newton solve of f^k(z) = z; the results must
    chain into one orbit of the same period and stay within half the minimum
    gap of the source cycle, else NewtonDivergence (for small n this is the
    expected "n not large enough" signal).
    """
    if cycle.stability is Stability.INDIFFERENT:
        raise ValueError("refinement needs an attracting or repelling cycle")
    k = cycle.period
    fd = f.derivative_at
    refined = [_newton_periodic(f, fd, z, k) for z in cycle.points]
    # the refined points must be the same orbit, in the same order
    for i in range(k):
        succ = f(refined[i])
        if abs(succ - refined[(i + 1) % k]) > RETURN_TOL:
            raise NewtonDivergence(
                "refined points do not form a single period-"
                f"{k} orbit of the perturbed map"
            )
    displacement = max(abs(a - b) for a, b in zip(cycle.points, refined))
    if k > 1:
        min_gap = min(
            abs(a - b) for i, a in enumerate(cycle.points)
            for b in cycle.points[i + 1:]
        )
        if displacement >= 0.5 * min_gap:
            raise NewtonDivergence(
                f"refined cycle drifted {displacement:.3g}, more than half the "
                f"minimum source gap {min_gap:.3g}"
            )
        for i, a in enumerate(refined):
            for b in refined[i + 1:]:
                if abs(a - b) <= DISTINCT_TOL:
                    raise NewtonDivergence("refined cycle collapsed to lower period")
    lam = 1.0 + 0.0j
    for z in refined:
        lam = lam * fd(z)
    return CycleInfo(
        period=k,
        points=tuple(refined),
        multiplier=lam,
        stability=_stability_of(lam),
        max_seed_displacement=displacement,
    )
