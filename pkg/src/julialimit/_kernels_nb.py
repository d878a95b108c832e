"""Numba kernels for the grid and root-finding inner loops.

All kernels are compiled without fastmath so that per-element arithmetic is
the same sequence of IEEE operations as the numpy fallback; parallel loops
only ever write disjoint elements, so results are schedule-independent.
"""

import numpy as np
from numba import njit, prange

BIG = 1e30  # finite sentinel for "no source in this scan line"


@njit(cache=True)
def _cpow(z, n):
    # square-and-multiply, LSB first; n >= 1
    r = 1.0 + 0.0j
    b = z
    e = n
    while True:
        if e & 1:
            r = r * b
        e >>= 1
        if e == 0:
            break
        b = b * b
    return r


@njit(cache=True)
def _horner(coeffs, z):
    acc = coeffs[coeffs.shape[0] - 1]
    for k in range(coeffs.shape[0] - 2, -1, -1):
        acc = acc * z + coeffs[k]
    return acc


@njit(cache=True, parallel=True)
def julia_escape_steps(xs, ys, coeffs, n, r2, max_iter):
    """Escape step per pixel center for z -> z**n + q(z); -1 = bounded.

    Step s is the first index with |f^s(z)|^2 > r2 (checked before any
    iteration, so points already outside report step 0).  Non-finite
    iterates count as escaped at that step.
    """
    rows = ys.shape[0]
    cols = xs.shape[0]
    out = np.empty((rows, cols), np.int32)
    for j in prange(rows):
        y = ys[j]
        for i in range(cols):
            z = complex(xs[i], y)
            step = -1
            for s in range(max_iter + 1):
                m2 = z.real * z.real + z.imag * z.imag
                if not (m2 <= r2):  # catches overflow/NaN as escaped
                    step = s
                    break
                if s < max_iter:
                    z = _cpow(z, n) + _horner(coeffs, z)
            out[j, i] = step
    return out


@njit(cache=True, parallel=True)
def limit_orbit_codes(xs, ys, coeffs, kq_iter, lo2, hi2):
    """Orbit-of-q classification codes per pixel center.

    code >= 0 : first step s with |q^s(z)| >= 1-delta landing in the band
                (lo2/hi2 are the squared band edges) -> shell s
    code == -1: modulus stayed below 1-delta for the whole budget
    code <= -2: escaped at step (-2 - code) (band skipped in one step)
    """
    rows = ys.shape[0]
    cols = xs.shape[0]
    out = np.empty((rows, cols), np.int32)
    for j in prange(rows):
        y = ys[j]
        for i in range(cols):
            w = complex(xs[i], y)
            code = -1
            for s in range(kq_iter + 1):
                m2 = w.real * w.real + w.imag * w.imag
                if not (m2 < lo2):
                    if m2 <= hi2:
                        code = s
                    else:
                        code = -2 - s
                    break
                if s < kq_iter:
                    w = _horner(coeffs, w)
            out[j, i] = code
    return out


@njit(cache=True)
def aberth_solve(coeffs, dcoeffs, x0, tol, max_sweeps):
    """Gauss-Seidel Aberth iteration; returns (roots, last |correction|, sweeps)."""
    x = x0.copy()
    n = x.shape[0]
    corr = np.empty(n, np.float64)
    sweeps = 0
    for sweep in range(max_sweeps):
        sweeps = sweep + 1
        maxc = 0.0
        for i in range(n):
            xi = x[i]
            pv = _horner(coeffs, xi)
            if pv == 0:
                corr[i] = 0.0
                continue
            dpv = _horner(dcoeffs, xi)
            s = 0.0 + 0.0j
            for k in range(n):
                if k != i:
                    d = xi - x[k]
                    if d == 0:  # coincident iterates: large repulsion
                        d = 1e-12 + 0.0j
                    s += 1.0 / d
            denom = dpv - pv * s
            if denom == 0:
                x[i] = xi + 1e-9 * (1.0 + abs(xi))
                corr[i] = 1e-9 * (1.0 + abs(xi))
            else:
                w = pv / denom
                x[i] = xi - w
                corr[i] = abs(w)
            if corr[i] > maxc:
                maxc = corr[i]
        if maxc <= tol:
            break
    return x, corr, sweeps


@njit(cache=True, parallel=True)
def edt_row_dist(src):
    """Per column: distance (in row-index units) to the nearest source row."""
    rows, cols = src.shape
    g = np.empty((rows, cols), np.float64)
    for i in prange(cols):
        d = BIG
        for j in range(rows):
            if src[j, i]:
                d = 0.0
            elif d < BIG:
                d += 1.0
            g[j, i] = d
        d = BIG
        for j in range(rows - 1, -1, -1):
            if src[j, i]:
                d = 0.0
            elif d < BIG:
                d += 1.0
            if d < g[j, i]:
                g[j, i] = d
    return g


@njit(cache=True, parallel=True)
def edt_envelope(g2):
    """Lower-envelope pass over rows of squared distances; returns d^2.

    d2[j, x] = min_i (g2[j, i] + (x - i)^2), the standard two-pass exact
    Euclidean distance transform in (column-index)^2 units.
    """
    rows, cols = g2.shape
    d2 = np.empty((rows, cols), np.float64)
    for j in prange(rows):
        v = np.empty(cols, np.int64)
        z = np.empty(cols + 1, np.float64)
        k = 0
        v[0] = 0
        z[0] = -1e300
        z[1] = 1e300
        for q in range(1, cols):
            fq = g2[j, q] + q * q
            while True:
                p = v[k]
                s = (fq - (g2[j, p] + p * p)) / (2.0 * (q - p))
                if s <= z[k]:
                    k -= 1
                else:
                    break
            k += 1
            v[k] = q
            z[k] = s
            z[k + 1] = 1e300
        k = 0
        for x in range(cols):
            while z[k + 1] < x:
                k += 1
            dx = x - v[k]
            d2[j, x] = dx * dx + g2[j, v[k]]
    return d2


@njit(cache=True, parallel=True)
def min_sq_dists(ax, ay, bx, by):
    """Squared distance from each point of A to its nearest point of B."""
    na = ax.shape[0]
    nb = bx.shape[0]
    out = np.empty(na, np.float64)
    for i in prange(na):
        xi = ax[i]
        yi = ay[i]
        best = 1e300
        for k in range(nb):
            dx = xi - bx[k]
            dy = yi - by[k]
            d = dx * dx + dy * dy
            if d < best:
                best = d
        out[i] = best
    return out
