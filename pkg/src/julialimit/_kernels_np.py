"""Pure-numpy fallbacks for the hot kernels.

Kept operation-for-operation identical to the numba versions wherever the
result feeds a mask (escape steps, orbit codes, distance transforms), so
both backends produce the same labels bit for bit.  Vectorization replaces
the per-pixel loops with masked whole-array updates.
"""

import numpy as np

BIG = 1e30


def _cpow_vec(z, n):
    r = np.ones_like(z)
    b = z.copy()
    e = n
    while True:
        if e & 1:
            r = r * b
        e >>= 1
        if e == 0:
            break
        b = b * b
    return r


def _horner_vec(coeffs, z):
    acc = np.full_like(z, coeffs[-1])
    for k in range(len(coeffs) - 2, -1, -1):
        acc = acc * z + coeffs[k]
    return acc


def _pixel_grid(xs, ys):
    z = np.empty((ys.size, xs.size), np.complex128)
    z.real[:] = xs[None, :]
    z.imag[:] = ys[:, None]
    return z


def julia_escape_steps(xs, ys, coeffs, n, r2, max_iter):
    z = _pixel_grid(xs, ys).ravel()
    out = np.full(z.size, -1, np.int32)
    idx = np.arange(z.size)
    for s in range(max_iter + 1):
        m2 = z.real * z.real + z.imag * z.imag
        esc = ~(m2 <= r2)
        if esc.any():
            out[idx[esc]] = s
            keep = ~esc
            idx = idx[keep]
            z = z[keep]
            if idx.size == 0:
                break
        if s < max_iter:
            z = _cpow_vec(z, n) + _horner_vec(coeffs, z)
    return out.reshape(ys.size, xs.size)


def limit_orbit_codes(xs, ys, coeffs, kq_iter, lo2, hi2):
    w = _pixel_grid(xs, ys).ravel()
    out = np.full(w.size, -1, np.int32)
    idx = np.arange(w.size)
    for s in range(kq_iter + 1):
        m2 = w.real * w.real + w.imag * w.imag
        hit = ~(m2 < lo2)
        if hit.any():
            shell = hit & (m2 <= hi2)
            out[idx[shell]] = s
            out[idx[hit & ~shell]] = -2 - s
            keep = ~hit
            idx = idx[keep]
            w = w[keep]
            if idx.size == 0:
                break
        if s < kq_iter:
            w = _horner_vec(coeffs, w)
    return out.reshape(ys.size, xs.size)


def aberth_solve(coeffs, dcoeffs, x0, tol, max_sweeps):
    x = x0.copy()
    n = x.size
    corr = np.empty(n, np.float64)
    sweeps = 0
    for sweep in range(max_sweeps):
        sweeps = sweep + 1
        # p, p' at the sweep-start values; x[i] is untouched until its own
        # update, so this matches the in-loop evaluation of the serial form
        pv_all = _horner_vec(coeffs, x)
        dpv_all = _horner_vec(dcoeffs, x)
        for i in range(n):
            pv = pv_all[i]
            if pv == 0:
                corr[i] = 0.0
                continue
            d = x[i] - x
            d[i] = np.inf  # self-term contributes zero
            d[d == 0] = 1e-12
            s = np.sum(1.0 / d)
            denom = dpv_all[i] - pv * s
            if denom == 0:
                corr[i] = 1e-9 * (1.0 + abs(x[i]))
                x[i] = x[i] + corr[i]
            else:
                w = pv / denom
                x[i] = x[i] - w
                corr[i] = abs(w)
        if corr.max() <= tol:
            break
    return x, corr, sweeps


def edt_row_dist(src):
    rows, cols = src.shape
    j = np.arange(rows, dtype=np.float64)[:, None]
    src = src.astype(bool)
    up = np.where(src, j, -BIG)
    up = np.maximum.accumulate(up, axis=0)  # nearest source row above (or -BIG)
    down = np.where(src, j, BIG)
    down = np.minimum.accumulate(down[::-1], axis=0)[::-1]
    g = np.minimum(j - up, down - j)
    return np.minimum(g, BIG)


def edt_envelope(g2):
    rows, cols = g2.shape
    i = np.arange(cols, dtype=np.float64)
    sq = (i[:, None] - i[None, :]) ** 2  # (x, src) offsets, exact small ints
    d2 = np.empty_like(g2)
    for j in range(rows):
        d2[j] = np.min(g2[j][None, :] + sq, axis=1)
    return d2


def min_sq_dists(ax, ay, bx, by, chunk=1024, bchunk=4096):
    na = ax.size
    out = np.full(na, 1e300)
    for a0 in range(0, na, chunk):
        a1 = min(a0 + chunk, na)
        axc = ax[a0:a1, None]
        ayc = ay[a0:a1, None]
        best = np.full(a1 - a0, 1e300)
        for b0 in range(0, bx.size, bchunk):
            b1 = min(b0 + bchunk, bx.size)
            dx = axc - bx[None, b0:b1]
            dy = ayc - by[None, b0:b1]
            np.minimum(best, (dx * dx + dy * dy).min(axis=1), out=best)
        out[a0:a1] = best
    return out
