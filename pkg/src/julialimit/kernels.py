"""Backend dispatch for the hot kernels (see backend.py for the env flags)."""

from . import backend
from . import _kernels_np


def _module():
    if backend.backend_name() == "numba":
        from . import _kernels_nb

        backend.apply_thread_limit()
        return _kernels_nb
    return _kernels_np


def active_backend():
    return backend.backend_name()


def julia_escape_steps(xs, ys, coeffs, n, r2, max_iter):
    return _module().julia_escape_steps(xs, ys, coeffs, n, r2, max_iter)


def limit_orbit_codes(xs, ys, coeffs, kq_iter, lo2, hi2):
    return _module().limit_orbit_codes(xs, ys, coeffs, kq_iter, lo2, hi2)


def aberth_solve(coeffs, dcoeffs, x0, tol, max_sweeps):
    return _module().aberth_solve(coeffs, dcoeffs, x0, tol, max_sweeps)


def edt_row_dist(src):
    return _module().edt_row_dist(src)


def edt_envelope(g2):
    return _module().edt_envelope(g2)


def min_sq_dists(ax, ay, bx, by):
    return _module().min_sq_dists(ax, ay, bx, by)
