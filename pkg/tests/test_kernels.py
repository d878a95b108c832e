import os

import numpy as np
import pytest

import julialimit as jl
from julialimit import backend, kernels
from julialimit.poly import random_poly

from conftest import pair_dist


@pytest.fixture
def set_backend():
    old = os.environ.get("JULIA_LIMIT_BACKEND")

    def setter(name):
        os.environ["JULIA_LIMIT_BACKEND"] = name

    yield setter
    if old is None:
        os.environ.pop("JULIA_LIMIT_BACKEND", None)
    else:
        os.environ["JULIA_LIMIT_BACKEND"] = old


def both_backends(fn, set_backend):
    set_backend("numba")
    a = fn()
    set_backend("numpy")
    b = fn()
    return a, b


def test_env_flag_selects_backend(set_backend):
    set_backend("numpy")
    assert kernels.active_backend() == "numpy"
    set_backend("numba")
    assert kernels.active_backend() == "numba"
    set_backend("auto")
    assert kernels.active_backend() in ("numba", "numpy")


def test_env_flag_rejects_junk(set_backend):
    set_backend("cuda")
    with pytest.raises(ValueError):
        kernels.active_backend()


def test_thread_env_validation(monkeypatch):
    monkeypatch.setenv("JULIA_LIMIT_THREADS", "two")
    with pytest.raises(ValueError):
        backend.thread_count()
    monkeypatch.setenv("JULIA_LIMIT_THREADS", "-1")
    with pytest.raises(ValueError):
        backend.thread_count()
    monkeypatch.setenv("JULIA_LIMIT_THREADS", "3")
    assert backend.thread_count() == 3


def test_julia_labels_backend_bitequal(set_backend):
    q = jl.parse_poly("0.25+0.25i,0,1")
    grid = jl.GridSpec.from_window(-1.5, 1.5, -1.5, 1.5, 96)
    f = jl.PowerPolyMap(17, q)
    p = jl.EscapeParams(max_iter=150)
    a, b = both_backends(lambda: jl.rasterize_filled_julia(f, grid, p).labels,
                         set_backend)
    assert np.array_equal(a, b)


def test_limit_labels_backend_bitequal(set_backend):
    q = jl.parse_poly("-0.1+0.75i,0,1")
    grid = jl.GridSpec.from_window(-1.5, 1.5, -1.5, 1.5, 96)
    p = jl.EscapeParams(band_delta=0.02, kq_iter=80)
    a, b = both_backends(lambda: jl.rasterize_limit_set(q, grid, p).labels,
                         set_backend)
    assert np.array_equal(a, b)


def test_edt_backend_bitequal_on_square_pixels(set_backend):
    rng = np.random.default_rng(61)
    grid = jl.GridSpec.from_window(-1, 1, -1, 1, 80)
    src = np.zeros((80, 80), bool)
    src[rng.integers(0, 80, 25), rng.integers(0, 80, 25)] = True
    a, b = both_backends(lambda: jl.distance_transform(src, grid).dist,
                         set_backend)
    assert np.array_equal(a, b)


def test_min_dists_backend_bitequal(set_backend):
    rng = np.random.default_rng(62)
    pa = rng.standard_normal(500) + 1j * rng.standard_normal(500)
    pb = rng.standard_normal(700) + 1j * rng.standard_normal(700)
    a, b = both_backends(lambda: jl.metrics.min_dists_to(pa, pb), set_backend)
    assert np.array_equal(a, b)


def test_aberth_backend_agreement(set_backend):
    rng = np.random.default_rng(63)
    p = random_poly(rng, 24)
    a, b = both_backends(lambda: jl.find_roots(p).points, set_backend)
    assert pair_dist(a, b) < 1e-8
