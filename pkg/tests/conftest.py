import numpy as np
import pytest

import julialimit as jl


def hexagon_samples(count, r=1.0):
    """count points on a regular hexagon with side r (vertices on |z| = r)."""
    verts = r * np.exp(1j * np.pi * np.arange(7) / 3)
    per_side = count // 6
    extra = count - per_side * 6
    pts = []
    for s in range(6):
        k = per_side + (1 if s < extra else 0)
        t = np.arange(k) / k
        pts.append(verts[s] + t * (verts[s + 1] - verts[s]))
    return np.concatenate(pts)


def pair_dist(a, b):
    """Max distance under the minimal-cost pairing of two equal-size sets."""
    from scipy.optimize import linear_sum_assignment

    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    assert a.size == b.size
    cost = np.abs(a[:, None] - b[None, :])
    ri, ci = linear_sum_assignment(cost)
    return float(cost[ri, ci].max())


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile/cache every kernel once so timed tests measure the algorithms."""
    q = jl.parse_poly("0.1,0,1")
    grid = jl.GridSpec.from_window(-1.5, 1.5, -1.5, 1.5, 16)
    p = jl.EscapeParams(max_iter=10)
    jl.rasterize_filled_julia(jl.PowerPolyMap(5, q), grid, p)
    jl.rasterize_limit_set(q, grid, p)
    jl.find_roots(jl.Polynomial([-1, 0, 1]))
    src = np.zeros((16, 16), bool)
    src[3, 4] = True
    jl.distance_transform(src, grid)
    jl.hausdorff_points(np.array([0j, 1j]), np.array([1 + 0j]))
