import cmath
import math

import numpy as np
import pytest

import julialimit as jl
from julialimit.classify import Hyperbolicity, Regime, _pad
from julialimit.errors import DegreeTooLow
from julialimit.poly import random_poly

C1 = 0.21 + 0.017j
C2 = 0.41 + 0.047j
C3 = 1.41 + 1.17j


def qc(c):
    return jl.Polynomial([c, 0, 0.75])


def test_max_modulus_square():
    q = jl.parse_poly("0,0,1")
    ub = jl.max_modulus_on_disk(q)
    assert 1.0 <= ub <= 1.0 + _pad(q, 4096) + 1e-12


def test_max_modulus_constant_exact():
    assert jl.max_modulus_on_disk(jl.Polynomial([0.3 - 0.4j])) == 0.5


def test_max_modulus_disk_case_value():
    q = qc(C1)
    ub = jl.max_modulus_on_disk(q)
    true_max = 0.75 + abs(C1)
    assert true_max <= ub <= true_max + 2 * _pad(q, 4096)
    assert ub < 1.0


def test_min_modulus_with_root_in_disk():
    assert jl.min_modulus_on_disk(jl.parse_poly("0,0,1")) == 0.0


def test_min_modulus_circle_case_value():
    q = qc(C3)
    lb = jl.min_modulus_on_disk(q)
    true_min = abs(C3) - 0.75
    assert true_min - 2 * _pad(q, 4096) <= lb <= true_min
    assert lb > 1.0


def test_min_modulus_shifted_linear():
    q = jl.parse_poly("2,1")  # z + 2, min at z = -1
    lb = jl.min_modulus_on_disk(q)
    assert abs(lb - 1.0) <= 2 * _pad(q, 4096)


def test_certificates_one_sided_against_dense_scan():
    rng = np.random.default_rng(51)
    zs = np.exp(2j * np.pi * np.arange(1_000_000) / 1_000_000)
    for _ in range(5):
        q = random_poly(rng, int(rng.integers(2, 5)))
        vals = np.zeros_like(zs)
        for c in reversed(q.coeffs):
            vals = vals * zs + c
        mods = np.abs(vals)
        assert jl.max_modulus_on_disk(q) >= mods.max() - 1e-12
        has_root_in_disk = np.any(np.abs(jl.find_roots(q).points) <= 1.0)
        lb = jl.min_modulus_on_disk(q)
        if has_root_in_disk:
            assert lb == 0.0
        else:
            assert lb <= mods.min() + 1e-12


def test_circle_fixed_points_square():
    pts = jl.circle_fixed_points(jl.parse_poly("0,0,1"))
    assert len(pts) == 1 and abs(pts[0] - 1.0) < 1e-9


def test_circle_fixed_points_constant():
    assert jl.circle_fixed_points(jl.Polynomial([0.5])) == ()


def test_circle_fixed_points_quadratic_formula_oracle():
    q = qc(C2)
    # fixed points solve 0.75 z^2 - z + c2 = 0
    disc = cmath.sqrt(1 - 4 * 0.75 * C2)
    r1 = (1 + disc) / 1.5
    r2 = (1 - disc) / 1.5
    assert min(abs(abs(r) - 1) for r in (r1, r2)) > 0.05
    assert jl.circle_fixed_points(q) == ()


def test_hyperbolicity_square():
    assert jl.hyperbolicity_heuristic(jl.parse_poly("0,0,1"),
                                      jl.EscapeParams()) is Hyperbolicity.LIKELY


def test_hyperbolicity_parabolic_unknown():
    assert jl.hyperbolicity_heuristic(jl.parse_poly("0.25,0,1"),
                                      jl.EscapeParams()) is Hyperbolicity.UNKNOWN


def test_hyperbolicity_rabbit_like():
    q = jl.parse_poly("-0.1+0.75i,0,1")
    assert jl.hyperbolicity_heuristic(q, jl.EscapeParams()) is Hyperbolicity.LIKELY
    cyc = jl.detect_cycle_of_poly(q, 0j, jl.EscapeParams(), 16)
    assert cyc.period == 3  # the attracting cycle behind the verdict


def test_classify_three_regimes():
    assert jl.classify_regime(qc(C1)).regime is Regime.DISK_LIMIT
    assert jl.classify_regime(qc(C2)).regime is Regime.KINF_CANDIDATE
    assert jl.classify_regime(qc(C3)).regime is Regime.CIRCLE_LIMIT


def test_classify_margins_positive():
    for c in (C1, C2, C3):
        v = jl.classify_regime(qc(c))
        assert v.margin > 0
        assert v.circle_fixed_points == ()


def test_classify_regime_invariants():
    v1 = jl.classify_regime(qc(C1))
    assert v1.max_mod_on_circle <= 1 - v1.margin + 1e-12
    v3 = jl.classify_regime(qc(C3))
    assert v3.min_mod_on_disk >= 1 + v3.margin - 1e-12


def test_classify_inconclusive_on_circle_fixed_point():
    v = jl.classify_regime(jl.parse_poly("0,0,1"))  # fixed point at z = 1
    assert v.regime is Regime.INCONCLUSIVE
    assert len(v.circle_fixed_points) == 1


def test_classify_degree_too_low():
    with pytest.raises(DegreeTooLow):
        jl.classify_regime(jl.parse_poly("0.5,1"))


def test_rotation_equivariance():
    rng = np.random.default_rng(53)
    for c in (C1, C2, C3):
        q = qc(c)
        base = jl.classify_regime(q).regime
        theta = rng.uniform(0, 2 * math.pi)
        rotated = jl.Polynomial([
            a * cmath.exp(1j * (k - 1) * theta) for k, a in enumerate(q.coeffs)
        ])
        assert jl.classify_regime(rotated).regime is base


def test_record_line_format():
    line = jl.classify_regime(qc(C2)).record_line()
    assert line.startswith("regime=KInfinityCandidate ")
    for key in ("max_circle=", "min_disk=", "circle_fixed=", "hyperbolic=", "margin="):
        assert key in line
