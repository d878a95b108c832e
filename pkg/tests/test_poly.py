import numpy as np
import pytest

import julialimit as jl
from julialimit.poly import naive_eval, random_poly


def test_eval_constant_term():
    q = jl.parse_poly("0.25+0.25i,0,1")
    assert q(0j) == 0.25 + 0.25j


def test_eval_zero_poly():
    q = jl.Polynomial([0])
    assert q(7 + 2j) == 0
    assert q.is_zero and q.degree == 0


def test_horner_matches_naive_powersum():
    rng = np.random.default_rng(42)
    for _ in range(50):
        deg = int(rng.integers(1, 65))
        p = random_poly(rng, deg)
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        a = p(z)
        b = naive_eval(p, z)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(b))


def test_trailing_zero_coefficients_are_stripped():
    p = jl.Polynomial([1, 0, 0])
    assert p.degree == 0
    assert p.coeffs == (1 + 0j,)


def test_nonfinite_coefficients_rejected():
    with pytest.raises(ValueError):
        jl.Polynomial([float("nan")])
    with pytest.raises(ValueError):
        jl.Polynomial([complex(0, float("inf"))])


def test_eval_map_squaring():
    f = jl.PowerPolyMap(2, jl.Polynomial([0]))
    assert f(1 + 1j) == 2j


def test_eval_map_zero_base():
    c = 0.25 + 0.25j
    f = jl.PowerPolyMap(200, jl.Polynomial([c]))
    assert f(0j) == c


def test_eval_map_direct_arithmetic():
    f = jl.PowerPolyMap(5, jl.parse_poly("0.1,0,1"))
    expected = 0.3 ** 5 + 0.3 ** 2 + 0.1
    assert abs(f(0.3) - expected) < 1e-15


def test_eval_map_matches_expanded_polynomial():
    rng = np.random.default_rng(7)
    for _ in range(30):
        deg = int(rng.integers(0, 5))
        q = random_poly(rng, deg)
        n = int(rng.integers(deg + 1, 33))
        f = jl.PowerPolyMap(n, q)
        full = f.as_polynomial()
        z = complex(rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2))
        a, b = f(z), full(z)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(b))


def test_map_requires_n_above_degree():
    with pytest.raises(ValueError):
        jl.PowerPolyMap(2, jl.parse_poly("0,0,1"))
    with pytest.raises(ValueError):
        jl.PowerPolyMap(0, jl.Polynomial([0]))


def test_derivative_simple():
    q = jl.parse_poly("0.5,0,1")  # z^2 + 0.5
    assert q.derivative().coeffs == (0j, 2 + 0j)
    assert jl.Polynomial([3]).derivative().is_zero


def test_map_derivative_value():
    f = jl.PowerPolyMap(3, jl.Polynomial([0]))
    assert f.derivative_at(2.0) == 12.0  # 3 z^2


def test_map_derivative_matches_finite_difference():
    rng = np.random.default_rng(3)
    h = 1e-6
    for _ in range(20):
        q = random_poly(rng, int(rng.integers(0, 4)))
        n = int(rng.integers(q.degree + 1, 20))
        f = jl.PowerPolyMap(n, q)
        z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        fd = (f(z + h) - f(z - h)) / (2 * h)
        an = f.derivative_at(z)
        assert abs(fd - an) <= 1e-5 * max(1.0, abs(an))


def test_fixed_point_poly_shapes():
    f = jl.PowerPolyMap(5, jl.Polynomial([0]))
    assert f.fixed_point_poly().coeffs == (0j, -1 + 0j, 0j, 0j, 0j, 1 + 0j)
    # the -z and +z cancel when q(z) = z
    g = jl.PowerPolyMap(3, jl.parse_poly("0,1")).fixed_point_poly()
    assert g.coeffs == (0j, 0j, 0j, 1 + 0j)
    c = 0.3 - 0.2j
    h = jl.PowerPolyMap(4, jl.Polynomial([c, 0, 0.5])).fixed_point_poly()
    assert h.coeffs == (c, -1 + 0j, 0.5 + 0j, 0j, 1 + 0j)


def test_fixed_point_poly_degree_is_n():
    rng = np.random.default_rng(5)
    for _ in range(20):
        q = random_poly(rng, int(rng.integers(0, 6)))
        n = int(rng.integers(max(q.degree + 1, 2), 40))
        assert jl.PowerPolyMap(n, q).fixed_point_poly().degree == n


@pytest.mark.parametrize(
    "text,value",
    [
        ("1.5", 1.5 + 0j),
        ("2i", 2j),
        ("-i", -1j),
        ("i", 1j),
        ("1+i", 1 + 1j),
        ("0.25-0.25i", 0.25 - 0.25j),
        (" 1 - 2 i ", 1 - 2j),
        ("1e-3i", 1e-3j),
    ],
)
def test_parse_complex_forms(text, value):
    assert jl.parse_complex(text) == value


def test_parse_complex_rejects_junk():
    for bad in ("", "oops", "1+", "nan", "infi"):
        with pytest.raises(ValueError):
            jl.parse_complex(bad)


def test_poly_text_roundtrip_exact():
    rng = np.random.default_rng(9)
    for _ in range(25):
        p = random_poly(rng, int(rng.integers(0, 7)))
        again = jl.parse_poly(jl.format_poly(p))
        assert again == p  # repr-precision text is value-exact


def test_parse_poly_example():
    p = jl.parse_poly("0.25+0.25i,0,1")
    assert p.degree == 2
    assert p.coeffs[0] == 0.25 + 0.25j


def test_cpow_binary_exponentiation():
    z = 0.7 - 0.3j
    for n in (1, 2, 3, 7, 31, 200):
        direct = 1 + 0j
        for _ in range(n):
            direct *= z
        assert abs(jl.cpow(z, n) - direct) <= 1e-13 * abs(direct)
