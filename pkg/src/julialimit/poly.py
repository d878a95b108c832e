"""Complex polynomials and the map family z -> z**n + q(z).

Coefficients are stored low-to-high: coeffs[i] multiplies z**i.  Evaluation
is Horner's scheme; z**n uses binary exponentiation so rounding grows like
log(n) rather than n.  All public values are finite; NaN/Inf coefficients
are rejected at construction.

Text encoding (CLI and config files): comma-separated complex coefficients
low-to-high, each written as `a`, `bi`, or `a+bi`/`a-bi`.  Example:
`0.25+0.25i,0,1` is z^2 + 0.25+0.25i.
"""

import cmath
import math
import re
from dataclasses import dataclass

import numpy as np


def cpow(z, n):
    """z**n by square-and-multiply (n >= 0); same op order as the kernels."""
    if n == 0:
        return 1.0 + 0.0j
    r = 1.0 + 0.0j
    b = complex(z)
    e = n
    while True:
        if e & 1:
            r = r * b
        e >>= 1
        if e == 0:
            break
        b = b * b
    return r


class Polynomial:
    """Immutable complex polynomial, coefficients ordered degree-0 upward."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [complex(c) for c in coeffs]
        if not cs:
            cs = [0j]
        for c in cs:
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError(f"non-finite coefficient {c!r}")
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def degree(self):
        # the zero polynomial reports degree 0 (single stored coefficient)
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def __call__(self, z):
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * z + c
        return acc

    def derivative(self):
        if self.degree == 0:
            return Polynomial([0j])
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def coeff_abs_sum(self):
        """M = sum |a_i|; bounds |q(z)| <= M * |z|**degree for |z| >= 1."""
        return sum(abs(c) for c in self.coeffs)

    def lipschitz_on_disk(self):
        """L = sum i*|a_i|; bounds |q'| on the closed unit disk."""
        return sum(k * abs(c) for k, c in enumerate(self.coeffs))

    def as_array(self):
        return np.asarray(self.coeffs, dtype=np.complex128)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


@dataclass(frozen=True)
class PowerPolyMap:
    """The map f(z) = z**n + q(z) with n strictly above the degree of q."""

    n: int
    q: Polynomial

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("power n must be a positive integer")
        if self.n <= self.q.degree and not self.q.is_zero:
            raise ValueError(
                f"need n > degree(q): n={self.n}, degree(q)={self.q.degree}"
            )

    def __call__(self, z):
        return cpow(z, self.n) + self.q(z)

    def derivative_at(self, z):
        return self.n * cpow(z, self.n - 1) + self.q.derivative()(z)

    def fixed_point_poly(self):
        """g(z) = z**n + q(z) - z, whose roots are the fixed points; degree n."""
        cs = [0j] * (self.n + 1)
        for k, c in enumerate(self.q.coeffs):
            cs[k] = c
        cs[1] -= 1
        cs[self.n] += 1
        return Polynomial(cs)

    def as_polynomial(self):
        """Full expansion of f as a Polynomial (n > degree(q), so exact)."""
        cs = [0j] * (self.n + 1)
        for k, c in enumerate(self.q.coeffs):
            cs[k] = c
        cs[self.n] += 1
        return Polynomial(cs)


_BARE_I = re.compile(r"(?<![0-9.])j")


def parse_complex(text):
    """Parse one coefficient token: `a`, `bi`, `a+bi`, `a-bi` (also bare `i`)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex literal")
    s = s.replace("i", "j").replace("I", "j")
    s = _BARE_I.sub("1j", s)
    try:
        z = complex(s)
    except ValueError:
        raise ValueError(f"bad complex literal {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex literal {text!r}")
    return z


def format_complex(z):
    """Inverse of parse_complex; repr-precision, so round-trips exactly."""
    z = complex(z)
    re_s = repr(z.real + 0.0)  # +0.0 folds -0.0 into 0.0
    im = z.imag + 0.0
    if im == 0:
        return re_s
    im_s = repr(abs(im)) + "i"
    if z.real == 0:
        return ("-" if im < 0 else "") + im_s
    return re_s + ("-" if im < 0 else "+") + im_s


def parse_poly(text):
    """Parse the comma-separated low-to-high coefficient encoding."""
    tokens = text.split(",")
    return Polynomial([parse_complex(t) for t in tokens])


def format_poly(p):
    return ",".join(format_complex(c) for c in p.coeffs)


def naive_eval(p, z):
    """Power-sum evaluation, the independent oracle for Horner."""
    return sum(c * cpow(z, k) for k, c in enumerate(p.coeffs))


def random_poly(rng, degree, coeff_modulus=2.0):
    """Random polynomial of exactly the given degree (test/property helper)."""
    coeffs = []
    for k in range(degree + 1):
        r = rng.uniform(0.0, coeff_modulus)
        if k == degree:
            r = rng.uniform(0.5, coeff_modulus)  # keep the degree honest
        theta = rng.uniform(0.0, 2.0 * math.pi)
        coeffs.append(r * cmath.exp(1j * theta))
    return Polynomial(coeffs)
