"""Exact integer polynomial calculus for the Chebyshev character ladder.

Everything here is exact: coefficients are Python ints (or Fractions after
a division), so recursion and fusion identities can be asserted bit-for-bit.
Floating point enters only through the stable value recursions at the bottom
of the module, which are what the numeric layers should call.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np


@dataclass(frozen=True)
class IntPolynomial:
    """Dense polynomial with exact coefficients, ascending order."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(tuple(out))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + IntPolynomial(tuple(-c for c in other.coeffs))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self or not other:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def scale(self, factor) -> "IntPolynomial":
        return IntPolynomial(tuple(factor * c for c in self.coeffs))

    def compose(self, inner: "IntPolynomial") -> "IntPolynomial":
        """self(inner(x)), exact (Horner in the polynomial ring)."""
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * inner + IntPolynomial((c,))
        return acc

    def __call__(self, x):
        return eval_poly(self, x)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "IntPolynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return "IntPolynomial(" + " + ".join(terms) + ")"


ZERO = IntPolynomial(())
ONE = IntPolynomial((1,))
X = IntPolynomial((0, 1))

_cache_lock = threading.Lock()
_cheb_cache: list[IntPolynomial] = [ONE, X]
_pi_cache: list[IntPolynomial] = [ONE, IntPolynomial((-1, 1))]


def cheb_s(k: int) -> IntPolynomial:
    """Chebyshev polynomial of the second kind on [-2, 2].

    S_0 = 1, S_1 = x, S_{k+1} = x*S_k - S_{k-1}; satisfies
    S_k(2 cos t) = sin((k+1)t)/sin(t).
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k >= len(_cheb_cache):
        with _cache_lock:
            while k >= len(_cheb_cache):
                _cheb_cache.append(X * _cheb_cache[-1] - _cheb_cache[-2])
    return _cheb_cache[k]


def pi_poly(k: int) -> IntPolynomial:
    """Degree-k character polynomial P with P(x) = S_{2k}(sqrt(x)).

    Well defined because S_{2k} is even.  Built from the equivalent
    recursion P_{k+1} = (x - 2) P_k - P_{k-1}, P_0 = 1, P_1 = x - 1.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k >= len(_pi_cache):
        shift = IntPolynomial((-2, 1))
        with _cache_lock:
            while k >= len(_pi_cache):
                _pi_cache.append(shift * _pi_cache[-1] - _pi_cache[-2])
    return _pi_cache[k]


def eval_poly(p: IntPolynomial, x):
    """Horner evaluation; exact whenever x is an int or Fraction.

    For float x this is only safe at modest degree: the monomial basis has
    huge cancellation for high-degree Chebyshev polynomials, so numeric
    callers should prefer cheb_s_at / char_poly_at below.
    """
    acc = 0 * x if not isinstance(x, (int, Rational)) else 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def derivative(p: IntPolynomial) -> IntPolynomial:
    """Formal derivative, exact."""
    return IntPolynomial(tuple(i * c for i, c in enumerate(p.coeffs) if i > 0))


def difference_quotient(p: IntPolynomial, n) -> IntPolynomial:
    """Exact polynomial q with q(x) = (p(x) - p(n)) / (n - x) for x != n.

    Synthetic division of p(x) - p(n) by (x - n), then negated; degree drops
    by one.  Exact for int or Fraction n (Fractions propagate into the
    coefficients).
    """
    if p.degree <= 0:
        return ZERO
    # synthetic division: p(x) = (x - n) r(x) + p(n)
    rev = list(reversed(p.coeffs))
    quotient = [rev[0]]
    for c in rev[1:-1]:
        quotient.append(c + n * quotient[-1])
    return IntPolynomial(tuple(-c for c in reversed(quotient)))


def fusion_range(k: int, s: int) -> tuple[int, ...]:
    """Levels appearing in the product of levels k and s: |k-s| .. k+s.

    Each level occurs with multiplicity one, and the exact identity
    pi_poly(k) * pi_poly(s) = sum of pi_poly(j) over this range holds.
    """
    if k < 0 or s < 0:
        raise ValueError("levels must be nonnegative")
    return tuple(range(abs(k - s), k + s + 1))


# ---------------------------------------------------------------------------
# Stable numeric evaluation.  The three-term recursions below are run on
# values, not coefficients, which keeps them usable to degree far beyond
# where monomial Horner in float64 has already lost every digit.
# ---------------------------------------------------------------------------


def cheb_s_at(k: int, y):
    """S_k(y) by the value recursion; y scalar or ndarray."""
    y = np.asarray(y, dtype=float)
    prev = np.ones_like(y)
    if k == 0:
        return prev
    cur = y.copy()
    for _ in range(k - 1):
        prev, cur = cur, y * cur - prev
    return cur


def char_poly_at(k: int, x):
    """Value of pi_poly(k) at x >= 0 via S_{2k}(sqrt(x))."""
    x = np.asarray(x, dtype=float)
    return cheb_s_at(2 * k, np.sqrt(x))


def char_poly_values(coeffs, x) -> np.ndarray:
    """sum_k coeffs[k] * pi_poly(k)(x), vectorised over x, by one recursion pass."""
    x = np.asarray(x, dtype=float)
    y = np.sqrt(np.maximum(x, 0.0))
    dtype = complex if any(isinstance(c, complex) for c in coeffs) else float
    acc = np.zeros(y.shape, dtype=dtype)
    prev = np.ones_like(y)  # S_0
    cur = y.copy()          # S_1
    if len(coeffs) > 0:
        acc += coeffs[0] * prev
    for k in range(1, len(coeffs)):
        # advance from S_{2k-2} to S_{2k}
        prev, cur = cur, y * cur - prev
        prev, cur = cur, y * cur - prev
        acc += coeffs[k] * prev
    return acc
