"""Spectral data of central Markov generators: eigenvalues, dimensions, bounds.

For the pure-drift heat semigroup the decay rates have the exact rational
form c_k = P_k'(n) / P_k(n) with P_k the degree-k character polynomial, so
the whole ladder (and the classical bounds k/n <= c_k <= k/(sqrt n (sqrt n - 2)))
can be checked in integer arithmetic.  A float fast path via the equivalent
hyperbolic closed form

    c_k = ((2k+1) coth((2k+1)u) - coth u) / (4 sqrt(n) sinh u),  u = arccosh(sqrt(n)/2)

serves truncations far beyond where polynomial evaluation is sensible.
"""

from __future__ import annotations

import math
import threading
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polycalc import char_poly_at, difference_quotient, eval_poly, pi_poly
from .quadrature import MeasureSpec, ZERO_MEASURE, integrate_measure


@dataclass(frozen=True)
class GeneratingFunctional:
    """Drift-plus-jump data (a, nu) defining a central Markov generator."""

    a: float = 1.0
    nu: MeasureSpec = ZERO_MEASURE

    def __post_init__(self):
        if self.a < 0:
            raise ValueError(f"drift must be nonnegative, got {self.a}")
        if self.a == 0 and self.nu.is_zero:
            raise ValueError("generating functional (0, zero measure) is trivial")

    @property
    def is_pure_heat(self) -> bool:
        return self.a == 1.0 and self.nu.is_zero

    def validate(self, n: int) -> None:
        self.nu.validate(n)


HEAT = GeneratingFunctional(1.0, ZERO_MEASURE)

_ladder_lock = threading.Lock()
_exact_ladders: dict[int, tuple[list[int], list[int]]] = {}


def _exact_ladder(n: int, k: int) -> tuple[list[int], list[int]]:
    """Values P_j(n) and P_j'(n) for j <= k, by the integer recursions

    P_{j+1} = (n-2) P_j - P_{j-1},     P_0 = 1, P_1 = n-1,
    D_{j+1} = P_j + (n-2) D_j - D_{j-1}, D_0 = 0, D_1 = 1.
    """
    with _ladder_lock:
        values, derivs = _exact_ladders.setdefault(n, ([1, n - 1], [0, 1]))
        while len(values) <= k:
            values.append((n - 2) * values[-1] - values[-2])
            derivs.append(values[-2] + (n - 2) * derivs[-1] - derivs[-2])
        return values, derivs


def dimension(n: int, k: int) -> int:
    """Dimension of the level-k irreducible block: P_k(n), an exact integer."""
    _check_level(n, k, minimum=4)
    values, _ = _exact_ladder(n, k)
    return values[k]


def multiplicity(n: int, k: int) -> int:
    """Eigenvalue multiplicity at level k: dimension squared."""
    return dimension(n, k) ** 2


def eigenvalue_exact(n: int, k: int) -> Fraction:
    """Heat-generator eigenvalue at level k as an exact Fraction (<= 0).

    lambda_k = -P_k'(n) / P_k(n); the sqrt(n) in the Chebyshev-variable form
    S_{2k}'(sqrt n) / (2 sqrt n S_{2k}(sqrt n)) cancels identically, so no
    irrational arithmetic is needed.
    """
    _check_level(n, k, minimum=4)
    if n == 4:
        warnings.warn("n = 4 is outside the bound-checked regime (need n >= 5)")
    values, derivs = _exact_ladder(n, k)
    return -Fraction(derivs[k], values[k])


def eigenvalue(n: int, k: int) -> float:
    """Heat-generator eigenvalue at level k (float; exact path underneath)."""
    return float(eigenvalue_exact(n, k))


def decay_ladder(n: int, kmax: int) -> np.ndarray:
    """Decay rates c_k = -lambda_k for k = 0..kmax, float64 fast path.

    Uses the hyperbolic closed form, stable for arbitrarily large k
    (tanh saturates instead of overflowing); agrees with the exact rational
    ladder to machine precision.
    """
    if n < 5:
        raise ValueError(f"decay ladder needs n >= 5, got {n}")
    sqrt_n = math.sqrt(n)
    u = math.acosh(sqrt_n / 2.0)
    k = np.arange(kmax + 1, dtype=float)
    m = 2.0 * k + 1.0
    coth_mu = 1.0 / np.tanh(m * u)
    c = (m * coth_mu - 1.0 / math.tanh(u)) / (4.0 * sqrt_n * math.sinh(u))
    c[0] = 0.0
    return c


def eigenvalue_general(
    n: int, k: int, g: GeneratingFunctional, tol: float = 1e-10
) -> float:
    """Eigenvalue of the generator with data (a, nu) at level k.

    lambda_k = ( -a P_k'(n) + int_0^n (P_k(x) - P_k(n))/(n - x) dnu(x) ) / P_k(n),
    the integrand being the exact difference-quotient polynomial.  Always <= 0:
    P_k is maximised over [0, n] at the right endpoint.
    """
    _check_level(n, k, minimum=4)
    g.validate(n)
    if k == 0:
        return 0.0
    values, derivs = _exact_ladder(n, k)
    drift_part = -g.a * float(Fraction(derivs[k], values[k]))
    if g.nu.is_zero:
        return drift_part

    quot = difference_quotient(pi_poly(k), n)

    def quot_at(x):
        if isinstance(x, (int, Fraction)):
            return eval_poly(quot, x)
        return _difference_quotient_values(k, n, x)

    jump = integrate_measure(quot_at, g.nu, n, tol=tol)
    if isinstance(jump, (int, Fraction)):
        return drift_part + float(Fraction(jump, values[k]))
    return float(drift_part + jump / float(values[k]))


def _difference_quotient_values(k: int, n: int, x) -> np.ndarray:
    """(P_k(x) - P_k(n)) / (n - x) by stable value recursion, with the
    limit -P_k'(n) patched in where x is within 1e-9 of n."""
    x = np.asarray(x, dtype=float)
    values, derivs = _exact_ladder(n, k)
    pk_n = float(values[k])
    out = np.empty_like(x)
    close = np.abs(n - x) < 1e-9
    far = ~close
    if far.any():
        out[far] = (char_poly_at(k, x[far]) - pk_n) / (n - x[far])
    if close.any():
        out[close] = -float(derivs[k])
    return out


@dataclass(frozen=True)
class SpectrumRow:
    k: int
    lam: float
    n_k: int
    m_k: int
    lower: float
    upper: float
    bounds_ok: bool


@dataclass(frozen=True)
class SpectrumTable:
    n: int
    rows: tuple[SpectrumRow, ...]

    HEADER = ("k", "lambda", "n_k", "m_k", "lower", "upper", "bounds_ok")

    def all_bounds_ok(self) -> bool:
        return all(r.bounds_ok for r in self.rows)


def _bounds_ok_exact(n: int, k: int, c: Fraction) -> bool:
    """k/n <= c <= k/(sqrt n (sqrt n - 2)), decided in exact arithmetic.

    The upper bound comparison c (n - 2 sqrt n) <= k is squared into
    (c n - k)^2 <= 4 n c^2 using c >= k/n >= 0, avoiding any float sqrt.
    """
    if k == 0:
        return c == 0
    if c < Fraction(k, n):
        return False
    return (c * n - k) ** 2 <= 4 * n * c * c


def spectrum_table(
    n: int, kmax: int, g: GeneratingFunctional = HEAT, tol: float = 1e-10
) -> SpectrumTable:
    """Rows (k, lambda_k, n_k, m_k, lower, upper, bounds_ok) for k = 0..kmax.

    Bound flags are decided exactly for the pure heat case; for general
    generating functionals the classical bounds do not apply and the flag is
    reported against the same envelope for orientation only.
    """
    if n < 5:
        raise ValueError(f"spectrum table needs n >= 5, got {n}")
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    sqrt_n = math.sqrt(n)
    rows = []
    for k in range(kmax + 1):
        n_k = dimension(n, k)
        if g.is_pure_heat:
            c = -eigenvalue_exact(n, k)
            lam = float(-c)
            ok = _bounds_ok_exact(n, k, c)
        else:
            lam = eigenvalue_general(n, k, g, tol=tol)
            ok = (k / n) - 1e-12 <= -lam <= k / (sqrt_n * (sqrt_n - 2)) + 1e-12
        rows.append(
            SpectrumRow(
                k=k,
                lam=lam,
                n_k=n_k,
                m_k=n_k * n_k,
                lower=k / n,
                upper=k / (sqrt_n * (sqrt_n - 2)),
                bounds_ok=bool(ok),
            )
        )
    return SpectrumTable(n, tuple(rows))


def so3_eigenvalue(k: int) -> float:
    """Classical rotation-group ladder -k(k+2)/6, the documented n = 4 special case."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return -k * (k + 2) / 6.0


def _check_level(n: int, k: int, minimum: int) -> None:
    if n < minimum:
        raise ValueError(f"need n >= {minimum}, got {n}")
    if k < 0:
        raise ValueError(f"level k must be >= 0, got {k}")
