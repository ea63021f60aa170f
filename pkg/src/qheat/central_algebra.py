"""The commutative algebra spanned by the irreducible characters chi_k.

A central element is a finite coefficient vector (c_0, ..., c_K) in the
character basis.  Multiplication follows the rotation-group ladder
chi_k chi_s = chi_{|k-s|} + ... + chi_{k+s}, and every L^p norm is computed
through the isometric transfer onto class functions of SO(3):

    sum c_k chi_k  |-->  sum c_k chi~_k,   chi~_k(t) = sin((2k+1)t/2)/sin(t/2),

whose p-norms are one-dimensional integrals against the class measure
(2/pi) sin^2(t/2) dt on [0, pi].  Two sup-norms coexist: the SO(3) sup (the
norm in the trace representation, spectrum [0, 4]) and the sup of
sum c_k P_k over [0, n] from the universal model of the character algebra;
they genuinely differ for n > 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .polycalc import char_poly_values
from .quadrature import QuadratureResult, gauss_legendre_nodes, weyl_integral
from .spectrum import _exact_ladder

_THETA_SWITCH = 1e-6  # below this, chi~_k is evaluated by its limit 2k+1
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def so3_character(k: int, theta) -> np.ndarray:
    """Normalised class function chi~_k(theta) = sin((2k+1)theta/2)/sin(theta/2).

    The removable singularity at theta = 0 is patched with the limit 2k+1.
    """
    theta = np.asarray(theta, dtype=float)
    small = np.abs(theta) < _THETA_SWITCH
    denom = np.where(small, 1.0, np.sin(theta / 2.0))
    value = np.sin((2 * k + 1) * theta / 2.0) / denom
    return np.where(small, float(2 * k + 1), value)


@dataclass(frozen=True)
class CentralElement:
    """Finitely supported coefficient vector in the character basis."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        if self.n < 4:
            raise ValueError(f"dimension parameter must be >= 4, got {self.n}")
        coeffs = tuple(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def top_level(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "CentralElement") -> "CentralElement":
        _same_n(self, other)
        size = max(len(self.coeffs), len(other.coeffs))
        return CentralElement(
            self.n, tuple(self.coeff(k) + other.coeff(k) for k in range(size))
        )

    def __sub__(self, other: "CentralElement") -> "CentralElement":
        return self + other.scale(-1)

    def scale(self, factor) -> "CentralElement":
        return CentralElement(self.n, tuple(factor * c for c in self.coeffs))

    def transfer(self, theta) -> np.ndarray:
        """The associated SO(3) class function sum_k c_k chi~_k(theta)."""
        theta = np.asarray(theta, dtype=float)
        if not self.coeffs:
            return np.zeros_like(theta)
        small = np.abs(theta) < _THETA_SWITCH
        denom = np.where(small, 1.0, np.sin(theta / 2.0))
        ks = np.arange(len(self.coeffs))
        coeffs = np.asarray(self.coeffs)
        sines = np.sin(np.multiply.outer(theta / 2.0, 2 * ks + 1))
        value = (sines @ coeffs) / denom
        limit = coeffs @ (2 * ks + 1)
        return np.where(small, limit, value)

    def universal_values(self, t) -> np.ndarray:
        """Values of sum_k c_k P_k(t) on the universal spectrum [0, n]."""
        return char_poly_values(self.coeffs, t)


def character(n: int, k: int, value=1) -> CentralElement:
    """The single term value * chi_k."""
    return CentralElement(n, (0,) * k + (value,))


def unit(n: int) -> CentralElement:
    return character(n, 0)


def _same_n(x: CentralElement, y: CentralElement) -> None:
    if x.n != y.n:
        raise ValueError(f"mismatched dimension parameters {x.n} != {y.n}")


def multiply(x: CentralElement, y: CentralElement) -> CentralElement:
    """Product in the character basis; coefficient arithmetic is exact.

    Bilinear extension of chi_k chi_s = sum_{j=|k-s|}^{k+s} chi_j.
    """
    _same_n(x, y)
    if not x.coeffs or not y.coeffs:
        return CentralElement(x.n, ())
    out = [0] * (x.top_level + y.top_level + 1)
    for k, ck in enumerate(x.coeffs):
        if ck == 0:
            continue
        for s, cs in enumerate(y.coeffs):
            if cs == 0:
                continue
            prod = ck * cs
            for j in range(abs(k - s), k + s + 1):
                out[j] += prod
    return CentralElement(x.n, tuple(out))


def adjoint(x: CentralElement) -> CentralElement:
    """Coefficientwise conjugate; the characters themselves are self-adjoint."""
    return CentralElement(
        x.n, tuple(c.conjugate() if isinstance(c, complex) else c for c in x.coeffs)
    )


def haar(x: CentralElement):
    """Haar-state value: the coefficient of the trivial character."""
    return x.coeff(0)


def l2_norm(x: CentralElement) -> float:
    """sqrt(sum |c_k|^2); the characters are an orthonormal basis."""
    return math.sqrt(sum(abs(c) ** 2 for c in x.coeffs))


def _crude_weyl(integrand, panels: int = 96, order: int = 8) -> float:
    """Fixed composite rule, used only to scale adaptive tolerances."""
    nodes, weights = gauss_legendre_nodes(order)
    edges = np.linspace(0.0, math.pi, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    s = np.sin(x / 2.0)
    return float(np.dot(w, (2.0 / math.pi) * integrand(x) * s * s))


def lp_norm_result(x: CentralElement, p: float, tol: float = 1e-9) -> QuadratureResult:
    """L^p norm for p in [1, inf) with its quadrature record.

    tol is the absolute target on the norm itself; the tolerance handed to
    the adaptive integrator is scaled accordingly (the p-th power integral
    needs accuracy p * tol * I^{(p-1)/p}).
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if not x.coeffs:
        return QuadratureResult(0.0, 0.0, 0)

    def integrand(theta):
        return np.abs(x.transfer(theta)) ** p

    crude = _crude_weyl(integrand)
    integral_tol = p * tol * max(crude, tol) ** ((p - 1.0) / p)
    raw = weyl_integral(integrand, tol=max(integral_tol, 1e-15))
    value = raw.value ** (1.0 / p)
    if raw.value > 0:
        err = value * raw.error_estimate / (p * raw.value)
    else:
        err = raw.error_estimate ** (1.0 / p)
    return QuadratureResult(value, err, raw.evaluations)


def lp_norm(x: CentralElement, p: float, tol: float = 1e-9) -> float:
    return lp_norm_result(x, p, tol).value


def _refine_extremum(f, lo: float, hi: float, maximize: bool, iters: int = 80) -> float:
    """Golden-section search for an interior extremum of a scalar function."""
    sign = -1.0 if maximize else 1.0
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc = sign * float(f(c))
    fd = sign * float(f(d))
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = sign * float(f(c))
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = sign * float(f(d))
        if b - a < 1e-13 * max(1.0, abs(a) + abs(b)):
            break
    return 0.5 * (a + b)


def _local_maxima(values: np.ndarray) -> np.ndarray:
    return np.nonzero((values[1:-1] >= values[:-2]) & (values[1:-1] >= values[2:]))[0] + 1


def _local_minima(values: np.ndarray) -> np.ndarray:
    return np.nonzero((values[1:-1] <= values[:-2]) & (values[1:-1] <= values[2:]))[0] + 1


def _theta_grid(x: CentralElement) -> np.ndarray:
    points = max(4097, 32 * (2 * x.top_level + 1) + 1)
    return np.linspace(0.0, math.pi, points)


def sup_norm_reduced(x: CentralElement, tol: float = 1e-10) -> float:
    """Sup of |sum c_k chi~_k| over [0, pi]: the trace-representation norm.

    Dense grid plus golden-section refinement of the leading local maxima;
    endpoints (where single characters peak) are always included.
    """
    if not x.coeffs:
        return 0.0
    grid = _theta_grid(x)
    vals = np.abs(x.transfer(grid))
    best = max(float(vals[0]), float(vals[-1]), float(vals.max()))
    peaks = _local_maxima(vals)
    for idx in peaks[np.argsort(vals[peaks])][-12:]:
        theta = _refine_extremum(
            lambda t: np.abs(x.transfer(t)), grid[idx - 1], grid[idx + 1], maximize=True
        )
        best = max(best, float(np.abs(x.transfer(theta))))
    return best


def _endpoint_value_exact(x: CentralElement):
    """sum c_k P_k(n) with the integer character dimensions taken exactly."""
    values, _ = _exact_ladder(x.n, x.top_level)
    return sum(c * float(v) for c, v in zip(x.coeffs, values))


def sup_norm_universal(x: CentralElement, tol: float = 1e-10) -> float:
    """Sup of |sum c_k P_k| over the universal spectrum [0, n].

    Always >= sup_norm_reduced: the trace-representation spectrum [0, 4] is
    the image of theta |-> 2 + 2 cos(theta) inside [0, n].  Sampling uses
    that substitution on [0, 4] (where all oscillation lives) and a plain
    grid on the monotone tail [4, n].
    """
    if not x.coeffs:
        return 0.0
    n = x.n
    phi = np.linspace(0.0, math.pi, max(4097, 32 * (2 * x.top_level + 1) + 1))
    grid = (2.0 + 2.0 * np.cos(phi))[::-1]
    if n > 4:
        grid = np.concatenate([grid, np.linspace(4.0, float(n), 513)[1:]])
    vals = np.abs(x.universal_values(grid))
    best = max(float(vals.max()), abs(_endpoint_value_exact(x)))
    peaks = _local_maxima(vals)
    for idx in peaks[np.argsort(vals[peaks])][-12:]:
        t = _refine_extremum(
            lambda s: np.abs(x.universal_values(s)),
            grid[idx - 1],
            grid[idx + 1],
            maximize=True,
        )
        best = max(best, float(np.abs(x.universal_values(t))))
    return best


def is_positive_reduced(x: CentralElement, tol: float = 1e-10) -> bool:
    """True iff the transferred class function stays >= -tol on [0, pi]."""
    if not x.coeffs:
        return True
    if any(isinstance(c, complex) and abs(c.imag) > tol for c in x.coeffs):
        return False
    grid = _theta_grid(x)
    vals = np.real(x.transfer(grid))
    worst = float(vals.min())
    dips = _local_minima(vals)
    for idx in dips[np.argsort(vals[dips])][:12]:
        theta = _refine_extremum(
            lambda t: np.real(x.transfer(t)), grid[idx - 1], grid[idx + 1], maximize=False
        )
        worst = min(worst, float(np.real(x.transfer(theta))))
    return worst >= -tol
