"""Embedding-inequality left sides and the sharpness-scan experiment runner.

Implements the weighted Fourier-side quantities of the Sobolev-type and
Hausdorff-Young inequalities for central elements, the t^s-weighted spectral
sum whose boundedness in t decides the critical exponent, and scan drivers
that tabulate lhs / ||f||_p ratios along element families.

For central f = sum c_k chi_k the squared Fourier weight of level k is
|c_k|^2: with the transform defined by matrix coefficients and the characters
orthonormal, level k contributes n_k ||f^(k)||_HS^2 = |c_k|^2, so the
evaluators never materialise the n_k x n_k coefficient blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .central_algebra import CentralElement, lp_norm_result
from .spectrum import decay_ladder, dimension

_SCAN_FAMILIES = ("poly-decay", "heat-kernel-tail")


def _check_p(p: float) -> float:
    if not 1.0 < p <= 2.0:
        raise ValueError(f"p must lie in (1, 2], got {p}")
    return p / (p - 1.0)


def hls_lhs(x: CentralElement, s: float, p: float) -> float:
    """Sobolev-side quantity (sum_k (1+k)^(-s(2/p-1)) |c_k|^2)^(1/2)."""
    _check_p(p)
    exponent = s * (2.0 / p - 1.0)
    return math.sqrt(
        sum(abs(c) ** 2 / (1.0 + k) ** exponent for k, c in enumerate(x.coeffs))
    )


def hy_lhs(x: CentralElement, s: float, p: float) -> float:
    """Hausdorff-Young-side quantity (sum_k (1+k)^(-s) |c_k|^p')^(1/p')."""
    p_conj = _check_p(p)
    return sum(
        abs(c) ** p_conj / (1.0 + k) ** s for k, c in enumerate(x.coeffs)
    ) ** (1.0 / p_conj)


def _tail_bound(q: float, K: int) -> float:
    """Closed form of sum_{k > K} (1+k)^2 q^k for 0 < q < 1.

    With M = K + 2: q^(K+1) * ( q(1+q)/(1-q)^3 + 2 M q/(1-q)^2 + M^2/(1-q) ).
    """
    M = K + 2
    log_head = (K + 1) * math.log(q)
    if log_head < -745.0:
        return 0.0
    head = math.exp(log_head)
    one = 1.0 - q
    return head * (q * (1.0 + q) / one**3 + 2.0 * M * q / one**2 + M * M / one)


def g_criterion(
    n: int,
    s: float,
    t: float,
    tail_tol: float = 1e-10,
    truncation_factor: int = 1,
) -> float:
    """t^s * sum_{k=0}^{K} (1+k)^2 exp(-2t(1+c_k)), truncated rigorously.

    K is chosen so that the conservative geometric tail bound (using
    c_k >= k/n) falls below tail_tol; truncation_factor inflates K for
    stability checks.  Bounded in t on (0, inf) exactly when s >= 3, with
    small-t limit (n(n-4))^{3/2} / 4 at s = 3.
    """
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    if tail_tol <= 0:
        raise ValueError("tail_tol must be positive")
    q = math.exp(-2.0 * t / n)
    K = 64
    while _tail_bound(q, K) * math.exp(-2.0 * t) >= tail_tol:
        K *= 2
        if K > 8 * 10**6:
            raise RuntimeError(f"truncation failed to converge at t={t}")
    K *= max(1, int(truncation_factor))
    rates = decay_ladder(n, K)
    k = np.arange(K + 1, dtype=float)
    total = float(np.sum((1.0 + k) ** 2 * np.exp(-2.0 * t * (1.0 + rates))))
    return t**s * total


def g_criterion_limit(n: int) -> float:
    """Small-t limit of g_criterion at the critical exponent s = 3.

    The decay slope c_k / k -> 1/sqrt(n(n-4)) turns the sum into a second
    moment of a geometric profile: t^3 * 2/(2t/sqrt(n(n-4)))^3 -> (n(n-4))^{3/2}/4.
    """
    return (n * (n - 4.0)) ** 1.5 / 4.0


def summability_threshold(n: int) -> float:
    """Smallest t for which the heat-tail coefficients n_k e^{-c_k t} decay.

    The dimensions grow like e^{2uk} and the rates like k/sqrt(n(n-4)) with
    u = arccosh(sqrt(n)/2), so decay starts at t* = 2 u sqrt(n(n-4)).
    """
    u = math.acosh(math.sqrt(n) / 2.0)
    return 2.0 * u * math.sqrt(n * (n - 4.0))


def poly_decay_element(n: int, a: float, size: int) -> CentralElement:
    """Coefficients c_k = (1+k)^(-a) for k = 0..size."""
    if size < 0:
        raise ValueError("size must be >= 0")
    return CentralElement(n, tuple((1.0 + k) ** (-a) for k in range(size + 1)))


def heat_tail_element(n: int, t: float, mass_tol: float = 1e-9) -> CentralElement:
    """Heat-kernel tail c_k = n_k exp(lambda_k t), truncated when the
    remaining level-1 mass drops below mass_tol.

    Refuses t at or below the summability threshold: below it the series
    diverges and truncation would silently misrepresent it.  The remaining
    mass is bounded geometrically with the current term ratio, which
    decreases monotonically towards its limit, so the bound is safe.
    """
    t_min = summability_threshold(n)
    if t <= t_min:
        raise ValueError(
            f"heat-kernel tail diverges for t <= {t_min:.6g} at n={n}; got t={t}"
        )
    budget = 4096
    rates = decay_ladder(n, budget)
    coeffs: list[float] = []
    prev = None
    for k in range(budget + 1):
        term = dimension(n, k) * math.exp(-rates[k] * t)
        coeffs.append(term)
        if prev is not None and k >= 8:
            ratio = term / prev
            if ratio < 1.0 and term * ratio / (1.0 - ratio) < mass_tol:
                return CentralElement(n, tuple(coeffs))
        prev = term
    raise RuntimeError("heat-kernel tail truncation did not converge")


@dataclass(frozen=True)
class ScanRow:
    grid: float
    lhs: float
    rhs: float
    ratio: float
    flag: str = "ok"


@dataclass(frozen=True)
class SharpnessScanConfig:
    """Parameters of a ratio scan along a family of central elements."""

    n: int
    s: float
    p: float
    inequality: str = "hls"  # "hls" or "hy"
    family: str = "poly-decay"
    family_param: float = 2.0
    grid: tuple = (8, 16, 32, 64)
    norm_tol: float = 1e-9

    def __post_init__(self):
        if self.inequality not in ("hls", "hy"):
            raise ValueError(f"unknown inequality {self.inequality!r}")
        if self.family not in _SCAN_FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; have {_SCAN_FAMILIES}")
        if not self.grid:
            raise ValueError("grid must be nonempty")
        # poly-decay grid entries are truncation sizes (0 means just chi_0);
        # heat-tail entries are times and must be strictly positive
        floor = 0 if self.family == "poly-decay" else None
        if floor is not None and any(g < floor for g in self.grid):
            raise ValueError("grid entries must be nonnegative")
        if floor is None and any(g <= 0 for g in self.grid):
            raise ValueError("grid entries must be positive")
        if list(self.grid) != sorted(self.grid):
            raise ValueError("grid must be sorted ascending")
        _check_p(self.p)


def sharpness_scan(cfg: SharpnessScanConfig) -> list[ScanRow]:
    """Tabulate (grid point, lhs, ||f||_p, lhs/||f||_p) along the family.

    A bounded ratio as the family grows is consistent with the inequality at
    exponent s; growth across the schedule is divergence *evidence*, not a
    proof.  Rows that fail to evaluate are flagged rather than dropped.
    """
    side = hls_lhs if cfg.inequality == "hls" else hy_lhs
    rows: list[ScanRow] = []
    for point in cfg.grid:
        try:
            if cfg.family == "poly-decay":
                elem = poly_decay_element(cfg.n, cfg.family_param, int(point))
            else:
                elem = heat_tail_element(cfg.n, float(point))
            if elem.top_level > 128:
                raise ValueError(
                    f"family member at {point} has top level {elem.top_level} > 128; "
                    "quadrature cost would be unreasonable"
                )
            lhs = side(elem, cfg.s, cfg.p)
            rhs = lp_norm_result(elem, cfg.p, tol=cfg.norm_tol)
            rows.append(ScanRow(float(point), lhs, rhs.value, lhs / rhs.value))
        except (ValueError, RuntimeError) as exc:
            rows.append(ScanRow(float(point), math.nan, math.nan, math.nan, flag=str(exc)))
    return rows
