"""Gauss-Legendre quadrature with adaptive bisection, plus measure integrals.

The adaptive driver keeps a queue of panels and, on each sweep, bisects every
panel whose a-posteriori error (difference between the panel estimate and the
sum of its two halves) exceeds its proportional share of the tolerance.  All
node evaluations in a sweep happen in one vectorised call, so integrands
should accept numpy arrays; plain scalar callables are wrapped transparently.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_legendre_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1], cached per order."""
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


class QuadratureError(RuntimeError):
    """Raised when adaptive refinement fails; carries the best estimate."""

    def __init__(self, message: str, best: "QuadratureResult"):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int

    def __float__(self) -> float:
        return self.value


def _vector_eval(f, x: np.ndarray) -> np.ndarray:
    try:
        y = np.asarray(f(x), dtype=float)
        if y.shape == x.shape:
            return y
    except Exception:
        pass
    return np.array([float(f(v)) for v in x])


def _panel_integrals(f, lo: np.ndarray, hi: np.ndarray, order: int) -> tuple[np.ndarray, int]:
    nodes, weights = gauss_legendre_nodes(order)
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    y = _vector_eval(f, x).reshape(len(lo), order)
    return half * (y @ weights), x.size


def integrate_adaptive(
    f: Callable,
    a: float,
    b: float,
    tol: float = 1e-10,
    order: int = 12,
    max_evals: int = 5_000_000,
) -> QuadratureResult:
    """Integrate f over [a, b] to absolute tolerance tol.

    Returns value, a-posteriori error estimate and the evaluation count;
    raises QuadratureError (carrying the best estimate) if the budget runs
    out before every panel converges.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if tol <= 0:
        raise ValueError("tol must be positive")

    width = b - a
    lo = np.array([a], dtype=float)
    hi = np.array([b], dtype=float)
    (est,), n_evals = _panel_integrals(f, lo, hi, order)
    parents = np.array([est])

    accepted_value = 0.0
    accepted_error = 0.0

    while len(lo) > 0:
        mid = 0.5 * (lo + hi)
        child_lo = np.concatenate([lo, mid])
        child_hi = np.concatenate([mid, hi])
        child_int, used = _panel_integrals(f, child_lo, child_hi, order)
        n_evals += used
        refined = child_int[: len(lo)] + child_int[len(lo):]
        err = np.abs(refined - parents)
        budget = tol * (hi - lo) / width
        done = err <= budget

        accepted_value += float(refined[done].sum())
        accepted_error += float(err[done].sum())

        keep = ~done
        if n_evals >= max_evals and keep.any():
            best = QuadratureResult(
                accepted_value + float(refined[keep].sum()),
                accepted_error + float(err[keep].sum()),
                n_evals,
            )
            raise QuadratureError(
                f"no convergence within {max_evals} evaluations (tol={tol})", best
            )
        half_lo = np.concatenate([lo[keep], mid[keep]])
        half_hi = np.concatenate([mid[keep], hi[keep]])
        lo, hi = half_lo, half_hi
        parents = np.concatenate([child_int[: len(mid)][keep], child_int[len(mid):][keep]])

    return QuadratureResult(accepted_value, accepted_error, n_evals)


def weyl_integral(g: Callable, tol: float = 1e-10, order: int = 12) -> QuadratureResult:
    """Integral of g against the conjugation-class measure of SO(3).

    Computes (2/pi) * int_0^pi g(theta) sin^2(theta/2) dtheta; total mass 1.
    """
    def integrand(theta):
        theta = np.asarray(theta, dtype=float)
        s = np.sin(theta / 2.0)
        return (2.0 / math.pi) * _vector_eval(g, theta) * s * s

    return integrate_adaptive(integrand, 0.0, math.pi, tol=tol, order=order)


@dataclass(frozen=True)
class MeasureSpec:
    """Finite measure on [0, n]: point masses plus an optional density.

    The density carries a smoothness hint ("smooth" or "linear"); linear
    (e.g. tabulated) densities get low-order panels so the adaptive driver
    is not fighting a kinked integrand with a high-order rule.
    """

    atoms: tuple = ()
    density: Optional[Callable] = None
    smoothness: str = "smooth"

    def __post_init__(self):
        atoms = tuple((loc, mass) for loc, mass in self.atoms)
        for loc, mass in atoms:
            if mass <= 0:
                raise ValueError(f"atom masses must be positive, got {mass} at {loc}")
        object.__setattr__(self, "atoms", atoms)
        if self.smoothness not in ("smooth", "linear"):
            raise ValueError(f"unknown smoothness hint {self.smoothness!r}")

    @property
    def is_zero(self) -> bool:
        return not self.atoms and self.density is None

    def total_atom_mass(self):
        return sum(mass for _, mass in self.atoms)

    def validate(self, n: int) -> None:
        """Check support in [0, n] and the no-mass-at-n requirement."""
        for loc, _ in self.atoms:
            if not 0 <= loc <= n:
                raise ValueError(f"atom at {loc} outside [0, {n}]")
            if loc == n:
                raise ValueError(f"measure may not have an atom at the endpoint {n}")


ZERO_MEASURE = MeasureSpec()


def integrate_measure(f: Callable, nu: MeasureSpec, n: float, tol: float = 1e-10):
    """sum_i w_i f(x_i) plus the density part over [0, n].

    Atom evaluations stay exact when f and the locations are exact
    (ints/Fractions); only the density part goes through quadrature.
    """
    total = 0
    for loc, mass in nu.atoms:
        total = total + mass * f(loc)
    if nu.density is not None:
        order = 12 if nu.smoothness == "smooth" else 4
        dens = nu.density

        def integrand(x):
            x = np.asarray(x, dtype=float)
            return _vector_eval(f, x) * _vector_eval(dens, x)

        total = total + integrate_adaptive(integrand, 0.0, float(n), tol=tol, order=order).value
    return total


def parse_measure(text: str, n: Optional[int] = None) -> MeasureSpec:
    """Parse "atoms=x1:w1,x2:w2;density=none|table:<file>" into a MeasureSpec.

    Table files are two-column CSV (x, density); interpolation is piecewise
    linear, hence the "linear" smoothness hint.
    """
    atoms: list = []
    density = None
    smooth = "smooth"
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, _, value = part.partition("=")
        key = key.strip().lower()
        if key == "atoms":
            if value.strip():
                for item in value.split(","):
                    loc_s, _, mass_s = item.partition(":")
                    atoms.append((_parse_number(loc_s), _parse_number(mass_s)))
        elif key == "density":
            value = value.strip()
            if value in ("", "none"):
                density = None
            elif value.startswith("table:"):
                density = _table_density(value[len("table:"):])
                smooth = "linear"
            else:
                raise ValueError(f"unknown density spec {value!r}")
        else:
            raise ValueError(f"unknown measure field {key!r}")
    spec = MeasureSpec(tuple(atoms), density, smooth)
    if n is not None:
        spec.validate(n)
    return spec


def _parse_number(s: str):
    s = s.strip()
    try:
        return int(s)
    except ValueError:
        return float(s)


def _table_density(path: str) -> Callable:
    xs, ys = [], []
    with open(path, newline="") as handle:
        for row in csv.reader(handle):
            if not row or row[0].lstrip().startswith("#"):
                continue
            xs.append(float(row[0]))
            ys.append(float(row[1]))
    if len(xs) < 2:
        raise ValueError(f"density table {path} needs at least two rows")
    xs_arr = np.asarray(xs)
    ys_arr = np.asarray(ys)
    if not np.all(np.diff(xs_arr) > 0):
        raise ValueError(f"density table {path} must have strictly increasing x")

    def density(x):
        return np.interp(np.asarray(x, dtype=float), xs_arr, ys_arr)

    return density
