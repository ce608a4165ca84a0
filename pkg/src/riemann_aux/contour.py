"""Direct quadrature of R(s) along Siegel's slanted lines.

Orientation convention: both lines are traversed *downward*.

* ``0 ↙ 1`` is the line of slope +1 through a point of (0, 1), traversed in
  the direction ``exp(-3 pi i / 4)``;
* ``0 ↘ 1`` is the line of slope -1 through a point of (0, 1), traversed in
  the direction ``exp(-pi i / 4)``.

With this choice ``R(0) = -1/2`` and
``zeta(s) = R(s) + chi(s) * conj(R(1 - conj(s)))``.

Both integrals are evaluated on a line moved next to the saddle point of the
integrand, with the residues of the crossed poles added back (Cauchy); this
avoids the catastrophic cancellation of the line through 1/2 when ``|s|`` is
large.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "DOWN_LEFT",
    "DOWN_RIGHT",
    "LinePath",
    "QuadratureResult",
    "line_quadrature",
    "default_half_length",
    "r_defining",
    "r_reflected",
    "MAX_ORACLE_HEIGHT",
]

DOWN_LEFT = cmath.exp(-0.75j * math.pi)
DOWN_RIGHT = cmath.exp(-0.25j * math.pi)
MAX_ORACLE_HEIGHT = 300.0
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class LinePath:
    """Straight line ``x(v) = crossing + v * direction``, ``v`` in
    ``[center - half_length, center + half_length]``.

    ``nodes`` is the node count of the coarsest trapezoid level; refinement
    halves the step from there.
    """

    crossing: float
    direction: complex
    half_length: float
    nodes: int = 65
    center: float = 0.0

    def __post_init__(self):
        if abs(abs(self.direction) - 1.0) > 1e-15:
            raise ValueError("direction must have unit modulus")
        if float(self.crossing) == math.floor(self.crossing):
            raise ValueError("crossing must not be an integer (pole of 1/sin)")
        if not self.half_length > 0:
            raise ValueError("half_length must be positive")
        if self.nodes < 3:
            raise ValueError("need at least 3 nodes")

    def point(self, v):
        return self.crossing + np.asarray(v) * self.direction


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    est_error: float
    nodes_used: int
    diagnostics: dict = field(default_factory=dict, compare=False)


def default_half_length(tol: float) -> float:
    return math.sqrt(math.log(1.0 / tol) / (2.0 * math.pi)) + 2.0


def line_quadrature(
    path: LinePath,
    integrand: Callable[[np.ndarray], np.ndarray],
    tol: float = 1e-12,
    max_levels: int = 10,
    extend: bool = True,
    strict: bool = False,
    include: tuple = (),
) -> QuadratureResult:
    """Trapezoid rule on a truncated line with geometric refinement.

    ``integrand`` is called with an array of complex points on the line and
    must return the integrand values there.  The result approximates
    ``int f(x) dx`` along the path orientation.

    ``est_error`` adds the last refinement delta, a Gaussian tail estimate
    from the endpoint values and a rounding estimate.  Convergence is declared
    when it is at most ``tol * max(1, |value|)``.  When the integral cancels
    so far that the rounding floor ``16 eps sum |f| h`` exceeds that target,
    the floor-limited value is returned with ``diagnostics["noise_floor"]``
    set and ``est_error`` equal to the floor (``strict`` raises instead).

    ``include`` lists further line parameters ``v`` that may carry a second
    peak (another saddle).  The hull of these and ``center`` is probed and the
    window is trimmed to where ``|f|`` is not negligible.

    Raises
    ------
    ConvergenceError
        When two successive refinements fail to contract by a factor 2 while
        the target is still unmet, or ``max_levels`` is exhausted.
    """
    d = complex(path.direction)
    L = float(path.half_length)
    c = float(path.center)

    def f(v):
        return np.asarray(integrand(path.crossing + v * d), dtype=complex)

    lo, hi = c - L, c + L
    if include and extend:
        lo = min(lo, min(include) - L)
        hi = max(hi, max(include) + L)
        grid = np.linspace(lo, hi, max(257, int(8 * (hi - lo)) + 1))
        mag = np.abs(f(grid))
        peak = float(np.max(mag))
        if peak > 0.0 and np.isfinite(peak):
            keep = grid[mag > 1e-3 * tol * peak]
            lo = max(lo, float(keep[0]) - 1.0)
            hi = min(hi, float(keep[-1]) + 1.0)
    # widen the window until the endpoint values are negligible
    for _ in range(60):
        probe = f(np.linspace(lo, hi, 65))
        mag = np.abs(probe)
        peak = float(np.max(mag))
        if not extend or peak == 0.0:
            break
        thresh = 1e-3 * tol * peak
        grow_lo, grow_hi = mag[0] > thresh, mag[-1] > thresh
        if not (grow_lo or grow_hi):
            break
        lo -= 1.0 if grow_lo else 0.0
        hi += 1.0 if grow_hi else 0.0
    c, L = 0.5 * (lo + hi), 0.5 * (hi - lo)
    n = int(path.nodes)
    if n % 2 == 0:
        n += 1
    v = np.linspace(c - L, c + L, n)
    h = v[1] - v[0]
    fv = f(v)
    if not np.all(np.isfinite(fv)):
        raise ConvergenceError("integrand not finite on the path")
    T = h * (np.sum(fv) - 0.5 * (fv[0] + fv[-1]))
    abs_sum = h * float(np.sum(np.abs(fv)))
    tail = float(abs(fv[0]) + abs(fv[-1]))
    used = n
    deltas = []
    for level in range(max_levels):
        mid = v[:-1] + 0.5 * h
        fm = f(mid)
        if not np.all(np.isfinite(fm)):
            raise ConvergenceError("integrand not finite on the path")
        T_new = 0.5 * T + 0.5 * h * np.sum(fm)
        abs_sum = 0.5 * abs_sum + 0.5 * h * float(np.sum(np.abs(fm)))
        used += fm.size
        delta = abs(T_new - T)
        deltas.append(delta)
        T = T_new
        v = np.sort(np.concatenate([v, mid]))
        h *= 0.5
        rounding = 16.0 * _EPS * abs_sum
        est = delta + tail + rounding
        target = tol * max(1.0, abs(T))
        done = est <= target or (delta <= rounding and tail + rounding <= target)
        # the value cancels below the rounding floor: report the floor instead of failing
        at_floor = level >= 1 and delta <= 4.0 * rounding and tail <= max(target, rounding)
        if done or (at_floor and not strict):
            return QuadratureResult(
                complex(T),
                float(max(est, rounding)),
                used,
                {"half_length": L, "levels": level + 1, "rounding": rounding, "noise_floor": not done},
            )
        if level >= 3 and delta > 0.5 * deltas[-2] and deltas[-2] > 0.5 * deltas[-3]:
            raise ConvergenceError(
                f"trapezoid refinements stopped contracting (deltas {deltas[-3:]}, "
                f"rounding floor {rounding:.3g}, target {target:.3g})"
            )
    raise ConvergenceError(f"no convergence after {max_levels} refinements (delta {deltas[-1]:.3g})")


# -- R(s) ---------------------------------------------------------------------


def _check_height(s: complex):
    if abs(s.imag) > MAX_ORACLE_HEIGHT:
        raise DomainError(
            f"|Im s| = {abs(s.imag):g} exceeds the oracle range {MAX_ORACLE_HEIGHT:g}; "
            "use the saddle-point expansion"
        )


def _inv_two_i_sin(x: np.ndarray) -> np.ndarray:
    """1 / (exp(pi i x) - exp(-pi i x)) without overflow for large |Im x|."""
    out = np.empty_like(x)
    up = x.imag >= 0
    xu = x[up]
    eu = np.exp(1j * np.pi * xu)
    out[up] = eu / (eu * eu - 1.0)
    xl = x[~up]
    el = np.exp(-1j * np.pi * xl)
    out[~up] = el / (1.0 - el * el)
    return out


def mirror_projection(saddle: complex, crossing: float, direction: complex, reach: float = 8.0) -> tuple:
    """Line parameter of ``-saddle`` when it lies within ``reach`` of the line."""
    rel = (-saddle - crossing) * complex(direction).conjugate()
    return (rel.real,) if abs(rel.imag) <= reach else ()


def _defining_saddle(s: complex) -> complex:
    # saddle of x**-s exp(pi i x**2); principal root (Re >= 0)
    return cmath.sqrt(s / (2j * math.pi)) if s != 0 else 0j


def _reflected_saddle(s: complex) -> complex:
    # saddle of x**(s-1) exp(-pi i x**2) with -pi/4 < arg < 3pi/4
    eta = cmath.sqrt((s - 1.0) / (2j * math.pi))
    if not (-0.25 * math.pi < cmath.phase(eta) <= 0.75 * math.pi):
        eta = -eta
    return eta


def r_defining(s, tol: float = 1e-12, crossing: float | None = None) -> QuadratureResult:
    """R(s) from its defining integral over ``0 ↙ 1``.

    The line is moved to cross the real axis at ``N + 1/2`` (``N`` next to the
    saddle point of ``x**-s exp(pi i x**2)``) and ``sum_{n<=N} n**-s`` is added.
    ``crossing`` forces a particular real-axis crossing (any non-integer
    ``> 0``).  ``x**-s`` uses the principal logarithm.
    """
    s = complex(s)
    _check_height(s)
    x0 = _defining_saddle(s)
    if crossing is None:
        if x0.real - x0.imag < -0.5:
            # saddle not reachable by a line of slope 1 crossing (0, inf):
            # conjugate the integral instead (exact change of variables)
            q = r_reflected(1.0 - s.conjugate(), tol=tol)
            return QuadratureResult(
                q.value.conjugate(), q.est_error, q.nodes_used, {**q.diagnostics, "route": "conjugate"}
            )
        N = max(0, int(math.floor(x0.real - x0.imag)))
        crossing = N + 0.5
    else:
        if crossing <= 0:
            raise DomainError("crossing must be positive")
        N = int(math.floor(crossing))
    # window centred on the projection of the saddle onto the line
    center = ((x0 - crossing) * DOWN_LEFT.conjugate()).real

    def integrand(x):
        return np.exp(-s * np.log(x) + 1j * np.pi * x * x) * _inv_two_i_sin(x)

    path = LinePath(crossing, DOWN_LEFT, default_half_length(tol), center=center)
    q = line_quadrature(path, integrand, tol=tol, include=mirror_projection(x0, crossing, DOWN_LEFT))
    residues = 0j
    if N > 0:
        n = np.arange(N, 0, -1, dtype=float)
        residues = complex(np.sum(np.exp(-s * np.log(n))))
    value = q.value * DOWN_LEFT + residues
    return QuadratureResult(
        value, q.est_error, q.nodes_used, {**q.diagnostics, "crossing": crossing, "route": "direct"}
    )


def r_reflected(s, tol: float = 1e-12, crossing: float | None = None) -> QuadratureResult:
    """``conj(R(1 - conj(s)))`` as the integral over ``0 ↘ 1`` of
    ``x**(s-1) exp(-pi i x**2) / (exp(pi i x) - exp(-pi i x))``.

    The line is moved to ``k ↘ k+1`` next to the saddle point
    ``sqrt((s-1)/(2 pi i))`` and ``sum_{n<=k} n**(s-1)`` is added.
    """
    s = complex(s)
    _check_height(s)
    eta = _reflected_saddle(s)
    if crossing is None:
        k = max(0, int(math.floor(eta.real + eta.imag)))
        crossing = k + 0.5
    else:
        if crossing <= 0:
            raise DomainError("crossing must be positive")
        k = int(math.floor(crossing))
    center = ((eta - crossing) * DOWN_RIGHT.conjugate()).real
    sm1 = s - 1.0

    def integrand(x):
        return np.exp(sm1 * np.log(x) - 1j * np.pi * x * x) * _inv_two_i_sin(x)

    path = LinePath(crossing, DOWN_RIGHT, default_half_length(tol), center=center)
    q = line_quadrature(path, integrand, tol=tol, include=mirror_projection(eta, crossing, DOWN_RIGHT))
    residues = 0j
    if k > 0:
        n = np.arange(k, 0, -1, dtype=float)
        residues = complex(np.sum(np.exp(sm1 * np.log(n))))
    value = q.value * DOWN_RIGHT + residues
    return QuadratureResult(value, q.est_error, q.nodes_used, {**q.diagnostics, "crossing": crossing})
