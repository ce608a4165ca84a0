"""Saddle-point expansion of R(s) around eta = sqrt((s - 1) / (2 pi i)).

For an integer ``k >= m``::

    R(s) = chi(s) { zeta(1-s) - sum_{n<=k} n**(s-1)
                    - P [ trig_k + corr_k + Rem ] },   P = eta**(s-1) exp(-pi i eta**2)

and equivalently ``R(s) = -chi(s) P A (1 + U)`` with
``A = sqrt(2) e^{3 pi i/8} sin(pi eta) / (2 cos(2 pi eta))``.

For large ``Im eta`` the bracket terms are of size ``exp(-pi Im eta)``, which
underflows binary64 around ``Im eta ~ 225``.  Every bracket term in
:class:`ExpansionBreakdown` is therefore stored multiplied by
``exp(scale_log)`` with ``scale_log = pi |Im eta|``; the unscaled values are
available as :class:`ExtComplex` through :meth:`ExpansionBreakdown.unscaled`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .contour import (
    DOWN_RIGHT,
    LinePath,
    QuadratureResult,
    default_half_length,
    line_quadrature,
    mirror_projection,
)
from .errors import BranchError, DomainError, PoleError
from .extcomplex import ExtComplex
from .special import chi, dirichlet_tail, zeta_reference

__all__ = [
    "EtaFrame",
    "ExpansionBreakdown",
    "eta_frame",
    "w_factor",
    "trig_term",
    "main_factor",
    "remainder_R",
    "assemble",
    "leading_term",
    "DIRICHLET_SIGMA",
]

_TWO_PI = 2.0 * math.pi
_SQRT2 = math.sqrt(2.0)
_E3 = cmath.exp(3j * math.pi / 8.0)
_SERIES_RADIUS = 0.2
_SERIES_TERMS = 32
_POLE_GUARD = 1e-12
# zeta(1-s) comes from the Dirichlet series at and below this abscissa
DIRICHLET_SIGMA = -10.0


# -- eta frame ------------------------------------------------------------------


@dataclass(frozen=True)
class EtaFrame:
    """Saddle coordinates attached to ``s``.

    ``eta**2 == (s - 1) / (2 pi i)`` with ``-pi/4 < arg eta <= 3 pi/4`` and
    ``m = floor(eta1 + eta2)``.
    """

    s: complex
    eta: complex
    eta1: float
    eta2: float
    m: int
    arg_eta: float

    @property
    def abs_eta(self) -> float:
        return abs(self.eta)

    @property
    def scale_log(self) -> float:
        return math.pi * abs(self.eta2)


def eta_frame(s) -> EtaFrame:
    """Build the :class:`EtaFrame` of ``s``.

    Raises
    ------
    BranchError
        If ``arg(s - 1)`` is not in ``(0, 2 pi)``, i.e. ``s`` is real and ``>= 1``.
    DomainError
        If ``m`` would be negative.
    """
    s = complex(s)
    sigma, t = s.real, s.imag
    if t == 0.0 and sigma >= 1.0:
        raise BranchError(f"arg(s - 1) must lie in (0, 2 pi); s = {sigma:g} is on the cut")
    theta = math.atan2(t, sigma - 1.0)
    if theta <= 0.0:
        theta += _TWO_PI
    # (s - 1)/(2 pi i) = (t + i(1 - sigma)) / (2 pi), built without rounding the parts
    z = complex(t, 1.0 - sigma) / _TWO_PI
    eta = cmath.sqrt(z)
    arg_eta = 0.5 * theta - 0.25 * math.pi
    if abs(wrap(cmath.phase(eta) - arg_eta)) > 0.5 * math.pi:
        eta = -eta
    eta1, eta2 = eta.real, eta.imag
    m = math.floor(eta1 + eta2)
    if m < 0:
        raise DomainError(f"m = {m} < 0 for s = {s}")
    return EtaFrame(s, eta, eta1, eta2, int(m), arg_eta)


def wrap(phi: float) -> float:
    return math.remainder(phi, _TWO_PI)


# -- w(z) -------------------------------------------------------------------------


def _log_defect(u: np.ndarray) -> np.ndarray:
    """log(1 + u) - u + u**2/2, by series near 0."""
    out = np.empty_like(u)
    small = np.abs(u) < _SERIES_RADIUS
    if np.any(small):
        us = u[small]
        acc = np.zeros_like(us)
        for n in range(_SERIES_TERMS + 2, 2, -1):
            acc = acc * us + ((-1.0) ** (n + 1)) / n
        out[small] = acc * us**3
    big = ~small
    if np.any(big):
        ub = u[big]
        out[big] = np.log1p(ub) - ub + 0.5 * ub * ub
    return out


def _expm1c(e: np.ndarray) -> np.ndarray:
    x, y = e.real, e.imag
    re = np.expm1(x) * np.cos(y) - 2.0 * np.sin(0.5 * y) ** 2
    im = np.exp(x) * np.sin(y)
    return re + 1j * im


def _exponent(z: np.ndarray, eta: complex) -> np.ndarray:
    u = z / eta
    onep = 1.0 + u
    if np.any((onep.imag == 0.0) & (onep.real <= 0.0)):
        raise BranchError("1 + z/eta lies on the cut (-inf, 0]")
    return 2j * math.pi * eta * eta * _log_defect(u)


def w_factor(z, eta):
    """``w(z) = exp{2 pi i eta**2 (log(1 + z/eta) - z/eta + (z/eta)**2/2)} - 1``.

    Accepts scalars or arrays.  Near ``z = 0`` the log defect is summed as a
    power series and the exponential as ``expm1``, so ``w(0) == 0`` exactly
    and small values keep full relative accuracy.

    Raises
    ------
    BranchError
        If ``1 + z/eta`` lies on ``(-inf, 0]``.
    """
    eta = complex(eta)
    if eta == 0:
        raise DomainError("eta must be nonzero")
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    w = _expm1c(_exponent(arr, eta))
    if np.ndim(z) == 0:
        return complex(w[0])
    return w


def _gauss_times_w(z: np.ndarray, eta: complex, shift: float = 0.0) -> np.ndarray:
    # exp(-2 pi i z**2 + shift) * w(z); the difference form avoids inf * 0 far out
    lg = -2j * math.pi * z * z + shift
    e = _exponent(z, eta)
    out = np.empty_like(z)
    near = np.abs(e) < 1.0
    out[near] = np.exp(lg[near]) * _expm1c(e[near])
    far = ~near
    out[far] = np.exp(lg[far] + e[far]) - np.exp(lg[far])
    return out


# -- trigonometric term ------------------------------------------------------------


def _trig_parts(frame: EtaFrame, k: int) -> tuple[ExtComplex, ExtComplex]:
    """``A = sqrt2 e^{3pi i/8} sin(pi eta)/(2 cos 2 pi eta)`` and
    ``B = (-1)^k e^{2 pi i eta - 2 pi i (eta-k)^2} / (2 cos 2 pi eta)``."""
    eta = frame.eta
    sign = -1.0 if k % 2 else 1.0
    if frame.eta2 >= 0:
        q = cmath.exp(2j * math.pi * eta)
        den = 1.0 + q * q
        if abs(den) < _POLE_GUARD:
            raise PoleError(f"cos(2 pi eta) vanishes at eta = {eta}")
        a = ExtComplex.from_log(1j * math.pi * eta) * ExtComplex.from_complex(
            _SQRT2 * _E3 * (q - 1.0) / (2j * den)
        )
        b = ExtComplex.from_log(4j * math.pi * eta - 2j * math.pi * (eta - k) ** 2) * ExtComplex.from_complex(
            sign / den
        )
    else:
        p = cmath.exp(-2j * math.pi * eta)
        den = 1.0 + p * p
        if abs(den) < _POLE_GUARD:
            raise PoleError(f"cos(2 pi eta) vanishes at eta = {eta}")
        a = ExtComplex.from_log(-1j * math.pi * eta) * ExtComplex.from_complex(
            _SQRT2 * _E3 * (1.0 - p) / (2j * den)
        )
        b = ExtComplex.from_log(-2j * math.pi * (eta - k) ** 2) * ExtComplex.from_complex(sign / den)
    return a, b


def main_factor(frame: EtaFrame) -> ExtComplex:
    """``sqrt(2) e^{3 pi i/8} sin(pi eta) / (2 cos 2 pi eta)``."""
    return _trig_parts(frame, frame.m)[0]


def trig_term(frame: EtaFrame, k: int, as_ext: bool = False):
    """The exactly integrable part ``int_{k↘k+1} e^{-2 pi i (x-eta)^2} / (2 i sin pi x) dx``.

    Equal to ``(sqrt2 e^{3pi i/8} sin pi eta - (-1)^k e^{2 pi i eta - 2 pi i (eta-k)^2}) / (2 cos 2 pi eta)``,
    evaluated from ``exp(+-2 pi i eta)`` ratios so that large ``|Im eta|``
    neither overflows nor loses accuracy.  With ``as_ext`` the value is
    returned as :class:`ExtComplex` (the plain complex underflows to 0 once
    ``Im eta`` exceeds about 225).

    Raises
    ------
    PoleError
        If ``|1 + exp(+-4 pi i eta)| < 1e-12``, i.e. ``cos 2 pi eta`` vanishes.
    """
    a, b = _trig_parts(frame, int(k))
    v = a - b
    return v if as_ext else v.to_complex()


# -- remainder integral -------------------------------------------------------------


def _scaled_inv_two_i_sin(x: np.ndarray, scale_log: float) -> np.ndarray:
    out = np.empty_like(x)
    up = x.imag >= 0
    xu = x[up]
    out[up] = np.exp(1j * np.pi * xu + scale_log) / (np.exp(2j * np.pi * xu) - 1.0)
    xl = x[~up]
    out[~up] = np.exp(-1j * np.pi * xl + scale_log) / (1.0 - np.exp(-2j * np.pi * xl))
    return out


def remainder_R(
    frame: EtaFrame,
    tol: float = 1e-12,
    scaled: bool = False,
    k: int | None = None,
    zero_w: bool = False,
) -> QuadratureResult:
    """``int_{m↘m+1} e^{-2 pi i (x-eta)^2} w(x-eta) / (e^{pi i x} - e^{-pi i x}) dx``.

    The line crosses the real axis at ``m + 1/2`` (or ``k + 1/2`` when ``k``
    is given) with direction ``exp(-pi i/4)``.  With ``scaled`` the value
    and error estimate are multiplied by ``exp(pi |eta2|)``, which keeps them
    representable for very large ``eta2``.  ``zero_w`` replaces ``w`` by 0
    (a sanity hook: the result is then exactly 0).
    """
    eta = frame.eta
    line = frame.m if k is None else int(k)
    crossing = line + 0.5
    scale_log = frame.scale_log if scaled else 0.0
    center = ((eta - crossing) * DOWN_RIGHT.conjugate()).real

    def integrand(x):
        if zero_w:
            return np.zeros_like(x)
        return _gauss_times_w(x - eta, eta) * _scaled_inv_two_i_sin(x, scale_log)

    path = LinePath(crossing, DOWN_RIGHT, default_half_length(tol), center=center)
    q = line_quadrature(path, integrand, tol=tol, include=mirror_projection(eta, crossing, DOWN_RIGHT))
    diag = {**q.diagnostics, "crossing": crossing, "scale_log": scale_log}
    return QuadratureResult(q.value * DOWN_RIGHT, q.est_error, q.nodes_used, diag)


# -- assembly -----------------------------------------------------------------------


@dataclass(frozen=True)
class ExpansionBreakdown:
    """Every term of the expansion at ``s`` for a given ``k``.

    Complex fields ``main_term``, ``trig_term``, ``correction_sum``,
    ``remainder``, ``remainder_error`` and ``dirichlet_tail`` are multiplied by
    ``exp(scale_log)``.  ``dirichlet_tail`` is
    ``e^{pi i eta^2} sum_{n>k} (n/eta)^{s-1}``, i.e. ``(zeta(1-s) - sum_{n<=k} n^{s-1}) / P``.
    ``u_value`` is scale free.
    """

    s: complex
    k: int
    frame: EtaFrame
    chi_factor: ExtComplex
    power_factor: ExtComplex
    main_term: complex
    trig_term: complex
    correction_sum: complex
    remainder: complex
    remainder_error: float
    dirichlet_tail: complex
    u_value: complex
    r_value: ExtComplex
    scale_log: float
    zeta_source: str
    diagnostics: dict = field(default_factory=dict, compare=False)

    def unscaled(self, name: str) -> ExtComplex:
        """Field ``name`` divided by ``exp(scale_log)``, as ExtComplex."""
        v = getattr(self, name)
        return ExtComplex.from_complex(v).scaled(-self.scale_log)

    @property
    def r_complex(self) -> complex:
        return self.r_value.to_complex()


def _partial_powers(s: complex, k: int) -> complex:
    if k <= 0:
        return 0j
    n = np.arange(k, 0, -1, dtype=float)
    return complex(np.sum(np.exp((s - 1.0) * np.log(n))))


def _tail(s: complex, k: int, tol: float) -> tuple[ExtComplex, str]:
    """``zeta(1 - s) - sum_{n<=k} n**(s-1)``."""
    if s.real <= DIRICHLET_SIGMA:
        return dirichlet_tail(1.0 - s, k + 1), "dirichlet"
    z = zeta_reference(1.0 - s)
    return ExtComplex.from_complex(z - _partial_powers(s, k)), "reference"


def assemble(s, k: int | None = None, tol: float = 1e-12) -> ExpansionBreakdown:
    """Evaluate R(s) through the saddle-point expansion with cut index ``k``.

    ``k`` defaults to ``m``.  The identity is exact for every ``k >= m``;
    different ``k`` only move terms between the Dirichlet tail, the
    trigonometric term and the correction sum.

    Requires ``Re s < 1``.  For ``Re s <= -10`` the tail of ``zeta(1-s)``
    is summed from its Dirichlet series; otherwise ``zeta_reference`` is used
    (accurate for ``|Im s| <= 100``).

    Raises
    ------
    DomainError
        If ``Re s >= 1`` or ``k < m``.
    PoleError
        If ``cos 2 pi eta`` vanishes (use the contour oracle there).
    """
    s = complex(s)
    if not s.real < 1.0:
        raise DomainError("assemble needs Re s < 1")
    frame = eta_frame(s)
    if k is None:
        k = frame.m
    k = int(k)
    if k < frame.m:
        raise DomainError(f"k = {k} must be >= m = {frame.m}")
    eta = frame.eta
    sc = frame.scale_log

    chi_s = chi(s)
    power = ExtComplex.from_log((s - 1.0) * cmath.log(eta) - 1j * math.pi * eta * eta)
    a, b = _trig_parts(frame, k)

    corr = 0j
    if k > frame.m:
        j = np.arange(frame.m + 1, k + 1, dtype=float)
        zj = j - eta
        signs = np.where(j % 2 == 1, 1.0, -1.0)
        # |exp(-2 pi i (j-eta)^2)| = exp(4 pi (eta1 - j) eta2): fold the scale in
        terms = signs * _gauss_times_w(zj.astype(complex), eta, sc)
        corr = complex(np.sum(terms))

    rem = remainder_R(frame, tol=tol, scaled=True)
    tail, source = _tail(s, k, tol)
    d = (tail / power).scaled(sc)

    a_s = a.scaled(sc).to_complex()
    b_s = b.scaled(sc).to_complex()
    d_s = d.to_complex()
    u = (-d_s + corr + rem.value - b_s) / a_s
    r_value = -(chi_s * power * a * ExtComplex.from_complex(1.0 + u))
    return ExpansionBreakdown(
        s=s,
        k=k,
        frame=frame,
        chi_factor=chi_s,
        power_factor=power,
        main_term=a_s,
        trig_term=a_s - b_s,
        correction_sum=corr,
        remainder=rem.value,
        remainder_error=rem.est_error,
        dirichlet_tail=d_s,
        u_value=u,
        r_value=r_value,
        scale_log=sc,
        zeta_source=source,
        diagnostics={"remainder": rem.diagnostics, "nodes": rem.nodes_used},
    )


def leading_term(s) -> ExtComplex:
    """``(e^{-pi i/8} / sqrt 2) chi(s) eta^{s-1} e^{pi i (eta - eta^2)}``."""
    s = complex(s)
    frame = eta_frame(s)
    c = chi(s)
    if c.is_zero:
        return c
    eta = frame.eta
    lg = (s - 1.0) * cmath.log(eta) + 1j * math.pi * (eta - eta * eta) - 1j * math.pi / 8.0
    return c * ExtComplex.from_log(lg).scaled(-0.5 * math.log(2.0))
