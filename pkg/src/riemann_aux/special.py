"""Complex log-gamma, the functional-equation factor chi, and zeta.

All routines take and return Python scalars; they are pure and thread-safe.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np
from scipy.special import bernoulli

from .errors import DomainError, PoleError
from .extcomplex import ExtComplex

__all__ = [
    "log_gamma",
    "chi",
    "log_chi",
    "zeta_dirichlet",
    "zeta_reference",
    "dirichlet_tail",
]

LOG_PI = math.log(math.pi)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_SHIFT_THRESHOLD = 10.0
_N_STIRLING = 14


@lru_cache(maxsize=None)
def _bernoulli_even(kmax: int) -> np.ndarray:
    """B_2, B_4, ..., B_{2 kmax} as floats."""
    b = bernoulli(2 * kmax)
    return np.array([b[2 * k] for k in range(1, kmax + 1)], dtype=float)


@lru_cache(maxsize=None)
def _stirling_coefficients() -> tuple:
    b = _bernoulli_even(_N_STIRLING)
    return tuple(b[k - 1] / (2 * k * (2 * k - 1)) for k in range(1, _N_STIRLING + 1))


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _stirling(z: complex) -> complex:
    # valid for |z| >= 10 and Re z > 0
    coeffs = _stirling_coefficients()
    zinv = 1.0 / z
    zinv2 = zinv * zinv
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * zinv2 + c
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + acc * zinv


def _log_gamma_right(z: complex) -> complex:
    # Re z >= 1/2: shift upward until |z| clears the Stirling threshold
    if abs(z) >= _SHIFT_THRESHOLD:
        return _stirling(z)
    n = int(math.ceil(_SHIFT_THRESHOLD - z.real))
    correction = sum(cmath.log(z + k) for k in range(n))
    return _stirling(z + n) - correction


def _log_sin_pi_upper(z: complex) -> complex:
    # analytic branch of log(sin(pi z)) on Im z >= 0; stable for large Im z
    return -1j * math.pi * z + cmath.log(1.0 - cmath.exp(2j * math.pi * z)) + cmath.log(0.5j)


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z).

    The branch is the one analytic on the plane cut along the negative real
    axis (the same determination as ``scipy.special.loggamma``), so
    ``log_gamma(z + 1) == log(z) + log_gamma(z)`` away from the cut.

    Raises
    ------
    PoleError
        If ``z`` is a non-positive integer.
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    if z.real >= 0.5:
        return _log_gamma_right(z)
    if z.imag < 0:
        return log_gamma(z.conjugate()).conjugate()
    # reflection; the branch constant is zero for this choice of log sin
    return LOG_PI - _log_sin_pi_upper(z) - _log_gamma_right(1.0 - z)


def _odd_positive_integer(s: complex) -> bool:
    return s.imag == 0.0 and s.real >= 1.0 and s.real == math.floor(s.real) and int(s.real) % 2 == 1


def _even_nonpositive_integer(s: complex) -> bool:
    return s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real) and int(s.real) % 2 == 0


def log_chi(s) -> complex:
    """log chi(s) = (s - 1/2) log pi + log Gamma((1-s)/2) - log Gamma(s/2).

    Raises ``PoleError`` at the poles and zeros of chi; use :func:`chi` when
    zeros must be represented.
    """
    s = complex(s)
    if _odd_positive_integer(s):
        raise PoleError(f"chi has a pole at s = {s.real:g}")
    if _even_nonpositive_integer(s):
        raise PoleError(f"chi vanishes at s = {s.real:g}; log undefined")
    return (s - 0.5) * LOG_PI + log_gamma((1.0 - s) / 2.0) - log_gamma(s / 2.0)


def chi(s) -> ExtComplex:
    """Factor of the functional equation ``zeta(s) = chi(s) zeta(1 - s)``.

    Computed in log space, so the result survives ``|chi| = exp(+-1e6)``.
    Exact zeros at ``s = 0, -2, -4, ...`` are detected before any log-gamma
    call.
    """
    s = complex(s)
    if _even_nonpositive_integer(s):
        return ExtComplex.zero()
    return ExtComplex.from_log(log_chi(s))


# -- zeta -----------------------------------------------------------------


def zeta_dirichlet(z, tol: float = 1e-12) -> complex:
    """zeta(z) for Re z >= 2 from its Dirichlet series.

    Terms ``n**-z`` are summed for ``n < N``; the remainder is replaced by the
    integral comparison ``N**(1-z)/(z-1) + N**(-z)/2``.  ``N`` is chosen so the
    first neglected correction ``|z| N**(-Re z - 1) / 12`` is below ``tol``.
    """
    z = complex(z)
    sigma = z.real
    if not sigma >= 2.0:
        raise DomainError(f"zeta_dirichlet needs Re z >= 2, got {sigma:g}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    n_cut = (abs(z) / (12.0 * tol)) ** (1.0 / (sigma + 1.0))
    N = int(min(max(math.ceil(n_cut), 2), 10_000_000))
    n = np.arange(1, N, dtype=float)
    # sum smallest terms first
    terms = np.exp(-z * np.log(n[::-1]))
    head = complex(np.sum(terms))
    logN = math.log(N)
    tail = cmath.exp((1.0 - z) * logN) / (z - 1.0) + 0.5 * cmath.exp(-z * logN)
    return head + tail


def dirichlet_tail(z, start: int, rel_tol: float = 1e-17) -> ExtComplex:
    """``sum_{n >= start} n**(-z)`` in log form, for ``Re z > 1``.

    The first ``max(20, 2|z|)`` terms are summed smallest first; the rest is
    the Euler-Maclaurin tail, truncated when a correction drops below
    ``rel_tol`` of the total.  Everything is scaled by ``|start**-z|``.
    """
    z = complex(z)
    if z.real <= 1.0:
        raise DomainError("dirichlet_tail needs Re z > 1")
    if start < 1:
        raise DomainError("start must be >= 1")
    lead_re = -z.real * math.log(start)
    N = start + int(max(20, math.ceil(2.0 * abs(z))))
    n = np.arange(N - 1, start - 1, -1, dtype=float)
    head = complex(np.sum(np.exp(-z * np.log(n) - lead_re)))
    NZ = cmath.exp(-z * math.log(N) - lead_re)
    total = head + N * NZ / (z - 1.0) + 0.5 * NZ
    b = _bernoulli_even(30)
    poch = z
    power = NZ / N
    fact = 2.0
    for k in range(1, 31):
        term = b[k - 1] / fact * poch * power
        total += term
        if abs(term) <= rel_tol * abs(total):
            break
        poch *= (z + 2 * k - 1) * (z + 2 * k)
        power /= N * N
        fact *= (2 * k + 1) * (2 * k + 2)
    return ExtComplex.from_complex(total).scaled(lead_re)


def _euler_maclaurin(z: complex, tol: float) -> complex:
    N = int(max(20, math.ceil(abs(z) + 10)))
    n = np.arange(1, N, dtype=float)
    head = complex(np.sum(np.exp(-z * np.log(n[::-1]))))
    logN = math.log(N)
    NZ = cmath.exp(-z * logN)
    total = head + N * NZ / (z - 1.0) + 0.5 * NZ
    b = _bernoulli_even(60)
    # term_k = B_2k/(2k)! * z(z+1)...(z+2k-2) * N^(-z-2k+1)
    poch = z
    power = NZ / N
    fact = 2.0
    scale = abs(total) if total != 0 else 1.0
    for k in range(1, 61):
        term = b[k - 1] / fact * poch * power
        total += term
        if abs(term) <= tol * scale:
            return total
        poch *= (z + 2 * k - 1) * (z + 2 * k)
        power /= N * N
        fact *= (2 * k + 1) * (2 * k + 2)
    return total


def zeta_reference(z, tol: float = 1e-15) -> complex:
    """zeta(z) for any ``z != 1`` (Euler-Maclaurin plus the functional equation).

    Supported accuracy: relative 1e-10 for ``|Im z| <= 100``.
    """
    z = complex(z)
    if z == 1:
        raise PoleError("zeta has a pole at z = 1")
    if z.real < -0.5:
        c = chi(z)
        if c.is_zero:
            return 0j
        return (c * ExtComplex.from_complex(_euler_maclaurin(1.0 - z, tol))).to_complex()
    return _euler_maclaurin(z, tol)
