"""Complex numbers stored as (log-modulus, phase).

Factors such as ``exp(pi * eta**2)`` or ``chi(s)`` at ``|s| ~ 1e5`` do not fit
in binary64; products and quotients of them are exact enough in log form.

A single double for ``log|z|`` would cost ``|log|z|| * eps`` of relative
accuracy (about 1e-13 at ``|z| ~ 1e300``), so the log-modulus carries a
low-order correction ``log_lo`` (double-double style) through products,
quotients and conversions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Union

Number = Union[int, float, complex]

_TWO_PI = 2.0 * math.pi
# ln 2 split so that e * _LN2_HI is exact for |e| < 2**21
_LN2_HI = 6.93147180369123816490e-01
_LN2_LO = 1.90821492927058770002e-10


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _log_dd(r: float) -> tuple[float, float]:
    """``log(r)`` for finite ``r > 0`` as an unevaluated sum ``hi + lo``."""
    m, e = math.frexp(r)
    return _two_sum(e * _LN2_HI, e * _LN2_LO + math.log(m))


def wrap_phase(phi: float) -> float:
    """Reduce an angle to the interval (-pi, pi]."""
    if -math.pi < phi <= math.pi:
        return phi
    r = math.remainder(phi, _TWO_PI)
    if r <= -math.pi:
        r += _TWO_PI
    return r


@dataclass(frozen=True)
class ExtComplex:
    """Complex value ``exp(log_modulus + i*phase)``.

    ``log_modulus == -inf`` encodes zero (phase is then 0).  ``log_lo`` is
    the low-order part of the log-modulus; it is below half an ulp of
    ``log_modulus`` and is ignored by equality.
    """

    log_modulus: float
    phase: float = 0.0
    log_lo: float = field(default=0.0, compare=False, repr=False)

    def __post_init__(self):
        lm = float(self.log_modulus)
        if math.isnan(lm) or lm == math.inf:
            raise ValueError(f"invalid log-modulus {self.log_modulus!r}")
        if lm == -math.inf:
            object.__setattr__(self, "log_modulus", lm)
            object.__setattr__(self, "phase", 0.0)
            object.__setattr__(self, "log_lo", 0.0)
            return
        ph = float(self.phase)
        if not math.isfinite(ph):
            raise ValueError(f"invalid phase {self.phase!r}")
        lo = float(self.log_lo)
        if lo:
            lm, lo = _two_sum(lm, lo) if math.isfinite(lo) else (lm, 0.0)
        object.__setattr__(self, "log_modulus", lm)
        object.__setattr__(self, "log_lo", lo)
        object.__setattr__(self, "phase", wrap_phase(ph))

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls) -> "ExtComplex":
        return cls(-math.inf, 0.0)

    @classmethod
    def one(cls) -> "ExtComplex":
        return cls(0.0, 0.0)

    @classmethod
    def from_complex(cls, z: Number) -> "ExtComplex":
        z = complex(z)
        if z == 0:
            return cls.zero()
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError(f"cannot represent non-finite value {z!r}")
        # hypot avoids spurious overflow for components near the float limit
        hi, lo = _log_dd(math.hypot(z.real, z.imag))
        return cls(hi, math.atan2(z.imag, z.real), lo)

    @classmethod
    def from_log(cls, w: Number) -> "ExtComplex":
        """Return ``exp(w)`` for a complex logarithm ``w``."""
        w = complex(w)
        return cls(w.real, w.imag)

    # -- conversion ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.log_modulus == -math.inf

    def to_complex(self) -> complex:
        """Ordinary complex value; overflows to ``inf`` and underflows to 0."""
        if self.is_zero:
            return 0j
        if self.log_modulus > 709.78:
            raise OverflowError(f"|z| = exp({self.log_modulus:.6g}) exceeds binary64")
        return cmath.rect(math.exp(self.log_modulus) * math.exp(self.log_lo), self.phase)

    def __complex__(self) -> complex:
        return self.to_complex()

    def log(self) -> complex:
        """Principal logarithm."""
        if self.is_zero:
            raise ValueError("log of zero")
        return complex(self.log_modulus, self.phase)

    def log10_abs(self) -> float:
        return self.log_modulus / math.log(10.0)

    def __abs__(self) -> float:
        if self.is_zero:
            return 0.0
        if self.log_modulus >= 709.78:
            return math.inf
        return math.exp(self.log_modulus) * math.exp(self.log_lo)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "ExtComplex":
        if isinstance(other, ExtComplex):
            return other
        if isinstance(other, (int, float, complex)):
            return ExtComplex.from_complex(other)
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return ExtComplex.zero()
        hi, lo = _two_sum(self.log_modulus, other.log_modulus)
        return ExtComplex(hi, self.phase + other.phase, lo + self.log_lo + other.log_lo)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ZeroDivisionError("division by ExtComplex zero")
        if self.is_zero:
            return ExtComplex.zero()
        hi, lo = _two_sum(self.log_modulus, -other.log_modulus)
        return ExtComplex(hi, self.phase - other.phase, lo + self.log_lo - other.log_lo)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self) -> "ExtComplex":
        if self.is_zero:
            return self
        return ExtComplex(self.log_modulus, self.phase + math.pi, self.log_lo)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        big, small = (self, other) if self.log_modulus >= other.log_modulus else (other, self)
        rel = (small.log_modulus - big.log_modulus) + (small.log_lo - big.log_lo)
        if rel < -800.0:
            return big
        z = 1.0 + cmath.rect(math.exp(rel), small.phase - big.phase)
        if z == 0:
            return ExtComplex.zero()
        zh, zl = _log_dd(abs(z))
        hi, lo = _two_sum(big.log_modulus, zh)
        return ExtComplex(hi, big.phase + math.atan2(z.imag, z.real), lo + zl + big.log_lo)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __pow__(self, n: int) -> "ExtComplex":
        if not isinstance(n, int):
            return NotImplemented
        if self.is_zero:
            if n <= 0:
                raise ZeroDivisionError("zero to a non-positive power")
            return self
        return ExtComplex(n * self.log_modulus, n * self.phase, n * self.log_lo)

    def conjugate(self) -> "ExtComplex":
        return ExtComplex(self.log_modulus, -self.phase, self.log_lo)

    def scaled(self, log_factor: float) -> "ExtComplex":
        """Multiply by the positive real ``exp(log_factor)``."""
        if self.is_zero:
            return self
        hi, lo = _two_sum(self.log_modulus, float(log_factor))
        return ExtComplex(hi, self.phase, lo + self.log_lo)

    def isclose(self, other: "ExtComplex", rel: float = 1e-12) -> bool:
        """Relative closeness ``|a - b| <= rel * max(|a|, |b|)`` in log form."""
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        diff = self - other
        if diff.is_zero:
            return True
        return diff.log_modulus <= math.log(rel) + max(self.log_modulus, other.log_modulus)

    def __repr__(self) -> str:
        return f"ExtComplex(log_modulus={self.log_modulus!r}, phase={self.phase!r})"


def ext_sum(values) -> ExtComplex:
    """Sum an iterable of ExtComplex (or plain numbers) with a common scale."""
    items = [v if isinstance(v, ExtComplex) else ExtComplex.from_complex(v) for v in values]
    items = [v for v in items if not v.is_zero]
    if not items:
        return ExtComplex.zero()
    top = max(v.log_modulus for v in items)
    acc = 0j
    for v in items:
        rel = (v.log_modulus - top) + v.log_lo
        if rel > -800.0:
            acc += cmath.rect(math.exp(rel), v.phase)
    if acc == 0:
        return ExtComplex.zero()
    return ExtComplex.from_complex(acc).scaled(top)
