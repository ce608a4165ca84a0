"""Region predicates and the explicit bounds for the remainder and for U.

Bounds are composed from log-space components so that summands such as
``exp(-4 pi (eta2 - 1/2) eta2)`` at ``eta2 ~ 16`` (about ``1e-1388``) are
kept exactly instead of flushing to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import BranchError, DomainError, PreconditionError
from .expansion import EtaFrame, eta_frame

__all__ = [
    "RegionParams",
    "ConfigError",
    "BoundCertificate",
    "RegionVerdict",
    "LABELS",
    "classify",
    "g_conditions",
    "bound_remainder",
    "log_bound_remainder",
    "bound_U",
    "zero_free_verdict",
    "trivial_zero_index",
]

LABELS = ("G", "G_alpha", "Wedge", "Subpoly", "H")
CONFIG_KEYS = ("radius_G", "radius_wedge", "slope", "parabola", "alpha", "A", "t0")
U_SUM_CONSTANT = 1.10942
_LOG10 = math.log(10.0)


class ConfigError(DomainError):
    """Malformed region configuration."""


@dataclass(frozen=True)
class RegionParams:
    """Constants of the regions.

    ``A`` and ``t0`` of the sub-polynomial region have no published values;
    the defaults ``A = 1``, ``t0 = 1e6`` are unverified and every verdict
    based on them is flagged conditional.  ``extras`` holds free parameters
    (e.g. ``B``, ``r``) for experiments; no predicate reads them.
    """

    radius_G: float = 5408.0 * math.pi
    radius_wedge: float = 3528.0 * math.pi
    slope: float = 99.0 / 20.0
    parabola: float = 225.0 * math.pi
    alpha: float = math.pi / 8.0
    A: float = 1.0
    t0: float = 1e6
    extras: Mapping[str, float] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for name in CONFIG_KEYS:
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0):
                raise ConfigError(f"{name} must be positive and finite, got {v!r}")
            object.__setattr__(self, name, v)
        if not self.alpha < math.pi / 4.0:
            raise ConfigError(f"alpha must be < pi/4, got {self.alpha!r}")

    @property
    def subpoly_defaults(self) -> bool:
        return self.A == 1.0 and self.t0 == 1e6

    @classmethod
    def from_text(cls, text: str) -> "RegionParams":
        """Parse ``key = value`` lines; ``#`` starts a comment.

        Keys are exactly those of :data:`CONFIG_KEYS`; missing keys keep their
        defaults, unknown or repeated keys raise :class:`ConfigError`.
        """
        values: dict[str, float] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
            key, val = (p.strip() for p in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            if key in values:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            try:
                values[key] = float(val)
            except ValueError:
                raise ConfigError(f"line {lineno}: {key} is not a number: {val!r}") from None
        return cls(**values)

    @classmethod
    def from_file(cls, path) -> "RegionParams":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        return cls.from_text(text)

    def to_text(self) -> str:
        return "".join(f"{k} = {getattr(self, k)!r}\n" for k in CONFIG_KEYS)

    def with_(self, **kw) -> "RegionParams":
        return replace(self, **kw)


# -- predicates -------------------------------------------------------------------


def _frame_or_none(s: complex) -> EtaFrame | None:
    try:
        return eta_frame(s)
    except (BranchError, DomainError):
        return None


def g_conditions(s, params: RegionParams | None = None) -> dict:
    """The four inequalities defining ``G``, evaluated separately."""
    s = complex(s)
    p = params or RegionParams()
    sigma, t = s.real, s.imag
    return {
        "half_plane": sigma < 0.0,
        "radius": abs(s - 1.0) >= p.radius_G,
        "slope": t >= -p.slope * (1.0 - sigma),
        "parabola": (1.0 - sigma) ** 2 >= p.parabola * t,
    }


def in_G(s: complex, p: RegionParams) -> bool:
    return all(g_conditions(s, p).values())


def in_G_alpha(s: complex, p: RegionParams) -> bool:
    return abs(s.imag) * math.tan(2.0 * p.alpha) <= 1.0 - s.real


def in_wedge(s: complex, p: RegionParams) -> bool:
    return 1.0 - s.real > abs(s.imag) and abs(s - 1.0) >= p.radius_wedge


def in_subpoly(s: complex, p: RegionParams) -> bool:
    t = s.imag
    if not t > p.t0:
        return False
    return 1.0 - s.real >= p.A * t**0.4 * math.log(t)


def in_H(s: complex) -> bool:
    f = _frame_or_none(s)
    return f is not None and f.eta1 >= 2.0 and f.eta2 >= 2.0


def classify(s, params: RegionParams | None = None) -> frozenset:
    """Labels of the regions containing ``s``.

    * ``G``: ``sigma < 0``, ``|s-1| >= radius_G``, ``t >= -slope (1-sigma)``,
      ``(1-sigma)^2 >= parabola * t``;
    * ``G_alpha``: ``|t| tan(2 alpha) <= 1 - sigma``;
    * ``Wedge``: ``1 - sigma > |t|`` and ``|s-1| >= radius_wedge``;
    * ``Subpoly``: ``t > t0`` and ``1 - sigma >= A t^(2/5) log t``;
    * ``H``: ``eta1 >= 2`` and ``eta2 >= 2``.

    The inequalities are tested on ``s`` literally; the ``eta``-plane
    reformulations are not used here.
    """
    s = complex(s)
    p = params or RegionParams()
    out = set()
    if in_G(s, p):
        out.add("G")
    if in_G_alpha(s, p):
        out.add("G_alpha")
    if in_wedge(s, p):
        out.add("Wedge")
    if in_subpoly(s, p):
        out.add("Subpoly")
    if in_H(s):
        out.add("H")
    return frozenset(out)


def trivial_zero_index(s, tol: float = 1e-12) -> int | None:
    """``n`` if ``s == -2n`` for a positive integer ``n`` (within ``tol``)."""
    s = complex(s)
    if abs(s.imag) > tol or s.real > -1.0:
        return None
    n = round(-s.real / 2.0)
    return int(n) if n >= 1 and abs(s.real + 2.0 * n) <= tol else None


@dataclass(frozen=True)
class RegionVerdict:
    verdict: str  # zero_free | trivial_only | unknown
    labels: frozenset
    conditional: bool = False
    trivial_n: int | None = None
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "labels": sorted(self.labels),
            "conditional": self.conditional,
            "trivial_n": self.trivial_n,
            "note": self.note,
        }


def zero_free_verdict(s, params: RegionParams | None = None) -> RegionVerdict:
    """What the proven regions say about zeros of R near ``s``.

    ``trivial_only`` inside ``G`` or the wedge (the only zeros there are
    ``s = -2n``, tagged in ``trivial_n``); ``zero_free`` inside the
    sub-polynomial region, always ``conditional`` because its constants are
    caller-supplied; ``unknown`` elsewhere.
    """
    s = complex(s)
    p = params or RegionParams()
    labels = classify(s, p)
    if "G" in labels or "Wedge" in labels:
        return RegionVerdict("trivial_only", labels, False, trivial_zero_index(s))
    if "Subpoly" in labels:
        note = "unverified defaults A=1, t0=1e6" if p.subpoly_defaults else "caller-supplied A, t0"
        return RegionVerdict("zero_free", labels, True, None, note)
    return RegionVerdict("unknown", labels)


# -- bounds -------------------------------------------------------------------------


def _safe_exp(x: float) -> float:
    return math.exp(x) if x < 709.78 else math.inf


def _log_sinh(x: float) -> float:
    return x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0)


def _logaddexp(*xs: float) -> float:
    return float(np.logaddexp.reduce(np.array(xs, dtype=float)))


def _remainder_parts(frame: EtaFrame) -> tuple[float, float, str]:
    """log of ``min(4, 29 e^{-pi eta2}) / |eta|`` and of ``15 e^{-pi |eta|^2/32} / |eta|``."""
    r = abs(frame.eta)
    log_min29 = math.log(29.0) - math.pi * frame.eta2
    if log_min29 < math.log(4.0):
        lm, branch = log_min29, "29*exp(-pi*eta2)"
    else:
        lm, branch = math.log(4.0), "4"
    return lm - math.log(r), math.log(15.0) - math.pi * r * r / 32.0 - math.log(r), branch


def _check_remainder_pre(frame: EtaFrame):
    s = frame.s
    if not (s.real < 1.0 and abs(s - 1.0) >= 4.0 * math.pi):
        raise PreconditionError(f"remainder bound needs sigma < 1 and |s-1| >= 4 pi (s = {s})")


def log_bound_remainder(frame: EtaFrame) -> float:
    """Natural log of :func:`bound_remainder`."""
    _check_remainder_pre(frame)
    a, b, _ = _remainder_parts(frame)
    return _logaddexp(a, b)


def bound_remainder(frame: EtaFrame) -> float:
    """``min(4, 29 e^{-pi eta2}) / |eta| + 15 e^{-pi |eta|^2 / 32} / |eta|``.

    Raises
    ------
    PreconditionError
        Unless ``sigma < 1`` and ``|s - 1| >= 4 pi``.
    """
    _check_remainder_pre(frame)
    a, b, _ = _remainder_parts(frame)
    return math.exp(a) + math.exp(b)


@dataclass(frozen=True)
class BoundCertificate:
    """Evaluated bounds at one ``eta``.

    ``components`` holds the summands as plain floats (0.0 on underflow)
    and ``log_components`` their natural logs, which are always finite.
    """

    r_bound: float
    u_bound: float
    components: dict
    log_components: dict
    min_branch: str
    log_space: bool = True

    @property
    def log_u_bound(self) -> float:
        return _logaddexp(*(self.log_components[k] for k in ("first", "second", "third")))

    def as_dict(self) -> dict:
        return {
            "r_bound": self.r_bound,
            "u_bound": self.u_bound,
            "log_u_bound": self.log_u_bound,
            "components": dict(self.components),
            "log10_components": {k: v / _LOG10 for k, v in self.log_components.items()},
            "min_branch": self.min_branch,
            "log_space": self.log_space,
        }


def bound_U(frame: EtaFrame) -> BoundCertificate:
    """Upper bound for ``|U|`` on the set ``eta1 >= 2, eta2 >= 2``.

    Three summands, with ``F = (sqrt2 / (pi eta2)) (1 + pi eta2) e^{pi eta2}``:

    * first: ``1.10942 F exp(-2 pi eta1^2 eta2^2 / |eta|^2)`` (Dirichlet tail);
    * second: ``F`` times the remainder bound;
    * third: ``e^{-4 pi (eta2 - 1/2) eta2} / (sqrt2 sinh(pi eta2))``.

    Raises
    ------
    PreconditionError
        Unless ``eta1 >= 2`` and ``eta2 >= 2``.
    """
    e1, e2 = frame.eta1, frame.eta2
    if not (e1 >= 2.0 and e2 >= 2.0):
        raise PreconditionError(f"U bound needs eta1 >= 2 and eta2 >= 2 (eta = {frame.eta})")
    r2 = e1 * e1 + e2 * e2
    x = math.pi * e2
    log_f = 0.5 * math.log(2.0) - math.log(x) + math.log1p(x) + x
    log_first = math.log(U_SUM_CONSTANT) + log_f - 2.0 * math.pi * e1 * e1 * e2 * e2 / r2
    lr_min, lr_gauss, branch = _remainder_parts(frame)
    log_rb = _logaddexp(lr_min, lr_gauss)
    log_second = log_f + log_rb
    log_third = -4.0 * math.pi * (e2 - 0.5) * e2 - 0.5 * math.log(2.0) - _log_sinh(x)
    logs = {
        "first": log_first,
        "second": log_second,
        "third": log_third,
        "factor": log_f,
        "r_min_term": lr_min,
        "r_gauss_term": lr_gauss,
    }
    comps = {k: _safe_exp(v) for k, v in logs.items()}
    r_bound = comps["r_min_term"] + comps["r_gauss_term"]
    u_bound = _safe_exp(_logaddexp(log_first, log_second, log_third))
    return BoundCertificate(r_bound, u_bound, comps, logs, branch)
