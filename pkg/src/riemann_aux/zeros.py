"""Zero counting and refinement for R(s).

Zeros are counted with the argument principle on rectangle boundaries and
polished by Newton's method with a central-difference derivative.  R is
evaluated either by contour quadrature (``oracle``) or by the saddle-point
expansion (``expansion``); values are handled as :class:`ExtComplex`, so
only phases and log-moduli enter the computations.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

import numpy as np

from .contour import MAX_ORACLE_HEIGHT, r_defining
from .errors import BoundaryZeroError, ConvergenceError, DomainError
from .expansion import assemble
from .extcomplex import ExtComplex

__all__ = [
    "Rectangle",
    "ZeroRecord",
    "ScanReport",
    "EVALUATORS",
    "evaluate",
    "select_evaluator",
    "local_log_scale",
    "winding_count",
    "refine_zero",
    "scan_region",
    "scan_region_detailed",
    "records_to_jsonl",
    "records_to_csv",
    "CSV_COLUMNS",
]

EVALUATORS = ("oracle", "expansion")
CSV_COLUMNS = ("re", "im", "kind", "residual", "evaluator", "newton_iters")
TRIVIAL_RADIUS = 1e-4
DEDUP_TOL = 1e-6
GUARD = 1e-9
SCALE_RADIUS = 0.1
ORACLE_MIN_SIGMA = -200.0
_HALF_PI = 0.5 * math.pi
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Rectangle:
    sigma_min: float
    sigma_max: float
    t_min: float
    t_max: float

    def __post_init__(self):
        vals = (self.sigma_min, self.sigma_max, self.t_min, self.t_max)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("rectangle bounds must be finite")
        if not (self.sigma_min < self.sigma_max and self.t_min < self.t_max):
            raise DomainError(f"degenerate rectangle {vals}")

    @classmethod
    def parse(cls, text: str) -> "Rectangle":
        """``"sigma_min,sigma_max,t_min,t_max"``."""
        parts = text.split(",")
        if len(parts) != 4:
            raise ValueError(f"expected 4 comma-separated numbers, got {text!r}")
        return cls(*(float(p) for p in parts))

    def contains(self, s: complex, pad: float = 0.0) -> bool:
        return (
            self.sigma_min - pad <= s.real <= self.sigma_max + pad
            and self.t_min - pad <= s.imag <= self.t_max + pad
        )

    def corners(self) -> list[complex]:
        """Counter-clockwise from the lower-left corner."""
        return [
            complex(self.sigma_min, self.t_min),
            complex(self.sigma_max, self.t_min),
            complex(self.sigma_max, self.t_max),
            complex(self.sigma_min, self.t_max),
        ]

    def grown(self, d: float) -> "Rectangle":
        return Rectangle(self.sigma_min - d, self.sigma_max + d, self.t_min - d, self.t_max + d)

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.sigma_min + self.sigma_max), 0.5 * (self.t_min + self.t_max))


@dataclass(frozen=True)
class ZeroRecord:
    """A located zero of R.

    ``residual`` is ``|R(location)|`` divided by the largest ``|R|`` on the
    circle of radius 0.1 around the location.  All locations are computed
    here; none are published reference values.
    """

    location: complex
    kind: str
    residual: float
    evaluator: str
    newton_iters: int

    def row(self) -> dict:
        return {
            "re": self.location.real,
            "im": self.location.imag,
            "kind": self.kind,
            "residual": self.residual,
            "evaluator": self.evaluator,
            "newton_iters": self.newton_iters,
        }


# -- evaluation ------------------------------------------------------------------


def select_evaluator(s: complex) -> str:
    """``oracle`` for ``|t| <= 300`` and ``sigma >= -200``, the expansion elsewhere.

    Below ``sigma = -200`` the integrand of the oracle leaves binary64 range.
    """
    s = complex(s)
    if abs(s.imag) <= MAX_ORACLE_HEIGHT and s.real >= ORACLE_MIN_SIGMA:
        return "oracle"
    return "expansion"


def evaluate(s, evaluator: str = "auto", tol: float = 1e-12) -> tuple[ExtComplex, str]:
    """R(s) as ExtComplex together with the evaluator actually used."""
    s = complex(s)
    name = select_evaluator(s) if evaluator == "auto" else evaluator
    if name == "oracle":
        return ExtComplex.from_complex(r_defining(s, tol=tol).value), name
    if name == "expansion":
        return assemble(s, tol=tol).r_value, name
    raise ValueError(f"unknown evaluator {evaluator!r}")


def _evaluator(evaluator: str, tol: float) -> Callable[[complex], ExtComplex]:
    if evaluator not in ("auto",) + EVALUATORS:
        raise ValueError(f"unknown evaluator {evaluator!r}")
    return lambda s: evaluate(s, evaluator, tol)[0]


def local_log_scale(f: Callable[[complex], ExtComplex], s: complex, radius: float = SCALE_RADIUS, samples: int = 8) -> float:
    """log of ``max |R|`` on a small circle around ``s``.

    Used to normalise residuals; unlike ``|chi(s) eta^(s-1) e^(-pi i eta^2)|``
    it does not vanish at the trivial zeros.
    """
    ang = np.arange(samples) * (_TWO_PI / samples) + 0.1
    logs = [f(s + radius * complex(math.cos(a), math.sin(a))).log_modulus for a in ang]
    return max(logs)


class _Walker:
    """Accumulates the continuous change of arg R along segments."""

    def __init__(self, f: Callable[[complex], ExtComplex], initial_step: float = 0.25, max_depth: int = 40):
        self.f = f
        self.cache: dict[complex, ExtComplex] = {}
        self.initial_step = initial_step
        self.max_depth = max_depth

    def value(self, s: complex) -> ExtComplex:
        v = self.cache.get(s)
        if v is None:
            v = self.f(s)
            self.cache[s] = v
            if v.is_zero:
                raise BoundaryZeroError(f"R vanishes on the contour at {s}")
        return v

    def _check_small(self, s: complex, neighbours: Iterable[ExtComplex]):
        v = self.value(s)
        ref = max(n.log_modulus for n in neighbours)
        if v.log_modulus < ref + math.log(GUARD):
            scale = local_log_scale(self.value, s)
            if v.log_modulus < scale + math.log(GUARD):
                raise BoundaryZeroError(f"|R| is below {GUARD:g} x local scale on the contour at {s}")

    def segment(self, a: complex, b: complex) -> float:
        n = max(2, int(math.ceil(abs(b - a) / self.initial_step)))
        pts = [a + (b - a) * (k / n) for k in range(n + 1)]
        vals = [self.value(p) for p in pts]
        for k, p in enumerate(pts):
            self._check_small(p, [vals[x] for x in (k - 1, k + 1) if 0 <= x <= n])
        total = 0.0
        for p, q in zip(pts[:-1], pts[1:]):
            total += self._refine(p, q, 0)
        return total

    def _refine(self, p: complex, q: complex, depth: int) -> float:
        fp, fq = self.value(p), self.value(q)
        m = 0.5 * (p + q)
        fm = self.value(m)
        self._check_small(m, (fp, fq))
        d = math.remainder(fq.phase - fp.phase, _TWO_PI)
        d1 = math.remainder(fm.phase - fp.phase, _TWO_PI)
        d2 = math.remainder(fq.phase - fm.phase, _TWO_PI)
        if abs(d) < _HALF_PI and abs(d1 + d2 - d) < 1e-6:
            return d1 + d2
        if depth >= self.max_depth or abs(q - p) < 1e-12 * max(1.0, abs(p)):
            scale = local_log_scale(self.value, m)
            if fm.log_modulus < scale + math.log(GUARD):
                raise BoundaryZeroError(f"R vanishes near the contour at {m}")
            raise ConvergenceError(f"boundary step underflow near {m}")
        return self._refine(p, m, depth + 1) + self._refine(m, q, depth + 1)


def _turns(total: float, where: str) -> int:
    w = total / _TWO_PI
    n = round(w)
    if abs(w - n) > 0.05:
        raise ConvergenceError(f"winding number {w:.4f} is not close to an integer ({where})")
    return int(n)


def winding_count(rect: Rectangle, tol: float = 1e-12, evaluator: str = "auto", _walker: _Walker | None = None) -> int:
    """Number of zeros of R inside ``rect`` (argument principle).

    The boundary is walked with adaptive bisection so that successive phase
    changes stay below pi/2 and agree with the midpoint split.

    Raises
    ------
    BoundaryZeroError
        If ``|R|`` on the boundary falls below ``1e-9`` times its local scale.
    ConvergenceError
        If the step underflows or the total is not an integer multiple of 2 pi.
    """
    walker = _walker or _Walker(_evaluator(evaluator, tol))
    c = rect.corners()
    total = sum(walker.segment(c[i], c[(i + 1) % 4]) for i in range(4))
    return _turns(total, f"rectangle {rect}")


# -- Newton ---------------------------------------------------------------------------


def _classify(z: complex) -> str:
    n = round(-z.real / 2.0)
    if n >= 1 and abs(z - complex(-2.0 * n, 0.0)) <= TRIVIAL_RADIUS:
        return "trivial"
    return "nontrivial"


def residual_of(z: complex, evaluator: str = "auto", tol: float = 1e-12) -> float:
    f = _evaluator(evaluator, tol)
    v = f(z)
    if v.is_zero:
        return 0.0
    return math.exp(min(0.0, v.log_modulus - local_log_scale(f, z)))


def refine_zero(seed, tol: float = 1e-10, evaluator: str = "auto", max_iter: int = 50, quad_tol: float = 1e-12) -> ZeroRecord:
    """Newton iteration from ``seed``.

    The derivative is a central difference with step ``1e-5 max(1, |s|)``.
    Iteration stops when ``|delta s| < tol``.

    Raises
    ------
    ConvergenceError
        If the first step does not decrease ``|R|`` (seed outside the basin),
        the derivative underflows, or ``max_iter`` steps do not converge.
    """
    s = complex(seed)
    name = select_evaluator(s) if evaluator == "auto" else evaluator
    f = _evaluator(name, quad_tol)
    fs = f(s)
    iters = 0
    while not fs.is_zero:
        if iters >= max_iter:
            raise ConvergenceError(f"Newton did not converge in {max_iter} iterations from {seed}")
        iters += 1
        h = 1e-5 * max(1.0, abs(s))
        d = (f(s + h) - f(s - h)) / ExtComplex.from_complex(2.0 * h)
        if d.is_zero or d.log_modulus < fs.log_modulus - 700.0:
            raise ConvergenceError(f"derivative underflow at {s}")
        step = (fs / d).to_complex()
        s_new = s - step
        f_new = f(s_new)
        if iters == 1 and not f_new.is_zero and f_new.log_modulus >= fs.log_modulus and abs(step) >= tol:
            raise ConvergenceError(f"Newton diverges from seed {seed}: |R| does not decrease")
        s, fs = s_new, f_new
        if abs(step) < tol:
            break
    if fs.is_zero:
        res = 0.0
    else:
        res = math.exp(min(0.0, fs.log_modulus - local_log_scale(f, s)))
    return ZeroRecord(s, _classify(s), res, name, iters)


# -- scanning ----------------------------------------------------------------------------


@dataclass
class ScanReport:
    records: list
    tile_counts: dict  # (i, j) -> winding count
    enclosing_count: int
    grid_sigma: list
    grid_t: list
    attempts: int
    unresolved: list = field(default_factory=list)

    @property
    def counts(self) -> dict:
        out = {"trivial": 0, "nontrivial": 0}
        for r in self.records:
            out[r.kind] += 1
        return out

    @property
    def tile_total(self) -> int:
        return int(sum(self.tile_counts.values()))


def _grid(lo: float, hi: float, step: float, shift: float) -> list[float]:
    n = max(1, int(math.ceil((hi - lo) / step - 1e-12)))
    pts = [lo + k * (hi - lo) / n for k in range(n + 1)]
    if shift:
        pts = [pts[0] - shift] + [p + shift for p in pts[1:-1]] + [pts[-1] + shift]
    return pts


def _seeds(tile: Rectangle) -> list[complex]:
    c = tile.center
    ds = 0.5 * (tile.sigma_max - tile.sigma_min)
    dt = 0.5 * (tile.t_max - tile.t_min)
    return [c] + [c + complex(a * ds, b * dt) for a in (-0.5, 0.5) for b in (-0.5, 0.5)]


def _scan_once(rect: Rectangle, step: float, tol: float, evaluator: str, shift: float):
    walker = _Walker(_evaluator(evaluator, tol), initial_step=min(0.25, step / 2.0))
    sg = _grid(rect.sigma_min, rect.sigma_max, step, shift)
    tg = _grid(rect.t_min, rect.t_max, step, shift)
    H = {}
    V = {}
    for j, t in enumerate(tg):
        for i in range(len(sg) - 1):
            H[i, j] = walker.segment(complex(sg[i], t), complex(sg[i + 1], t))
    for i, sig in enumerate(sg):
        for j in range(len(tg) - 1):
            V[i, j] = walker.segment(complex(sig, tg[j]), complex(sig, tg[j + 1]))
    counts = {}
    for i in range(len(sg) - 1):
        for j in range(len(tg) - 1):
            total = H[i, j] + V[i + 1, j] - H[i, j + 1] - V[i, j]
            counts[i, j] = _turns(total, f"tile sigma=[{sg[i]:g},{sg[i + 1]:g}] t=[{tg[j]:g},{tg[j + 1]:g}]")
    ni, nj = len(sg) - 1, len(tg) - 1
    outer = (
        sum(H[i, 0] for i in range(ni))
        + sum(V[ni, j] for j in range(nj))
        - sum(H[i, nj] for i in range(ni))
        - sum(V[0, j] for j in range(nj))
    )
    return sg, tg, counts, _turns(outer, f"rectangle {rect}")


def scan_region_detailed(
    rect: Rectangle,
    grid_step: float,
    tol: float = 1e-12,
    evaluator: str = "auto",
    newton_tol: float = 1e-10,
    retries: int = 3,
) -> ScanReport:
    """Tile ``rect``, count zeros per tile and refine every counted zero.

    Edges shared by neighbouring tiles are walked once, so the tile counts
    add up to the count of the enclosing rectangle.  When a zero lies on a
    grid line the whole grid is shifted by 0.01 (outer edges outward) and
    the scan restarts, at most ``retries`` times.  Zeros found in the
    widened margin are dropped.
    """
    if not grid_step > 0:
        raise DomainError("grid_step must be positive")
    last_exc = None
    for attempt in range(retries + 1):
        shift = 0.01 * attempt
        try:
            sg, tg, counts, outer = _scan_once(rect, grid_step, tol, evaluator, shift)
        except BoundaryZeroError as exc:
            last_exc = exc
            continue
        break
    else:
        raise BoundaryZeroError(f"zero on the grid after {retries} shifts: {last_exc}")

    records: list[ZeroRecord] = []
    unresolved = []
    for (i, j) in sorted(counts):
        n = counts[i, j]
        if n <= 0:
            if n < 0:
                unresolved.append(((i, j), n))
            continue
        tile = Rectangle(sg[i], sg[i + 1], tg[j], tg[j + 1])
        found: list[ZeroRecord] = []
        for seed in _seeds(tile):
            if len(found) >= n:
                break
            try:
                rec = refine_zero(seed, tol=newton_tol, evaluator=evaluator, quad_tol=tol)
            except (ConvergenceError, DomainError):
                continue
            if tile.contains(rec.location, 1e-9) and all(abs(rec.location - r.location) > DEDUP_TOL for r in found):
                found.append(rec)
        if len(found) < n:
            unresolved.append(((i, j), n - len(found)))
        records.extend(found)

    unique: list[ZeroRecord] = []
    for r in sorted(records, key=lambda r: (r.location.real, r.location.imag)):
        if all(abs(r.location - u.location) > DEDUP_TOL for u in unique):
            unique.append(r)
    unique = [r for r in unique if rect.contains(r.location)]
    return ScanReport(unique, counts, outer, sg, tg, attempt + 1, unresolved)


def scan_region(rect: Rectangle, grid_step: float, tol: float = 1e-12, evaluator: str = "auto") -> list[ZeroRecord]:
    """Zeros of R in ``rect``, sorted by real then imaginary part."""
    return scan_region_detailed(rect, grid_step, tol, evaluator).records


# -- output -------------------------------------------------------------------------------


def records_to_jsonl(records: Iterable[ZeroRecord]) -> str:
    return "".join(json.dumps(r.row()) + "\n" for r in records)


def records_to_csv(records: Iterable[ZeroRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        row = r.row()
        w.writerow([f"{row['re']:.17g}", f"{row['im']:.17g}", row["kind"], f"{row['residual']:.17g}", row["evaluator"], row["newton_iters"]])
    return buf.getvalue()
