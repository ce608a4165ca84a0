"""Command-line interface: ``riemann-aux <subcommand> [flags]``.

Subcommands ``eval``, ``expand``, ``bound``, ``region``, ``audit`` and
``scan``.  Global flags ``--tol``, ``--config``, ``--json`` and ``--out``
are accepted by every subcommand.  Exit codes: 0 ok, 1 computational or
audit failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import audit as _audit
from .contour import r_defining
from .errors import RiemannAuxError
from .expansion import assemble, eta_frame
from .extcomplex import ExtComplex
from .regions import ConfigError, RegionParams, bound_U, bound_remainder, zero_free_verdict
from .zeros import Rectangle, records_to_csv, records_to_jsonl, scan_region_detailed, select_evaluator

__all__ = ["CommandResult", "parse_complex", "build_parser", "main", "run"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
METHODS = ("oracle", "expansion", "auto")
GRID_COLUMNS = ("sigma", "t", "labels", "verdict")

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(
    rf"^(?P<re>[+-]?{_NUM})(?:(?P<sign>[+-])(?P<im>{_NUM})?i)?$|^(?P<pure>[+-]?(?:{_NUM})?)i$"
)


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    """Outcome of one subcommand.

    ``payload`` is JSON serialisable; ``text`` optionally overrides the
    human-readable rendering (CSV for grids and scans).
    """

    status: str
    payload: object
    diagnostics: list = field(default_factory=list)
    exit_code: int = EXIT_OK
    text: str | None = None

    def __post_init__(self):
        if self.status not in ("ok", "error"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "error" and self.exit_code == EXIT_OK:
            self.exit_code = EXIT_FAIL

    def as_dict(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": list(self.diagnostics)}


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``a+bi``, ``a-bi``, ``bi``; spaces are not allowed."""
    m = _COMPLEX.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"not a complex number of the form a+bi: {text!r}")
    if m.group("re") is None:
        pure = m.group("pure")
        im = 1.0 if pure in ("", "+") else -1.0 if pure == "-" else float(pure)
        return complex(0.0, im)
    re_part = float(m.group("re"))
    if m.group("sign") is None:
        return complex(re_part, 0.0)
    im = float(m.group("im")) if m.group("im") else 1.0
    return complex(re_part, im if m.group("sign") == "+" else -im)


def _finite(x):
    """JSON-safe float: non-finite values become None."""
    x = float(x)
    return x if math.isfinite(x) else None


def _jsonable(obj):
    if isinstance(obj, ExtComplex):
        return {"log_modulus": _finite(obj.log_modulus), "phase": obj.phase}
    if isinstance(obj, complex):
        return [_finite(obj.real), _finite(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return _finite(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = sorted(obj) if isinstance(obj, (frozenset, set)) else obj
        return [_jsonable(v) for v in items]
    return obj


def _ext_parts(v: ExtComplex) -> dict:
    if v.is_zero:
        return {"re": 0.0, "im": 0.0, "log_modulus": None, "phase": 0.0}
    try:
        z = v.to_complex()
        re_, im_ = _finite(z.real), _finite(z.imag)
    except OverflowError:
        re_ = im_ = None
    return {"re": re_, "im": im_, "log_modulus": _finite(v.log_modulus), "phase": v.phase}


# -- subcommands ------------------------------------------------------------------


def cmd_eval(s: complex, method: str = "auto", tol: float = 1e-12) -> CommandResult:
    if method not in METHODS:
        raise UsageError(f"unknown method {method!r}")
    used = method
    if method == "auto":
        used = select_evaluator(s)
    diags = []
    if used == "oracle":
        q = r_defining(s, tol=tol)
        value = ExtComplex.from_complex(q.value)
        est = q.est_error
        rel = est / abs(q.value) if q.value != 0 else math.inf
        if q.diagnostics.get("noise_floor"):
            diags.append("quadrature stopped at the rounding floor")
    else:
        b = assemble(s, tol=tol)
        value = b.r_value
        # error of U propagated to R = -chi P A (1 + U)
        denom = abs(b.main_term) * abs(1.0 + b.u_value)
        rel = b.remainder_error / denom if denom > 0 else math.inf
        if value.is_zero or rel == 0.0:
            est = 0.0
        elif math.isfinite(rel):
            log_est = value.log_modulus + math.log(rel)
            est = math.exp(log_est) if log_est < 709.0 else math.inf
        else:
            est = math.inf
    payload = {**_ext_parts(value), "method_used": used, "est_error": _finite(est), "rel_est_error": _finite(rel)}
    if payload["re"] is not None:
        shown = f"{payload['re']!r} + {payload['im']!r}i"
    else:
        shown = f"exp({value.log_modulus!r}) * exp({value.phase!r}i)"
    text = f"R({s}) = {shown}  [{used}, relative error estimate {rel:.3g}]"
    return CommandResult("ok", payload, diags, text=text)


def cmd_expand(s: complex, k: int | None = None, tol: float = 1e-12) -> CommandResult:
    b = assemble(s, k=k, tol=tol)
    f = b.frame
    payload = {
        "s": b.s,
        "k": b.k,
        "frame": {"eta": f.eta, "eta1": f.eta1, "eta2": f.eta2, "m": f.m, "arg_eta": f.arg_eta},
        "chi_factor": b.chi_factor,
        "power_factor": b.power_factor,
        "scale_log": b.scale_log,
        "main_term": b.main_term,
        "trig_term": b.trig_term,
        "correction_sum": b.correction_sum,
        "remainder": b.remainder,
        "remainder_error": b.remainder_error,
        "dirichlet_tail": b.dirichlet_tail,
        "u_value": b.u_value,
        "abs_u": abs(b.u_value),
        "r_value": _ext_parts(b.r_value),
        "zeta_source": b.zeta_source,
    }
    payload = _jsonable(payload)
    lines = [f"{key}: {json.dumps(val)}" for key, val in payload.items()]
    diags = ["bracket terms are multiplied by exp(scale_log)"]
    return CommandResult("ok", payload, diags, text="\n".join(lines))


def cmd_bound(s: complex) -> CommandResult:
    frame = eta_frame(s)
    cert = bound_U(frame)
    payload = _jsonable(
        {
            "s": s,
            "eta": frame.eta,
            "abs_eta": frame.abs_eta,
            "remainder_bound": bound_remainder(frame),
            **cert.as_dict(),
        }
    )
    lines = [f"{key}: {json.dumps(val)}" for key, val in payload.items()]
    return CommandResult("ok", payload, [], text="\n".join(lines))


def _parse_range(text: str, name: str) -> np.ndarray:
    key, _, rng = text.partition("=")
    if key != name or not rng:
        raise UsageError(f"expected {name}=start:stop:step, got {text!r}")
    parts = rng.split(":")
    if len(parts) != 3:
        raise UsageError(f"expected {name}=start:stop:step, got {text!r}")
    try:
        a, b, h = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"non-numeric range {text!r}") from None
    if not (h > 0 and b >= a and all(map(math.isfinite, (a, b, h)))):
        raise UsageError(f"need step > 0 and stop >= start in {text!r}")
    n = int(math.floor((b - a) / h + 1e-9)) + 1
    return a + h * np.arange(n)


def cmd_region(s: complex | None, grid: list | None, params: RegionParams) -> CommandResult:
    if (s is None) == (grid is None):
        raise UsageError("give exactly one of --s or --grid")
    if s is not None:
        v = zero_free_verdict(s, params)
        payload = {"s": [s.real, s.imag], **v.as_dict()}
        text = f"{s}: labels {','.join(sorted(v.labels)) or '-'}  verdict {v.verdict}"
        if v.note:
            text += f"  ({v.note})"
        return CommandResult("ok", payload, [v.note] if v.note else [], text=text)
    specs = dict(g.partition("=")[::2] for g in grid)
    if set(specs) != {"sigma", "t"}:
        raise UsageError("--grid needs sigma=a:b:c t=a:b:c")
    sig = _parse_range(f"sigma={specs['sigma']}", "sigma")
    ts = _parse_range(f"t={specs['t']}", "t")
    rows = []
    for sv in sig:
        for tv in ts:
            v = zero_free_verdict(complex(sv, tv), params)
            rows.append((float(sv), float(tv), ";".join(sorted(v.labels)), v.verdict))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GRID_COLUMNS)
    for sv, tv, lab, ver in rows:
        w.writerow([f"{sv:.17g}", f"{tv:.17g}", lab, ver])
    payload = [dict(zip(GRID_COLUMNS, r)) for r in rows]
    diags = ["Subpoly verdicts use unverified defaults A=1, t0=1e6"] if params.subpoly_defaults else []
    return CommandResult("ok", payload, diags, text=buf.getvalue().rstrip("\n"))


def cmd_audit(pattern: str | None = None) -> CommandResult:
    items = _audit.run_audit(pattern)
    payload = [_jsonable(it.as_dict()) for it in items]
    diags = []
    if not items:
        diags.append(f"no audit item matches {pattern!r}")
    failed = [it.name for it in items if not it.passed]
    if failed:
        diags.append("failed: " + ", ".join(failed))
        return CommandResult("error", payload, diags, EXIT_FAIL, text=_audit.report_text(items))
    return CommandResult("ok", payload, diags, text=_audit.report_text(items) if items else "")


def cmd_scan(rect: Rectangle, step: float, tol: float, evaluator: str, out: str | None) -> CommandResult:
    rep = scan_region_detailed(rect, step, tol=tol, evaluator=evaluator)
    diags = []
    if rep.attempts > 1:
        diags.append(f"grid shifted {rep.attempts - 1} time(s) to avoid a zero on a grid line")
    if rep.unresolved:
        diags.append(f"unresolved tiles: {rep.unresolved}")
    payload = {
        "rect": [rect.sigma_min, rect.sigma_max, rect.t_min, rect.t_max],
        "step": step,
        "counts": rep.counts,
        "winding_total": rep.enclosing_count,
        "zeros": [_jsonable(r.row()) for r in rep.records],
    }
    if out:
        base = Path(out)
        base.with_suffix(".jsonl").write_text(records_to_jsonl(rep.records))
        base.with_suffix(".csv").write_text(records_to_csv(rep.records))
        payload["files"] = [str(base.with_suffix(".jsonl")), str(base.with_suffix(".csv"))]
    status = "ok" if not rep.unresolved and rep.tile_total == rep.enclosing_count else "error"
    text = f"trivial {rep.counts['trivial']}  nontrivial {rep.counts['nontrivial']}\n" + records_to_csv(rep.records).rstrip("\n")
    return CommandResult(status, payload, diags, text=text)


# -- argument parsing ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _rect(text: str) -> Rectangle:
    try:
        return Rectangle.parse(text)
    except (ValueError, RiemannAuxError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--tol", type=_positive_float, default=1e-12, help="quadrature tolerance (default 1e-12)")
    g.add_argument("--config", help="region constants file (key = value lines)")
    g.add_argument("--json", action="store_true", help="emit {status, payload, diagnostics} as JSON")
    g.add_argument("--out", help="write output to this file (scan: path prefix for .jsonl/.csv)")

    p = _Parser(prog="riemann-aux", description="Riemann's auxiliary function R(s): evaluation, bounds and zeros.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common], help="evaluate R(s)")
    e.add_argument("--s", type=parse_complex, required=True)
    e.add_argument("--method", choices=METHODS, default="auto")

    x = sub.add_parser("expand", parents=[common], help="dump every term of the saddle-point expansion")
    x.add_argument("--s", type=parse_complex, required=True)
    x.add_argument("--k", type=int, default=None)

    b = sub.add_parser("bound", parents=[common], help="remainder and U bounds at s")
    b.add_argument("--s", type=parse_complex, required=True)

    r = sub.add_parser("region", parents=[common], help="region labels and zero-free verdict")
    r.add_argument("--s", type=parse_complex)
    r.add_argument("--grid", nargs=2, metavar=("sigma=a:b:c", "t=a:b:c"))

    a = sub.add_parser("audit", parents=[common], help="re-derive the published constants")
    a.add_argument("--filter", default=None, help="item name or shell wildcard")

    sc = sub.add_parser("scan", parents=[common], help="count and locate zeros in a rectangle")
    sc.add_argument("--rect", type=_rect, required=True, metavar="SMIN,SMAX,TMIN,TMAX")
    sc.add_argument("--step", type=_positive_float, default=0.5)
    sc.add_argument("--evaluator", choices=("auto", "oracle", "expansion"), default="auto")
    return p


def _dispatch(args) -> CommandResult:
    params = RegionParams.from_file(args.config) if args.config else RegionParams()
    if args.command == "eval":
        return cmd_eval(args.s, args.method, args.tol)
    if args.command == "expand":
        return cmd_expand(args.s, args.k, args.tol)
    if args.command == "bound":
        return cmd_bound(args.s)
    if args.command == "region":
        return cmd_region(args.s, args.grid, params)
    if args.command == "audit":
        return cmd_audit(args.filter)
    return cmd_scan(args.rect, args.step, args.tol, args.evaluator, args.out)


def run(argv=None) -> tuple[CommandResult, argparse.Namespace | None]:
    """Parse ``argv`` and execute; user and numerical errors become results."""
    args = None
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args), args
    except (UsageError, ConfigError) as exc:
        return CommandResult("error", None, [f"usage: {exc}"], EXIT_USAGE), args
    except (RiemannAuxError, ArithmeticError, ValueError) as exc:
        return CommandResult("error", None, [f"{type(exc).__name__}: {exc}"], EXIT_FAIL), args


def _emit(result: CommandResult, args):
    as_json = bool(args is not None and args.json)
    if as_json:
        text = json.dumps(_jsonable(result.as_dict()), indent=2, allow_nan=False)
    else:
        text = result.text if result.text is not None else ""
    for d in result.diagnostics:
        print(d, file=sys.stderr)
    out = args.out if args is not None and args.command != "scan" else None
    if out:
        Path(out).write_text(text + "\n")
    elif text:
        print(text)


def main(argv=None) -> int:
    result, args = run(sys.argv[1:] if argv is None else list(argv))
    try:
        _emit(result, args)
    except BrokenPipeError:
        # reader closed early (e.g. piped into head)
        sys.stdout = open(os.devnull, "w")
    return result.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
