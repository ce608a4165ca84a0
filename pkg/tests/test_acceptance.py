"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` or as a script.
"""

from __future__ import annotations

import cmath
import math
import time

import numpy as np
import pytest

from riemann_aux.audit import audit_lemma_series, audit_quadrature_constants, audit_region_constants
from riemann_aux.contour import r_defining
from riemann_aux.expansion import assemble, eta_frame, leading_term, remainder_R
from riemann_aux.regions import RegionParams, bound_remainder, bound_U, classify, g_conditions
from riemann_aux.special import chi
from riemann_aux.zeros import Rectangle, refine_zero, residual_of, scan_region_detailed, winding_count

from conftest import ACCEPTANCE_LINES, mp_zeta, rel_err

SEED = 20240611


def s_of_eta(eta: complex) -> complex:
    return 1.0 + 2j * math.pi * eta * eta


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]"
    ACCEPTANCE_LINES.append(line)
    print(line)


def test_criterion_1_lemma_series():
    t0 = time.perf_counter()
    item = audit_lemma_series()
    dt = time.perf_counter() - t0
    v = item.computed_value
    ok = abs(v - 0.7439893) <= 5e-7 and v < 0.75 and dt < 1.0
    report(1, "series constant", ok, f"value={v:.9f} time={dt:.3f}s")
    assert ok


def test_criterion_2_quadrature_constants():
    t0 = time.perf_counter()
    items = {it.name: it for it in audit_quadrature_constants()}
    dt = time.perf_counter() - t0
    v = {k: it.computed_value for k, it in items.items()}
    checks = {
        "cubic": abs(v["cubic_gaussian_integral"] - 0.0453198) <= 1e-6,
        "tail<": v["gaussian_tail_coefficient"] < 14.2355,
        # published value is the 6-digit figure rounded up
        "tail6": abs(v["gaussian_tail_coefficient"] - 14.2355) < 1e-4,
        "sup": v["sup_cubic_integral"] <= 0.14406,
        "i11": v["i11_coefficient"] < 5.7518,
        "i11p": v["i11_prime_coefficient"] < 1.8143,
        "i12p": v["i12_prime_coefficient"] < 2.0367,
        "tot_exp": v["total_exponential_branch"] <= 28.9745,
        "tot_alg": v["total_algebraic_branch"] <= 3.8510,
        "time": dt < 10.0,
    }
    ok = all(checks.values())
    failed = [k for k, c in checks.items() if not c]
    detail = (
        f"cubic={v['cubic_gaussian_integral']:.8f} tail={v['gaussian_tail_coefficient']:.7f} "
        f"sup={v['sup_cubic_integral']:.6f} totals={v['total_exponential_branch']:.5f},"
        f"{v['total_algebraic_branch']:.5f} time={dt:.2f}s failed={failed}"
    )
    report(2, "quadrature constants", ok, detail)
    assert ok, failed


def test_criterion_3_staged_u_bound():
    eta = complex(math.sqrt(52.0**2 - 25.0), 5.0)
    cert = bound_U(eta_frame(s_of_eta(eta)))
    lc = cert.log_components
    literal = [math.exp(lc["first"]), math.exp(lc["second"]), lc["third"] / math.log(10.0)]
    staged = {it.name: it.computed_value for it in audit_region_constants()}
    first_stage = staged["first_summand_stage"]
    checks = {
        "first<=": literal[0] <= 0.0290564 and first_stage <= 0.0290564,
        "first1%": abs(first_stage - 0.0290564) <= 0.01 * 0.0290564,
        "second<=": literal[1] <= 0.83891,
        "second1%": abs(literal[1] - 0.83891) <= 0.01 * 0.83891,
        "third<=": literal[2] <= math.log10(4e-130),
        "total": cert.u_bound < 0.868 and staged["u_total"] < 0.868,
    }
    ok = all(checks.values())
    detail = (
        f"first(at point)={literal[0]:.3e} first(worst angle)={first_stage:.7f} "
        f"second={literal[1]:.6f} log10 third={literal[2]:.2f} total={cert.u_bound:.6f}"
    )
    report(3, "staged U bound at eta2=5, |eta|=52", ok, detail)
    assert ok, [k for k, c in checks.items() if not c]


def test_criterion_4_expansion_matches_integral():
    rng = np.random.default_rng(SEED)
    pts = rng.uniform(-60, -20, 20) + 1j * rng.uniform(10, 100, 20)
    t0 = time.perf_counter()
    worst_oracle = worst_k = 0.0
    for s in pts:
        a = assemble(s)
        b = assemble(s, a.k + 3)
        ref = r_defining(s).value
        worst_oracle = max(worst_oracle, rel_err(a.r_complex, ref))
        worst_k = max(worst_k, rel_err(b.r_complex, a.r_complex))
    dt = time.perf_counter() - t0
    ok = worst_oracle <= 1e-8 and worst_k <= 1e-9 and dt < 60.0
    report(4, "expansion vs integral", ok, f"max rel (oracle)={worst_oracle:.2e} max rel (k+3)={worst_k:.2e} time={dt:.1f}s")
    assert ok


def test_criterion_5_bound_domination():
    rng = np.random.default_rng(SEED + 5)
    etas = rng.uniform(2, 30, 30) + 1j * rng.uniform(2, 30, 30)
    violations = []
    worst_r = worst_u = 0.0
    for eta in etas:
        fr = eta_frame(s_of_eta(eta))
        r = abs(remainder_R(fr).value)
        rb = bound_remainder(fr)
        u = abs(assemble(fr.s).u_value)
        ub = bound_U(fr).u_bound
        worst_r, worst_u = max(worst_r, r / rb), max(worst_u, u / ub)
        if r > rb or u > ub:
            violations.append(eta)
    ok = not violations
    report(5, "bound domination", ok, f"violations={len(violations)} max |R|/bound={worst_r:.3f} max |U|/bound={worst_u:.3e}")
    assert ok, violations


def test_criterion_6_functional_identity():
    rng = np.random.default_rng(SEED + 6)
    r = 30.0 * np.sqrt(rng.uniform(0, 1, 50))
    th = rng.uniform(0, 2 * math.pi, 50)
    pts = r * np.exp(1j * th)
    errs, rels = [], []
    for s in pts:
        s = complex(s)
        z = mp_zeta(s, dps=40)
        rhs = r_defining(s).value + chi(s).to_complex() * r_defining(1.0 - s.conjugate()).value.conjugate()
        errs.append(abs(rhs - z))
        rels.append(abs(rhs - z) / abs(z))
    errs = np.array(errs)
    bad = int(np.sum(errs > 1e-8))
    upper = np.array(rels)[pts.imag >= 0]
    ok = bad == 0
    detail = (
        f"failures={bad}/50 max abs err={errs.max():.2e} "
        f"max rel err (t>=0)={upper.max():.1e} median={np.median(errs):.2e}"
    )
    report(6, "functional identity, |s|<=30", ok, detail)
    assert ok, detail


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_criterion_7_trivial_zeros(n):
    c = -2.0 * n
    count = winding_count(Rectangle(c - 0.5, c + 0.5, -0.5, 0.5))
    rec = refine_zero(complex(c + 0.07, 0.03))
    res_alt = residual_of(rec.location, evaluator="expansion" if rec.evaluator == "oracle" else "oracle")
    ok = (
        count == 1
        and abs(rec.location - c) <= 1e-8
        and rec.kind == "trivial"
        and rec.residual <= 1e-6
        and res_alt <= 1e-6
    )
    if n == 4:
        rect = Rectangle(-11100, -11095.5, 0.5, 3)
        in_wedge = all("Wedge" in classify(z) for z in rect.corners())
        rep = scan_region_detailed(rect, 1.0, evaluator="expansion")
        wedge_ok = in_wedge and rep.enclosing_count == 0 and not rep.records
        ok = ok and wedge_ok
    else:
        wedge_ok = True
    if n == 4 or not ok:
        report(7, "trivial zeros and empty wedge rectangle", ok, f"s={c:g} count={count} loc err={abs(rec.location - c):.1e} wedge ok={wedge_ok}")
    assert ok


def test_criterion_8_scaling():
    phi = 3.0 * math.pi / 8.0
    scaled = []
    for r in (60.0, 120.0, 240.0):
        s = s_of_eta(r * cmath.exp(1j * phi))
        ratio = (assemble(s).r_value / leading_term(s)).to_complex()
        scaled.append(abs(ratio - 1.0) * r)
    spread = max(scaled) / min(scaled)
    ok = spread < 3.0
    report(8, "leading-term scaling on arg eta = 3pi/8", ok, f"|ratio-1||eta|={[f'{v:.4f}' for v in scaled]} spread={spread:.3f}")
    assert ok


def test_criterion_9_region_equivalences():
    rng = np.random.default_rng(SEED + 9)
    params = RegionParams()
    n = 500
    bad = 0
    slope_angle = math.atan(10.0)
    for kind in ("radius", "slope"):
        for _ in range(n):
            delta = rng.choice([-1.0, 1.0]) * 10.0 ** rng.uniform(-12, -6)
            if kind == "radius":
                mod, ang = 52.0 * (1.0 + delta), rng.uniform(0.02, slope_angle - 0.02)
                truth = delta > 0
            else:
                mod, ang = rng.uniform(2.0, 400.0), slope_angle * (1.0 - delta)
                truth = delta > 0
            s = s_of_eta(mod * cmath.exp(1j * ang))
            eta = eta_frame(s).eta
            s_side = g_conditions(s, params)[kind]
            eta_side = abs(eta) >= 52.0 if kind == "radius" else eta.imag <= 10.0 * eta.real
            if not (s_side == eta_side == truth):
                bad += 1
    ok = bad == 0
    report(9, "region equivalences", ok, f"misclassified={bad}/{2 * n}")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
