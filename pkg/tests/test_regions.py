import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riemann_aux.errors import PreconditionError
from riemann_aux.expansion import assemble, eta_frame, remainder_R
from riemann_aux.regions import (
    ConfigError,
    RegionParams,
    bound_U,
    bound_remainder,
    classify,
    g_conditions,
    log_bound_remainder,
    trivial_zero_index,
    zero_free_verdict,
)

P = RegionParams()


def s_of_eta(eta):
    return 1 + 2j * math.pi * eta * eta


class TestClassify:
    def test_point_in_G(self):
        labels = classify(-20000 + 100j)
        assert "G" in labels
        assert labels >= {"G", "G_alpha", "Wedge", "H"}

    def test_point_outside_G(self):
        assert "G" not in classify(-200 + 10j)

    def test_g_alpha_boundary(self):
        # tan(2 alpha) = 1 at alpha = pi/8: the label flips at 1 - sigma = |t|
        t = 1000.0
        assert "G_alpha" in classify(complex(1 - t, t))
        assert "G_alpha" not in classify(complex(1 - t * (1 - 1e-9), t))
        assert "G_alpha" in classify(complex(1 - t * (1 + 1e-9), -t))

    def test_wedge_is_open_in_angle(self):
        r = 3528 * math.pi * 2
        assert "Wedge" not in classify(complex(1 - r, r))
        assert "Wedge" in classify(complex(1 - r, r * (1 - 1e-9)))

    def test_subpoly_uses_configured_constants(self):
        s = complex(-10000, 2e6)
        assert "Subpoly" in classify(s)
        assert "Subpoly" not in classify(s, P.with_(A=100.0))

    def test_G_implies_H(self, rng):
        hits = 0
        for _ in range(3000):
            s = complex(rng.uniform(-2e5, 0), rng.uniform(-1e5, 1e5))
            if "G" in classify(s):
                hits += 1
                f = eta_frame(s)
                assert f.eta1 >= 2 and f.eta2 >= 2
        assert hits > 100

    def test_G_monotone_along_rays(self):
        for phi in np.linspace(0.6 * math.pi, 1.4 * math.pi, 13):
            d = complex(math.cos(phi), math.sin(phi))
            inside = [("G" in classify(1 + r * d)) for r in np.linspace(1e4, 1e6, 60)]
            # once inside, never out again along the ray
            first = inside.index(True) if True in inside else len(inside)
            assert all(inside[first:])

    def test_eta_equivalences(self, rng):
        for _ in range(300):
            s = complex(-rng.uniform(1e4, 4e4), rng.uniform(-1e5, 1e4))
            f = eta_frame(s)
            c = g_conditions(s)
            assert c["radius"] == (f.abs_eta >= 52 - 1e-12) or abs(f.abs_eta - 52) < 1e-9
            assert c["slope"] == (f.eta2 <= 10 * f.eta1) or abs(f.eta2 - 10 * f.eta1) < 1e-9 * f.abs_eta
            if c["parabola"] and c["radius"]:
                assert f.eta2 >= 5 - 1e-9


class TestVerdict:
    def test_trivial_only_in_G(self):
        v = zero_free_verdict(-20000 + 100j)
        assert v.verdict == "trivial_only" and v.trivial_n is None

    def test_unknown(self):
        assert zero_free_verdict(0.4 + 1000j).verdict == "unknown"

    def test_trivial_zero_tagged(self):
        v = zero_free_verdict(-12000)
        assert v.verdict == "trivial_only" and v.trivial_n == 6000
        assert "Wedge" in v.labels

    def test_subpoly_conditional(self):
        v = zero_free_verdict(complex(-10000, 2e6))
        assert v.verdict == "zero_free" and v.conditional
        assert "unverified" in v.note

    def test_trivial_zero_index(self):
        assert trivial_zero_index(-8) == 4
        assert trivial_zero_index(-7) is None
        assert trivial_zero_index(-8 + 1e-6j) is None


class TestConfig:
    def test_round_trip(self):
        p = RegionParams.from_text(P.to_text())
        assert p == P

    def test_partial_with_comments(self):
        p = RegionParams.from_text("# custom\nA = 2.5\n\nt0=1e7  # later\n")
        assert p.A == 2.5 and p.t0 == 1e7 and p.radius_G == P.radius_G
        assert not p.subpoly_defaults

    @pytest.mark.parametrize(
        "text",
        ["radius = 3", "A = 1\nA = 2", "alpha = 1.0", "slope = -1", "parabola: 3", "t0 = abc"],
    )
    def test_rejects(self, text):
        with pytest.raises(ConfigError):
            RegionParams.from_text(text)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            RegionParams.from_file(tmp_path / "nope.cfg")

    def test_file(self, tmp_path):
        path = tmp_path / "r.cfg"
        path.write_text("slope = 5\n")
        assert RegionParams.from_file(path).slope == 5.0


class TestBounds:
    def test_remainder_bound_40_40(self):
        f = eta_frame(1 - 6400 * math.pi)
        r = 40 * math.sqrt(2)
        coarse = 4 / r + 15 * math.exp(-math.pi * 3200 / 32) / r
        assert coarse == pytest.approx(0.070711, abs=1e-6)
        # at eta2 = 40 the minimum picks 29 e^{-40 pi}, far below the coarse value
        expected = 29 * math.exp(-40 * math.pi) / r + 15 * math.exp(-math.pi * 3200 / 32) / r
        assert bound_remainder(f) == pytest.approx(expected, rel=1e-12)
        assert bound_remainder(f) <= coarse

    def test_remainder_bound_min_branch(self):
        eta = complex(math.sqrt(52**2 - 25), 5)
        f = eta_frame(s_of_eta(eta))
        expected = (29 * math.exp(-5 * math.pi) + 15 * math.exp(-math.pi * 52**2 / 32)) / 52
        assert bound_remainder(f) == pytest.approx(expected, rel=1e-12)
        assert bound_U(f).min_branch == "29*exp(-pi*eta2)"
        assert log_bound_remainder(f) == pytest.approx(math.log(expected), rel=1e-12)

    def test_u_bound_at_52(self):
        eta = complex(math.sqrt(52**2 - 25), 5)
        c = bound_U(eta_frame(s_of_eta(eta)))
        second = math.sqrt(2) / (5 * math.pi) * (1 + 5 * math.pi) * 29 / 52
        assert c.components["second"] == pytest.approx(second, rel=1e-6)
        assert c.components["second"] < 0.83891
        assert c.components["third"] < 4e-130
        assert c.u_bound < 0.868
        assert all(v >= 0 for v in c.components.values())

    def test_log_components_finite_far_out(self):
        c = bound_U(eta_frame(s_of_eta(complex(300, 250))))
        assert all(math.isfinite(v) for v in c.log_components.values())
        assert c.components["third"] == 0.0 and c.log_components["third"] < -1e5

    def test_r_bound_composition(self):
        c = bound_U(eta_frame(-20000 + 100j))
        assert c.r_bound == pytest.approx(c.components["r_min_term"] + c.components["r_gauss_term"], rel=1e-14)

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            bound_remainder(eta_frame(1 - 2j))
        with pytest.raises(PreconditionError):
            bound_U(eta_frame(s_of_eta(complex(1.5, 3))))

    def test_as_dict(self):
        d = bound_U(eta_frame(-20000 + 100j)).as_dict()
        assert set(d) >= {"r_bound", "u_bound", "components", "log10_components", "min_branch", "log_space"}


@settings(max_examples=25, deadline=None)
@given(st.floats(2.0, 25.0), st.floats(2.0, 25.0))
def test_bounds_dominate(e1, e2):
    s = s_of_eta(complex(e1, e2))
    f = eta_frame(s)
    rem = remainder_R(f)
    assert abs(rem.value) <= bound_remainder(f)
    u = abs(assemble(s).u_value)
    assert math.log(u) <= bound_U(f).log_u_bound
