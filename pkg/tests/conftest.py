"""Shared fixtures: independent mpmath oracles (used only in tests)."""

from __future__ import annotations

import mpmath as mp
import numpy as np
import pytest


def mp_zeta(z, dps=30):
    with mp.workdps(dps):
        return complex(mp.zeta(mp.mpc(z)))


def mp_loggamma(z, dps=30):
    with mp.workdps(dps):
        return complex(mp.loggamma(mp.mpc(z)))


def mp_chi(s, dps=40):
    with mp.workdps(dps):
        s = mp.mpc(s)
        return complex(mp.pi ** (s - 0.5) * mp.gamma((1 - s) / 2) / mp.gamma(s / 2))


def mp_r_defining(s, dps=50, crossing=0.5, span=30):
    """R(s) by mpmath quadrature on the line through ``crossing``, slope +1, downward."""
    with mp.workdps(dps):
        s = mp.mpc(s)
        d = -mp.exp(1j * mp.pi / 4)

        def f(u):
            x = crossing + u * d
            return x ** (-s) * mp.exp(1j * mp.pi * x * x) / (mp.exp(1j * mp.pi * x) - mp.exp(-1j * mp.pi * x)) * d

        return complex(mp.quad(f, mp.linspace(-span, span, 8 * span + 1)))


def rel_err(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# criterion lines collected by test_acceptance and echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
