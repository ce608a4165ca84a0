import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riemann_aux.extcomplex import ExtComplex, ext_sum, wrap_phase

finite = st.floats(min_value=-1e300, max_value=1e300, allow_nan=False, allow_infinity=False)


@given(finite, finite)
def test_round_trip(x, y):
    z = complex(x, y)
    back = ExtComplex.from_complex(z).to_complex()
    if z == 0:
        assert back == 0
    else:
        assert abs(back - z) <= 1e-14 * abs(z)


@given(st.floats(-700, 700), st.floats(-10, 10))
def test_phase_range(lm, ph):
    e = ExtComplex(lm, wrap_phase(ph))
    assert -math.pi < e.phase <= math.pi


def test_zero_encoding():
    z = ExtComplex.from_complex(0)
    assert z.is_zero and z.log_modulus == -math.inf
    assert z.to_complex() == 0
    assert (z * ExtComplex.from_log(1000.0)).is_zero


def test_overflow_raises():
    big = ExtComplex.from_log(800.0)
    with pytest.raises(OverflowError):
        big.to_complex()
    assert big.log10_abs() == pytest.approx(800.0 / math.log(10.0))


def test_tiny_products_keep_exponent():
    # e^{-3200} * e^{3100} = e^{-100}: both factors leave binary64
    a = ExtComplex.from_log(-3200.0 + 0.3j)
    b = ExtComplex.from_log(3100.0 - 0.1j)
    assert (a * b).to_complex() == pytest.approx(cmath.exp(-100.0 + 0.2j), rel=1e-13)


def test_chain_associativity(rng):
    zs = rng.normal(size=100) + 1j * rng.normal(size=100)
    left = ExtComplex.one()
    for z in zs:
        left = left * ExtComplex.from_complex(z)
    right = ExtComplex.one()
    for z in zs[::-1]:
        right = ExtComplex.from_complex(z) * right
    assert abs(left.log_modulus - right.log_modulus) <= 1e-12 * max(1.0, abs(left.log_modulus))
    assert abs(wrap_phase(left.phase - right.phase)) <= 1e-12


@pytest.mark.parametrize(
    "a, b",
    [(1 + 2j, 3 - 1j), (1e-200, -1e-200), (5.0, -5.0 + 1e-12j), (-2j, 2j)],
)
def test_add_sub(a, b):
    # cancellation error is relative to the operands, not to the result
    ea, eb = ExtComplex.from_complex(a), ExtComplex.from_complex(b)
    scale = 1e-15 * (abs(a) + abs(b))
    assert abs((ea + eb).to_complex() - (a + b)) <= scale
    assert abs((ea - eb).to_complex() - (a - b)) <= scale


def test_division_and_conjugate():
    a, b = 3 - 4j, -1 + 0.5j
    q = ExtComplex.from_complex(a) / ExtComplex.from_complex(b)
    assert q.to_complex() == pytest.approx(a / b, rel=1e-14)
    assert ExtComplex.from_complex(a).conjugate().to_complex() == pytest.approx(a.conjugate())
    with pytest.raises(ZeroDivisionError):
        ExtComplex.one() / ExtComplex.zero()


def test_ext_sum_matches_plain_sum(rng):
    zs = rng.normal(size=50) + 1j * rng.normal(size=50)
    assert ext_sum(ExtComplex.from_complex(z) for z in zs).to_complex() == pytest.approx(np.sum(zs), rel=1e-12)


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        ExtComplex.from_complex(complex(math.nan, 0))
