import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cesaro_lab.asymptotics import kernel_integral, predicted_growth, regime_for, regime_scan

R_GRID = 1.0 - 2.0 ** -np.arange(0, 21, dtype=float)


def _mp_integral(delta, c, k, r):
    # independent route: w = (1-t)^(delta+1) removes the algebraic endpoint singularity
    mpmath.mp.dps = 30
    p = delta + c + 1
    a = mpmath.mpf(delta) + 1
    r = mpmath.mpf(r)
    eps = 1 - r

    def f(w):
        u = w ** (1 / a)
        return (eps + r * u) ** (-p) * mpmath.log(mpmath.e / u) ** k / a

    pts = [0] + ([(eps / 8) ** a, eps**a, (8 * eps) ** a] if 8 * eps < 1 else []) + [1]
    return float(mpmath.quad(f, pts))


def test_closed_form_examples():
    assert kernel_integral(0.0, 1.0, 0.0, 0.9) == pytest.approx(10.0, rel=1e-8)
    assert kernel_integral(0.0, 0.0, 0.0, 0.5) == pytest.approx(-math.log(0.5) / 0.5, rel=1e-8)


def test_constant_regime_bounded():
    vals = [kernel_integral(1.0, 0.0, -2.0, 1.0 - 2.0**-j) for j in range(5, 21)]
    assert max(vals) / min(vals) < 1.5


def test_anchor_grids():
    for r in R_GRID:
        assert kernel_integral(0.0, 1.0, 0.0, r) * (1.0 - r) == pytest.approx(1.0, abs=1e-8)
        exact = 1.0 if r == 0.0 else -math.log1p(-r) / r
        assert kernel_integral(0.0, 0.0, 0.0, r) == pytest.approx(exact, rel=1e-8)


@settings(max_examples=25)
@given(
    st.floats(-0.9, 2.0),
    st.floats(0.0, 2.0),
    st.floats(-3.0, 2.0),
    st.floats(0.0, 0.999),
)
def test_matches_mpmath(delta, c, k, r):
    assert kernel_integral(delta, c, k, r) == pytest.approx(_mp_integral(delta, c, k, r), rel=1e-8)


def test_domain_errors():
    with pytest.raises(ValueError):
        kernel_integral(-1.0, 0.0, 0.0, 0.5)
    with pytest.raises(ValueError):
        kernel_integral(0.0, -0.1, 0.0, 0.5)
    with pytest.raises(ValueError):
        kernel_integral(0.0, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        regime_scan(0.0, 0.0, 0.0, depth=9)


@given(st.floats(0.0, 3.0), st.floats(0.0, 2.0), st.floats(0.0, 2.0))
def test_nondecreasing_in_r(delta, c, k):
    vals = [kernel_integral(delta, c, k, r) for r in R_GRID[::2]]
    assert all(b >= a * (1 - 1e-10) for a, b in zip(vals, vals[1:]))


@given(st.floats(0.0, 5.0), st.floats(-5.0, 5.0))
def test_regime_dispatch(c, k):
    regime = regime_for(c, k)
    if c > 0:
        assert regime == "PowerLog"
    elif k < -1:
        assert regime == "Constant"
    elif k == -1:
        assert regime == "LogLog"
    else:
        assert regime == "LogPower"


def test_regime_boundaries():
    assert regime_for(0.0, -1.0) == "LogLog"
    assert regime_for(0.0, -1.0000001) == "Constant"
    assert regime_for(1e-12, -5.0) == "PowerLog"


def test_scan_examples():
    scan = regime_scan(0.0, 0.0, 0.0, 20)
    assert scan.regime == "LogPower" and scan.stabilized
    assert scan.ratio[-1] == pytest.approx(1.0, rel=0.10)
    loglog = regime_scan(0.0, 0.0, -1.0, 20)
    assert loglog.regime == "LogLog" and loglog.stabilized and loglog.ratio[-1] > 0
    power = regime_scan(0.5, 2.0, 1.0, 18)
    assert power.regime == "PowerLog" and power.stabilized


@pytest.mark.parametrize("params", [(1.0, 0.0, -2.0), (0.0, 0.0, -1.0), (0.0, 0.0, 0.0), (0.5, 2.0, 1.0)])
def test_scan_stabilizes(params):
    scan = regime_scan(*params, depth=20)
    assert scan.stabilized
    assert list(scan.j) == list(range(5, 21))
    assert len(scan.rows()) == 16


def test_predicted_growth_shapes():
    r = np.array([0.5, 1 - 2.0**-10])
    ell = 1 - np.log1p(-r)
    np.testing.assert_allclose(predicted_growth("Constant", -2, 0, r), [1, 1])
    np.testing.assert_allclose(predicted_growth("LogLog", -1, 0, r), np.log(np.log(math.e**2 / (1 - r))))
    np.testing.assert_allclose(predicted_growth("LogPower", 0.5, 0, r), ell**1.5)
    np.testing.assert_allclose(predicted_growth("PowerLog", 1, 2, r), (1 - r) ** -2 * ell)
