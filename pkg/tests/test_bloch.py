import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from cesaro_lab.bloch import (
    bloch_norm,
    bloch_seminorm,
    coefficient_criterion,
    coefficient_trace,
    escalation_verdict,
    growth_bound_check,
    partial_sum_growth,
    radius_cap_level,
)
from cesaro_lab.series import PowerSeries
from cesaro_lab.testfns import make_basis, make_fa, make_geometric, make_log, make_power_alpha, min_truncation


def test_seminorm_examples():
    e1 = bloch_seminorm(make_basis(1, 64), 1.0)
    assert e1.value == 1.0 and e1.argmax_radius == 0.0
    geo = bloch_seminorm(make_geometric(2**16), 2.0)
    assert 3.5 <= geo.value <= 4.0
    assert geo.truncation_limited and geo.grid_depth == 13
    assert bloch_seminorm(PowerSeries([5.0, 0.0, 0.0]), 0.7).value == 0.0


def test_seminorm_preconditions():
    f = make_geometric(64)
    for kwargs in ({"alpha": 0.0}, {"alpha": 1.0, "depth": 3}, {"alpha": 1.0, "angles": 0}):
        with pytest.raises(ValueError):
            bloch_seminorm(f, **kwargs)


def test_radius_cap():
    assert radius_cap_level(2**16) == 13
    assert radius_cap_level(7) == 0
    for n in (8, 100, 4096, 10**6):
        j = radius_cap_level(n)
        assert 1 - 2.0**-j <= 1 - 8 / n < 1 - 2.0 ** -(j + 1)


def test_mixed_sign_uses_angles():
    # f(z) = z - z^2 peaks off the positive axis
    f = PowerSeries([0.0, 1.0, -1.0] + [0.0] * 61)
    est = bloch_seminorm(f, 1.0, angles=64)
    axis = bloch_seminorm(f, 1.0, angles=1)
    assert est.value > axis.value
    assert est.argmax_angle != 0.0


signed = hnp.arrays(np.float64, st.integers(8, 120), elements=st.floats(-10, 10))


@given(signed, st.floats(-5.0, 5.0), st.floats(0.2, 3.0))
def test_seminorm_scaling(a, lam, alpha):
    f = PowerSeries(a)
    base = bloch_seminorm(f, alpha, angles=16).value
    scaled = bloch_seminorm(lam * f, alpha, angles=16).value
    assert scaled == pytest.approx(abs(lam) * base, rel=1e-12, abs=1e-300)


@given(signed, st.floats(0.2, 3.0), st.integers(4, 12))
def test_depth_refinement_monotone(a, alpha, depth):
    f = PowerSeries(np.concatenate([a, np.zeros(4096)]))
    lo = bloch_seminorm(f, alpha, depth=depth, angles=8).value
    hi = bloch_seminorm(f, alpha, depth=depth + 1, angles=8).value
    assert hi >= lo


# coefficient criteria


def test_coefficient_criterion_examples():
    assert coefficient_criterion(make_basis(1, 32), 1.0).sup == 1.0
    crit = coefficient_criterion(make_power_alpha(0.5, 2**16), 0.5)
    idx = np.nonzero(crit.n >= 2**10)[0]
    assert np.all(np.abs(crit.trace[idx[1:]] / crit.trace[idx[:-1]] - 1) < 0.05)
    assert crit.verdict == "bounded"
    geo = coefficient_criterion(make_geometric(2**16), 1.0)
    np.testing.assert_allclose(geo.trace, (geo.n + 1) / 2.0, rtol=1e-15)
    assert geo.verdict == "unbounded"


def test_coefficient_criterion_rejects_negative():
    with pytest.raises(ValueError):
        coefficient_criterion(PowerSeries([0.0, 1.0, -0.1]), 1.0)


def test_coefficient_trace_matches_criterion():
    f = make_power_alpha(0.7, 4096)
    n, tr = coefficient_trace(f.coeffs, 0.7)
    crit = coefficient_criterion(f, 0.7)
    np.testing.assert_array_equal(n, crit.n)
    np.testing.assert_allclose(tr, crit.trace, rtol=1e-15)


def test_partial_sum_examples():
    sup, n = partial_sum_growth(make_log(2**16))
    assert 1.0 <= sup <= 1.5 and n == 1
    sup, _ = partial_sum_growth(make_basis(1, 10))
    assert sup == pytest.approx(1.0 / math.log(2.0), rel=1e-15)
    sup, n = partial_sum_growth(make_geometric(2**16))
    assert sup > 2**16 / 17 and n == 2**16


@pytest.mark.parametrize(
    "make,alpha,expected",
    [
        (lambda n: make_basis(1, n), 1.0, "bounded"),
        (make_log, 1.0, "bounded"),
        (lambda n: make_power_alpha(0.5, n), 0.5, "bounded"),
        (lambda n: make_power_alpha(1.5, n), 1.5, "bounded"),
        (make_geometric, 1.0, "unbounded"),
        (make_geometric, 0.5, "unbounded"),
    ],
)
def test_coefficient_and_escalation_verdicts_agree(make, alpha, expected):
    escalation, values = escalation_verdict(make, alpha)
    trace = coefficient_criterion(make(2**16), alpha).verdict
    assert escalation == trace == expected


# growth bound


def test_growth_bound_constant():
    f = PowerSeries([2.0])
    assert growth_bound_check(f, 0.5, bloch_norm(f, 0.5)) <= 1.0


def test_growth_bound_log_series():
    f = make_log(2**20)
    ratio = growth_bound_check(f, 1.0, bloch_norm(f, 1.0), depth=20)
    assert 0.0 < ratio <= 1.0


@pytest.mark.parametrize("alpha", [1.5, 2.0, 3.0])
def test_growth_bound_fa_uniform_in_a(alpha):
    ratios = []
    for a in (0.9, 0.99, 0.999):
        f = make_fa(alpha, a, min_truncation(a))
        ratios.append(growth_bound_check(f, alpha, bloch_norm(f, alpha)))
    assert all(0.0 < r <= 1.0 for r in ratios)
    assert max(ratios) / min(ratios) < 1.5


def test_growth_bound_zero_seminorm_guard():
    assert growth_bound_check(make_basis(1, 16), 1.0, 0.0) == math.inf
    assert growth_bound_check(PowerSeries([0.0, 0.0]), 1.0, 0.0) == 0.0
