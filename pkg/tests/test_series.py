import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from cesaro_lab.measure import Atomic, MeasureSpec, canonical_suite, moment_sequence
from cesaro_lab.series import (
    MATRIX_LIMIT,
    PowerSeries,
    SeriesError,
    cesaro_apply,
    cesaro_matrix_apply,
    compensated_cumsum,
    derivative,
    evaluate,
    evaluate_many,
    partial_sums,
    read_series,
    write_series,
)
from cesaro_lab.testfns import make_basis, make_geometric

measures = st.sampled_from(list(canonical_suite().values()))
finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


def coeff_arrays(min_size=1, max_size=200):
    return hnp.arrays(np.float64, st.integers(min_size, max_size), elements=finite)


# PowerSeries


def test_series_rejects_nonfinite_and_empty():
    with pytest.raises(SeriesError):
        PowerSeries([1.0, math.nan])
    with pytest.raises(SeriesError):
        PowerSeries([])


def test_series_is_immutable():
    f = PowerSeries([1.0, 2.0])
    with pytest.raises(ValueError):
        f.coeffs[0] = 3.0
    assert f.truncation == 1 and len(f) == 2


# cesaro_apply examples


def test_geometric_is_fixed_by_lebesgue(lebesgue):
    b = cesaro_apply(lebesgue, make_geometric(8))
    np.testing.assert_allclose(b.coeffs, np.ones(9), rtol=1e-15)


@given(measures)
def test_constant_maps_to_moments(m):
    b = cesaro_apply(m, make_basis(0, 50))
    np.testing.assert_array_equal(b.coeffs, moment_sequence(m, 50))


@given(st.floats(min_value=0.0, max_value=0.99), coeff_arrays(2, 80))
def test_single_atom(t0, a):
    m = MeasureSpec.of(Atomic(((t0, 1.0),)))
    b = cesaro_apply(m, PowerSeries(a))
    s = np.array([math.fsum(a[: k + 1]) for k in range(a.size)])
    expected = t0 ** np.arange(a.size) * s
    np.testing.assert_allclose(b.coeffs, expected, rtol=1e-12, atol=1e-12 * np.abs(a).sum())


def test_matrix_examples(lebesgue):
    b = cesaro_matrix_apply(lebesgue, make_basis(1, 10))
    assert b.coeffs[0] == 0.0
    np.testing.assert_allclose(b.coeffs[1:], 1.0 / np.arange(2, 12), rtol=1e-15)
    origin = MeasureSpec.of(Atomic(((0.0, 1.0),)))
    a = np.arange(1.0, 8.0)
    b = cesaro_matrix_apply(origin, PowerSeries(a))
    np.testing.assert_array_equal(b.coeffs, [1.0, 0, 0, 0, 0, 0, 0])


def test_matrix_size_guard(lebesgue):
    with pytest.raises(SeriesError):
        cesaro_matrix_apply(lebesgue, make_geometric(MATRIX_LIMIT + 1))


def test_moments_argument_checked(lebesgue):
    with pytest.raises(SeriesError):
        cesaro_apply(lebesgue, make_geometric(10), moments=np.ones(5))


@given(measures, coeff_arrays(2, 300))
def test_fast_matches_matrix(m, a):
    f = PowerSeries(a)
    fast = cesaro_apply(m, f).coeffs
    slow = cesaro_matrix_apply(m, f).coeffs
    scale = moment_sequence(m, a.size - 1) * np.cumsum(np.abs(a))
    np.testing.assert_array_less(np.abs(fast - slow), 1e-13 * scale + 1e-300)


@given(measures, coeff_arrays(5, 100), coeff_arrays(5, 100), finite)
def test_linearity(m, a, b, lam):
    n = min(a.size, b.size)
    f, g = PowerSeries(a[:n]), PowerSeries(b[:n])
    lhs = cesaro_apply(m, lam * f + g).coeffs
    rhs = lam * cesaro_apply(m, f).coeffs + cesaro_apply(m, g).coeffs
    scale = moment_sequence(m, n - 1) * np.cumsum(abs(lam) * np.abs(a[:n]) + np.abs(b[:n]))
    np.testing.assert_array_less(np.abs(lhs - rhs), 1e-13 * scale + 1e-300)


def test_classical_reduction(lebesgue):
    mu = moment_sequence(lebesgue, 1000)
    np.testing.assert_array_equal(mu, 1.0 / np.arange(1, 1002))


@given(measures, hnp.arrays(np.float64, st.integers(1, 200), elements=st.floats(0.0, 1e3)))
def test_positivity(m, a):
    assert cesaro_apply(m, PowerSeries(a)).nonnegative


# partial sums


def test_partial_sum_examples():
    np.testing.assert_array_equal(partial_sums(make_geometric(9)), np.arange(1, 11))
    a = np.zeros(101)
    a[1:] = 1.0 / np.arange(1, 101)
    h = partial_sums(PowerSeries(a))
    assert h[100] == pytest.approx(math.fsum(1.0 / k for k in range(1, 101)), rel=1e-16)
    alt = partial_sums(PowerSeries([(-1.0) ** k for k in range(20)]))
    assert set(alt.tolist()) == {0.0, 1.0}


@given(coeff_arrays(1, 500))
def test_compensated_matches_fsum(a):
    s = compensated_cumsum(a)
    exact = np.array([math.fsum(a[: k + 1]) for k in range(a.size)])
    np.testing.assert_allclose(s, exact, rtol=1e-15, atol=1e-12 * np.abs(a).max())


def test_compensated_at_large_n():
    rng = np.random.default_rng(7)
    a = rng.uniform(0.0, 1.0, 10**6) * 10.0 ** rng.integers(-8, 8, 10**6)
    s = compensated_cumsum(a)
    idx = [10, 1000, 123456, 10**6 - 1]
    for k in idx:
        exact = math.fsum(a[: k + 1])
        assert abs(s[k] - exact) <= 1e-12 * exact


# derivative and evaluation


def test_derivative_examples():
    np.testing.assert_array_equal(derivative(make_basis(2, 4)).coeffs, [0.0, 2.0, 0.0, 0.0])
    assert np.all(derivative(PowerSeries([3.0])).coeffs == 0.0)
    np.testing.assert_array_equal(derivative(make_geometric(5)).coeffs, [1, 2, 3, 4, 5])


def test_evaluate_examples():
    re, im = evaluate(make_geometric(60), 0.5, 0.0)
    assert abs(re - 2.0) < 2.0**-59 and im == 0.0
    assert evaluate(PowerSeries([1.0]), 0.7, 1.3) == (1.0, 0.0)
    re, im = evaluate(make_basis(1, 3), 0.3, math.pi)
    assert re == pytest.approx(-0.3, abs=1e-16) and abs(im) < 1e-16


def test_evaluate_domain():
    with pytest.raises(SeriesError):
        evaluate(PowerSeries([1.0]), 1.0, 0.0)


@given(coeff_arrays(1, 60), st.floats(0.0, 0.95), st.floats(-math.pi, math.pi))
def test_evaluate_many_matches_horner(a, r, theta):
    f = PowerSeries(a)
    re, im = evaluate(f, r, theta)
    grid = evaluate_many(a, np.array([r]), np.array([theta]))[0, 0]
    tol = 1e-12 * (np.abs(a) @ (r ** np.arange(a.size))) + 1e-300
    assert abs(grid - complex(re, im)) <= tol
    axis = evaluate_many(a, np.array([r]))[0]
    assert abs(axis - evaluate(f, r, 0.0)[0]) <= tol


def test_series_file_roundtrip(tmp_path):
    f = PowerSeries(np.linspace(-1, 1, 17) / 3.0)
    path = tmp_path / "f.txt"
    write_series(f, str(path))
    assert path.read_text().splitlines()[0] == "# truncation 16"
    np.testing.assert_array_equal(read_series(str(path)).coeffs, f.coeffs)


@pytest.mark.parametrize("text", ["1.0\n2.0\n", "# truncation 3\n1.0\n", "# truncation 1\n1.0\nabc\n"])
def test_series_file_rejects_malformed(tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(SeriesError):
        read_series(str(path))
