"""Truncated power series and the Cesaro-like operator acting on them."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measure import MeasureSpec, moment_sequence

__all__ = [
    "PowerSeries",
    "SeriesError",
    "cesaro_apply",
    "cesaro_matrix_apply",
    "compensated_cumsum",
    "derivative",
    "evaluate",
    "evaluate_many",
    "partial_sums",
    "read_series",
    "write_series",
]

MATRIX_LIMIT = 4096


class SeriesError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Coefficients ``a_0 .. a_N`` of ``sum a_n z^n``; immutable."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=float, copy=True).reshape(-1)
        if arr.size == 0:
            raise SeriesError("a power series needs at least one coefficient")
        if not np.all(np.isfinite(arr)):
            raise SeriesError("power series coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def truncation(self) -> int:
        return self.coeffs.size - 1

    @property
    def nonnegative(self) -> bool:
        return bool(np.all(self.coeffs >= 0.0))

    def __len__(self) -> int:
        return self.coeffs.size

    def __add__(self, other: PowerSeries) -> PowerSeries:
        if other.truncation != self.truncation:
            raise SeriesError("truncations differ")
        return PowerSeries(self.coeffs + other.coeffs)

    def __mul__(self, lam: float) -> PowerSeries:
        return PowerSeries(float(lam) * self.coeffs)

    __rmul__ = __mul__


def compensated_cumsum(a) -> np.ndarray:
    """Prefix sums with the rounding error of every step added back.

    ``np.cumsum`` accumulates sequentially, so the exact error of step k is
    recovered by TwoSum on ``(S_{k-1}, a_k)``; the running sum of those
    errors is the correction.
    """
    a = np.asarray(a, dtype=float)
    s = np.cumsum(a)
    if a.size < 2:
        return s
    prev, x = s[:-1], a[1:]
    tot = prev + x
    if not np.array_equal(tot, s[1:]):
        return _kahan_cumsum(a)
    bp = tot - prev
    err = (prev - (tot - bp)) + (x - bp)
    corr = np.empty_like(s)
    corr[0] = 0.0
    np.cumsum(err, out=corr[1:])
    return s + corr


def _kahan_cumsum(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    total = 0.0
    comp = 0.0
    for i, v in enumerate(a.tolist()):
        y = v - comp
        t = total + y
        comp = (t - total) - y
        total = t
        out[i] = total
    return out


def partial_sums(f: PowerSeries) -> np.ndarray:
    """``S_n = a_0 + ... + a_n`` for ``n = 0..N``."""
    return compensated_cumsum(f.coeffs)


def cesaro_apply(m: MeasureSpec, f: PowerSeries, moments: np.ndarray | None = None) -> PowerSeries:
    """Apply the Cesaro-like operator: ``b_n = mu_n (a_0 + ... + a_n)``.

    ``moments`` may carry precomputed ``mu_0..mu_M`` with ``M >= N``.
    """
    n = f.truncation
    if moments is None:
        moments = moment_sequence(m, n)
    elif len(moments) < n + 1:
        raise SeriesError(f"need {n + 1} moments, got {len(moments)}")
    return PowerSeries(np.asarray(moments[: n + 1]) * partial_sums(f))


def cesaro_matrix_apply(m: MeasureSpec, f: PowerSeries) -> PowerSeries:
    """Reference path: multiply by the lower-triangular matrix with rows ``mu_n``."""
    n = f.truncation
    if n > MATRIX_LIMIT:
        raise SeriesError(f"matrix reference path is limited to N <= {MATRIX_LIMIT}, got N={n}")
    mu = moment_sequence(m, n)
    mat = np.tril(np.ones((n + 1, n + 1))) * mu[:, None]
    return PowerSeries(mat @ f.coeffs)


def derivative(f: PowerSeries) -> PowerSeries:
    if f.truncation == 0:
        return PowerSeries([0.0])
    return PowerSeries(np.arange(1, f.truncation + 1) * f.coeffs[1:])


def evaluate(f: PowerSeries, radius: float, angle: float) -> tuple[float, float]:
    """Horner evaluation at ``radius * exp(i angle)``; returns (real, imag)."""
    if not (0.0 <= radius < 1.0):
        raise SeriesError(f"radius must lie in [0, 1), got {radius!r}")
    z = radius * complex(math.cos(angle), math.sin(angle))
    acc = 0j
    for c in reversed(f.coeffs.tolist()):
        acc = acc * z + c
    return acc.real, acc.imag


def evaluate_many(coeffs: np.ndarray, radii: np.ndarray, angles: np.ndarray | None = None) -> np.ndarray:
    """Values ``sum c_n (r e^{i theta})^n`` on a (radius, angle) grid.

    Powers are formed as ``exp(n log r)``; this is vectorised over the grid
    and, for the nonnegative series used by the probes, free of
    cancellation. Returns shape ``(len(radii),)`` if ``angles`` is None
    (real axis), else ``(len(radii), len(angles))`` complex.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    radii = np.asarray(radii, dtype=float)
    n = np.arange(coeffs.size, dtype=float)
    rows = []
    for r in radii:
        if r == 0.0:
            pw = np.zeros(coeffs.size)
            pw[0] = 1.0
        else:
            pw = np.exp(n * math.log(r))
        if angles is None:
            rows.append(pw @ coeffs)
        else:
            w = pw * coeffs
            phase = np.exp(1j * np.outer(np.asarray(angles, dtype=float), n))
            rows.append(phase @ w)
    return np.array(rows)


def write_series(f: PowerSeries, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"# truncation {f.truncation}\n")
        for c in f.coeffs:
            fh.write(f"{float(c)!r}\n")


def read_series(path: str) -> PowerSeries:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("# truncation"):
        raise SeriesError(f"{path}: missing '# truncation N' header")
    try:
        n = int(lines[0].split()[-1])
        coeffs = [float(x) for x in lines[1:]]
    except ValueError as exc:
        raise SeriesError(f"{path}: {exc}") from None
    if len(coeffs) != n + 1:
        raise SeriesError(f"{path}: header says truncation {n} but found {len(coeffs)} coefficients")
    return PowerSeries(coeffs)
