"""Coefficient generators for the probe families.

All families have nonnegative Taylor coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import signal, special

from .gammaratio import log_gamma_ratio
from .series import PowerSeries, SeriesError

DIRECT_CONVOLUTION_LIMIT = 4096


def make_power_alpha(alpha: float, n: int) -> PowerSeries:
    """``sum_{k>=1} k^(alpha-2) z^k``; alpha = 1 is ``log(1/(1-z))``."""
    if n < 1:
        raise SeriesError("truncation must be >= 1")
    k = np.arange(n + 1, dtype=float)
    a = np.zeros(n + 1)
    a[1:] = k[1:] ** (alpha - 2.0)
    return PowerSeries(a)


def make_log(n: int) -> PowerSeries:
    return make_power_alpha(1.0, n)


def make_fa(alpha: float, a: float, n: int) -> PowerSeries:
    """Coefficients of ``(1-a) / (1-az)^alpha``.

    ``c_k = (1-a) a^k Gamma(k+alpha) / (Gamma(alpha) Gamma(k+1))``, formed in
    log space.
    """
    if not alpha > 0:
        raise SeriesError(f"f_a family needs alpha > 0, got {alpha!r}")
    if not 0.0 < a < 1.0:
        raise SeriesError(f"f_a family needs a in (0, 1), got {a!r}")
    k = np.arange(n + 1, dtype=float)
    logc = k * math.log(a) + log_gamma_ratio(k + 1.0, alpha - 1.0) - special.gammaln(alpha)
    return PowerSeries((1.0 - a) * np.exp(logc))


def make_log_squared_a(a: float, n: int) -> PowerSeries:
    """Coefficients of ``log(2/(1-az))^2 / log(2/(1-a))``.

    Built as the Cauchy square of ``g = log 2 + sum a^k z^k / k``. Since
    ``g_k = a^k h_k`` with ``h_0 = log 2``, ``h_k = 1/k``, the square is
    ``a^k (h*h)_k`` and only the undamped ``h*h`` is convolved.
    """
    if not 0.0 < a < 1.0:
        raise SeriesError(f"log-squared family needs a in (0, 1), got {a!r}")
    h = np.empty(n + 1)
    h[0] = math.log(2.0)
    h[1:] = 1.0 / np.arange(1, n + 1)
    if n + 1 <= DIRECT_CONVOLUTION_LIMIT:
        hh = np.convolve(h, h)[: n + 1]
    else:
        hh = signal.fftconvolve(h, h)[: n + 1]
    k = np.arange(n + 1, dtype=float)
    coeffs = np.exp(k * math.log(a)) * hh / math.log(2.0 / (1.0 - a))
    return PowerSeries(coeffs)


def make_geometric(n: int) -> PowerSeries:
    return PowerSeries(np.ones(n + 1))


def make_basis(j: int, n: int) -> PowerSeries:
    if not 0 <= j <= n:
        raise SeriesError(f"basis index must satisfy 0 <= j <= N, got j={j}, N={n}")
    e = np.zeros(n + 1)
    e[j] = 1.0
    return PowerSeries(e)


def min_truncation(a: float) -> int:
    """Smallest N honouring ``N >= 64/(1-a)`` for a-parameterised families."""
    return int(math.ceil(64.0 / (1.0 - a) - 1e-9))


@dataclass(frozen=True)
class TestFamilySpec:
    """Named family plus parameters; ``build()`` produces the series."""

    __test__ = False  # not a pytest class

    family: str
    truncation: int
    alpha: float = 1.0
    a: float = 0.5
    index: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SeriesError(f"unknown family {self.family!r}; expected one of {sorted(FAMILIES)}")
        if self.family == "fa" and not self.alpha > 0:
            raise SeriesError("fa requires alpha > 0")
        if self.family in ("fa", "log_squared_a") and not 0.0 < self.a < 1.0:
            raise SeriesError(f"{self.family} requires a in (0, 1)")

    def build(self) -> PowerSeries:
        n = self.truncation
        if self.family == "power_alpha":
            return make_power_alpha(self.alpha, n)
        if self.family == "fa":
            return make_fa(self.alpha, self.a, n)
        if self.family == "log":
            return make_log(n)
        if self.family == "log_squared_a":
            return make_log_squared_a(self.a, n)
        if self.family == "geometric":
            return make_geometric(n)
        return make_basis(self.index, n)


FAMILIES = ("power_alpha", "fa", "log", "log_squared_a", "geometric", "basis")


def parse_builtin(name: str, n: int) -> PowerSeries:
    """Resolve ``builtin:geometric``, ``builtin:log``, ``builtin:power_alpha:<alpha>``,
    ``builtin:fa:<alpha>:<a>`` (also ``builtin:log_squared:<a>``, ``builtin:basis:<j>``)."""
    if not name.startswith("builtin:"):
        raise SeriesError(f"not a builtin generator: {name!r}")
    parts = name.split(":")[1:]
    try:
        kind, args = parts[0], [float(p) for p in parts[1:]]
        if kind == "geometric" and not args:
            return make_geometric(n)
        if kind == "log" and not args:
            return make_log(n)
        if kind == "power_alpha" and len(args) == 1:
            return make_power_alpha(args[0], n)
        if kind == "fa" and len(args) == 2:
            if n < min_truncation(args[1]):
                raise SeriesError(f"fa with a={args[1]} needs N >= 64/(1-a) = {min_truncation(args[1])}, got N={n}")
            return make_fa(args[0], args[1], n)
        if kind == "log_squared" and len(args) == 1:
            if n < min_truncation(args[0]):
                raise SeriesError(f"log_squared with a={args[0]} needs N >= {min_truncation(args[0])}, got N={n}")
            return make_log_squared_a(args[0], n)
        if kind == "basis" and len(args) == 1:
            return make_basis(int(args[0]), n)
    except (IndexError, ValueError) as exc:
        raise SeriesError(f"malformed builtin {name!r}: {exc}") from None
    raise SeriesError(f"unknown builtin {name!r}")
