"""The integral ``I_r(delta, c, k)`` and ratio scans of its growth as r -> 1.

    I_r = int_0^1 (1-t)^delta / (1-tr)^(delta+c+1) * log^k(e/(1-t)) dt

With ``u = 1 - t`` and then ``u = exp(-v)`` the integral becomes

    int_0^inf exp(-(delta+1) v) (eps + r e^{-v})^-(delta+c+1) (1+v)^k dv,  eps = 1 - r,

whose integrand is smooth and changes regime around ``v = -log eps``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import adaptive

__all__ = ["AsymptoticScan", "kernel_integral", "predicted_growth", "regime_for", "regime_scan"]

STABLE_BAND = 0.15


def regime_for(c: float, k: float) -> str:
    if c > 0:
        return "PowerLog"
    if k < -1:
        return "Constant"
    if k == -1:
        return "LogLog"
    return "LogPower"


def _check(delta: float, c: float) -> None:
    if not delta > -1:
        raise ValueError(f"delta must be > -1, got {delta!r}")
    if not c >= 0:
        raise ValueError(f"c must be >= 0, got {c!r}")


def kernel_integral(delta: float, c: float, k: float, r: float, rtol: float = 1e-10) -> float:
    """Evaluate ``I_r`` to relative accuracy ``rtol`` (raises QuadratureError otherwise)."""
    _check(delta, c)
    if not 0.0 <= r < 1.0:
        raise ValueError(f"r must lie in [0, 1), got {r!r}")
    eps = 1.0 - r
    p = delta + c + 1.0
    a = delta + 1.0

    def fn(v: float) -> float:
        # log of the integrand, kept in log space for large v
        denom = eps + r * math.exp(-v)
        return math.exp(-a * v - p * math.log(denom) + k * math.log1p(v))

    v_split = -math.log(eps) if eps < 1.0 else 0.0
    # the (delta+1) decay rate sets how far the right tail must go
    tail = 60.0 / a
    breaks = [0.0]
    for b in (v_split - 4.0, v_split, v_split + 4.0):
        if b > breaks[-1]:
            breaks.append(b)
    breaks += [breaks[-1] + tail, breaks[-1] + 4 * tail, math.inf]
    val, _ = adaptive(fn, breaks, rtol=rtol, limit=1000)
    return val


def predicted_growth(regime: str, k: float, c: float, r: np.ndarray) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    ell = 1.0 - np.log1p(-r)  # log(e/(1-r))
    if regime == "Constant":
        return np.ones_like(r)
    if regime == "LogLog":
        return np.log(ell + 1.0)  # log log(e^2/(1-r))
    if regime == "LogPower":
        return ell ** (k + 1.0)
    return (1.0 - r) ** (-c) * ell**k


@dataclass(frozen=True)
class AsymptoticScan:
    delta: float
    c: float
    k: float
    regime: str
    j: np.ndarray
    r: np.ndarray
    value: np.ndarray
    predicted: np.ndarray
    ratio: np.ndarray
    stabilized: bool

    def rows(self) -> list[tuple]:
        return [
            (int(j), float(r), float(v), float(p), float(q))
            for j, r, v, p, q in zip(self.j, self.r, self.value, self.predicted, self.ratio)
        ]


def regime_scan(delta: float, c: float, k: float, depth: int = 20) -> AsymptoticScan:
    """Evaluate ``I_r`` at ``r = 1 - 2^-j``, ``j = 5..depth``, against the predicted growth.

    ``stabilized`` means the ratio over the final three samples stays within a
    15% band (relative to the largest of them).
    """
    _check(delta, c)
    if depth < 10:
        raise ValueError("depth must be >= 10")
    js = np.arange(5, depth + 1)
    r = 1.0 - 2.0 ** -js.astype(float)
    regime = regime_for(c, k)
    vals = np.array([kernel_integral(delta, c, k, float(x)) for x in r])
    pred = predicted_growth(regime, k, c, r)
    ratio = vals / pred
    last = ratio[-3:]
    stabilized = bool((last.max() - last.min()) < STABLE_BAND * last.max())
    return AsymptoticScan(delta, c, k, regime, js, r, vals, pred, ratio, stabilized)
