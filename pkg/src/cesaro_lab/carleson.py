"""(Vanishing) logarithmic Carleson classification of measures on [0, 1).

Two independent routes: tail quotients on a dyadic grid approaching 1, and
the decay rate of the moments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .measure import MeasureError, MeasureSpec, moment

__all__ = [
    "CarlesonReport",
    "carleson_quotient",
    "classify",
    "moment_carleson_test",
    "quotient_at_gap",
]

CARLESON_BOUNDED = "CarlesonBounded"
VANISHING = "VanishingCarleson"
NOT_CARLESON = "NotCarleson"
INCONCLUSIVE = "Inconclusive"

# Verdict thresholds, applied to the last half of the dyadic grid.
GROWTH_SLOPE = 0.05  # log2 q per level
HALVING = 0.5
PLATEAU_VARIATION = 0.20
# exponent of q against log(e/(1-t)); catches logarithmic growth/decay
LOG_EXPONENT = 0.25
MOMENT_CAP = 10**6


def quotient_at_gap(m: MeasureSpec, s: float, gamma: float, x: float) -> float:
    """``mu([1-x, 1)) log^gamma(e/x) / x^s`` for a gap ``x = 1 - t`` in (0, 1]."""
    tail = m.tail_at_gap(x)
    if tail == 0.0:
        return 0.0
    return tail * (1.0 - math.log(x)) ** gamma / x**s


def carleson_quotient(m: MeasureSpec, s: float, gamma: float, t: float) -> float:
    """``q(t) = mu([t,1)) log^gamma(e/(1-t)) / (1-t)^s``."""
    t = float(t)
    if not 0.0 <= t < 1.0:
        raise MeasureError(f"t must lie in [0, 1), got {t!r}")
    return quotient_at_gap(m, s, gamma, 1.0 - t)


@dataclass(frozen=True)
class CarlesonReport:
    s: float
    gamma: float
    t: np.ndarray = field(repr=False)
    q: np.ndarray = field(repr=False)
    sup_estimate: float
    limit_estimate: float
    grid_slope: float
    log_exponent: float
    moment_sup: float
    verdict: str

    @property
    def bounded(self) -> bool | None:
        if self.verdict in (CARLESON_BOUNDED, VANISHING):
            return True
        if self.verdict == NOT_CARLESON:
            return False
        return None

    @property
    def vanishing(self) -> bool | None:
        if self.verdict == VANISHING:
            return True
        if self.verdict in (CARLESON_BOUNDED, NOT_CARLESON):
            return False
        return None

    def rows(self) -> list[tuple]:
        return [(j, float(t), float(q)) for j, (t, q) in enumerate(zip(self.t, self.q))]


def _slope(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.polyfit(x, y, 1)[0])


def _verdict(j: np.ndarray, q: np.ndarray) -> tuple[str, float, float, float]:
    """Return (verdict, limit_estimate, grid_slope, log_exponent) from the last half of the grid."""
    depth = int(j[-1])
    tail_j = j[depth // 2 :]
    tail_q = q[depth // 2 :]
    q_mid, q_last = float(tail_q[0]), float(tail_q[-1])
    if q_last == 0.0:
        return VANISHING, 0.0, -math.inf, -math.inf
    if np.any(tail_q == 0.0):
        # zero then positive cannot happen for a nonincreasing tail
        return INCONCLUSIVE, q_last, math.nan, math.nan
    logq = np.log(tail_q)
    grid_slope = _slope(tail_j, logq / math.log(2.0))
    ell = 1.0 + tail_j * math.log(2.0)  # log(e/(1-t_j))
    log_exponent = _slope(np.log(ell), logq)
    steps = np.diff(tail_q)
    scale = np.abs(tail_q).max()
    increasing = bool(np.all(steps >= -1e-12 * scale))
    decreasing = bool(np.all(steps <= 1e-12 * scale))
    if grid_slope >= GROWTH_SLOPE or (increasing and log_exponent >= LOG_EXPONENT):
        return NOT_CARLESON, math.inf, grid_slope, log_exponent
    if decreasing and (q_last < HALVING * q_mid or log_exponent <= -LOG_EXPONENT):
        return VANISHING, 0.0, grid_slope, log_exponent
    if (tail_q.max() - tail_q.min()) < PLATEAU_VARIATION * tail_q.max():
        return CARLESON_BOUNDED, float(tail_q.mean()), grid_slope, log_exponent
    return INCONCLUSIVE, q_last, grid_slope, log_exponent


def _moment_grid(s: float, depth: int) -> np.ndarray:
    top = min(math.ceil(depth * s), int(math.log2(MOMENT_CAP)))
    return 2 ** np.arange(max(top, 0) + 1)


def classify(m: MeasureSpec, s: float, gamma: float = 0.0, depth: int = 30) -> CarlesonReport:
    """Classify ``m`` as (vanishing) gamma-logarithmic s-Carleson.

    Samples ``q`` at ``t_j = 1 - 2^-j``, ``j = 0..depth``. On the last half of
    the grid: NotCarleson if ``log2 q`` rises with slope >= 0.05 per level (or
    rises monotonically like a positive power of ``log(e/(1-t))``);
    VanishingCarleson if ``q`` decreases and either halves or decays like a
    negative log power; CarlesonBounded if it varies by less than 20%;
    Inconclusive otherwise.
    """
    if depth < 8:
        raise ValueError("depth must be >= 8")
    if depth > 52:
        raise ValueError("depth above 52 leaves double precision for t")
    if s < 0:
        raise ValueError("s must be >= 0")
    j = np.arange(depth + 1)
    x = 2.0 ** -j.astype(float)
    q = np.array([quotient_at_gap(m, s, gamma, float(g)) for g in x])
    verdict, limit, grid_slope, log_exponent = _verdict(j, q)
    ns = _moment_grid(s, depth)
    mom = np.array([moment(m, int(n)) for n in ns])
    moment_sup = float(np.max(ns.astype(float) ** s * np.log(ns + 1.0) ** gamma * mom))
    return CarlesonReport(
        s=s,
        gamma=gamma,
        t=1.0 - x,
        q=q,
        sup_estimate=float(q.max()),
        limit_estimate=limit,
        grid_slope=grid_slope,
        log_exponent=log_exponent,
        moment_sup=moment_sup,
        verdict=verdict,
    )


@dataclass(frozen=True)
class MomentTest:
    sup: float
    exponent: float
    n: np.ndarray = field(repr=False)
    weighted: np.ndarray = field(repr=False)

    def running_sup(self) -> np.ndarray:
        return np.maximum.accumulate(self.weighted)


def moment_carleson_test(m: MeasureSpec, s: float, n_grid) -> MomentTest:
    """``sup n^s mu_n`` over ``n_grid`` and the fitted decay exponent of ``mu_n``.

    The exponent is the least-squares slope of ``log mu_n`` against ``log n``
    over the top half of the grid (about ``-s*`` when ``mu_n ~ n^-s*``).
    """
    n = np.asarray(n_grid, dtype=int)
    if n.ndim != 1 or n.size < 2 or np.any(n < 1) or np.any(np.diff(n) <= 0):
        raise ValueError("n_grid must be increasing integers >= 1 with at least two entries")
    mom = np.array([moment(m, int(k)) for k in n])
    weighted = n.astype(float) ** s * mom
    top = slice(n.size // 2, None)
    with np.errstate(divide="ignore"):
        logm = np.log(mom[top])
    if np.all(np.isfinite(logm)):
        exponent = _slope(np.log(n[top].astype(float)), logm)
    else:
        exponent = -math.inf
    return MomentTest(sup=float(weighted.max()), exponent=exponent, n=n, weighted=weighted)
