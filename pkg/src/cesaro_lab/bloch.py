"""Bloch-type seminorm estimates and coefficient-level membership criteria."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .series import PowerSeries, compensated_cumsum, derivative, evaluate_many

# Growth factor per truncation doubling above which a seminorm is called unbounded.
ESCALATION_GROWTH = 1.25
# Trace-doubling ratios for the coefficient criteria.
PLATEAU_RATIO = 1.10
GROWTH_RATIO = 1.25


@dataclass(frozen=True)
class SeminormEstimate:
    alpha: float
    value: float
    argmax_radius: float
    argmax_angle: float
    grid_depth: int
    truncation_limited: bool


def radius_cap_level(n: int) -> int:
    """Deepest dyadic level j with ``1 - 2^-j <= 1 - 8/N``."""
    if n < 8:
        return 0
    return int(math.floor(math.log2(n / 8.0) + 1e-12))


def dyadic_radii(levels: int) -> np.ndarray:
    return 1.0 - 2.0 ** -np.arange(levels + 1, dtype=float)


def bloch_seminorm(f: PowerSeries, alpha: float, depth: int = 30, angles: int = 64) -> SeminormEstimate:
    """Estimate ``sup (1-|z|^2)^alpha |f'(z)|`` on a dyadic polar grid.

    Radii are ``1 - 2^-j`` for ``j = 0..min(depth, cap)`` where the cap keeps
    ``r <= 1 - 8/N``. Series whose coefficients share one sign are only
    sampled on the positive axis, where their derivative attains its maximum modulus.
    Ties go to the smallest (r, theta).
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be > 0, got {alpha!r}")
    if depth < 4 or angles < 1:
        raise ValueError("need depth >= 4 and angles >= 1")
    cap = radius_cap_level(f.truncation)
    levels = min(depth, cap)
    radii = dyadic_radii(levels)
    weight = (1.0 - radii**2) ** alpha
    df = derivative(f).coeffs
    if f.nonnegative or angles == 1 or np.all(f.coeffs <= 0):
        thetas = np.zeros(1)
        vals = np.abs(evaluate_many(df, radii))[:, None]
    else:
        thetas = 2.0 * math.pi * np.arange(angles) / angles
        vals = np.abs(evaluate_many(df, radii, thetas))
    scored = weight[:, None] * vals
    i, k = np.unravel_index(int(np.argmax(scored)), scored.shape)
    return SeminormEstimate(
        alpha=alpha,
        value=float(scored[i, k]),
        argmax_radius=float(radii[i]),
        argmax_angle=float(thetas[k]),
        grid_depth=levels,
        truncation_limited=depth > cap,
    )


def escalation_verdict(
    make: Callable[[int], PowerSeries], alpha: float, truncations: Sequence[int] = (2**14, 2**15, 2**16)
) -> tuple[str, list[float]]:
    """Seminorm under truncation doubling: ``"bounded"`` unless it grows by > 1.25x per doubling."""
    values = [bloch_seminorm(make(n), alpha).value for n in truncations]
    growth = max(b / a if a > 0 else (math.inf if b > 0 else 1.0) for a, b in zip(values[:-1], values[1:]))
    return ("unbounded" if growth > ESCALATION_GROWTH else "bounded"), values


@dataclass(frozen=True)
class CoefficientTrace:
    sup: float
    argmax: int
    n: np.ndarray = field(repr=False)
    trace: np.ndarray = field(repr=False)

    @property
    def verdict(self) -> str:
        return trace_verdict(self.trace)


def trace_verdict(trace: np.ndarray) -> str:
    """Plateau/growth call from the last doubling of a power-of-2 trace."""
    last, prev = float(trace[-1]), float(trace[-2])
    if prev <= 0:
        return "bounded" if last <= 0 else "unbounded"
    ratio = last / prev
    if ratio <= PLATEAU_RATIO:
        return "bounded"
    if ratio > GROWTH_RATIO:
        return "unbounded"
    return "inconclusive"


def _dyadic_indices(n: int) -> np.ndarray:
    return 2 ** np.arange(int(math.log2(n)) + 1)


def coefficient_criterion(f: PowerSeries, alpha: float) -> CoefficientTrace:
    """``max_{1<=n<=N} n^-alpha sum_{k<=n} k a_k`` for nonnegative coefficients.

    The trace is sampled at powers of two.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be > 0, got {alpha!r}")
    a = f.coeffs
    if np.any(a < 0):
        raise ValueError("coefficient criterion requires nonnegative coefficients")
    n_top = f.truncation
    if n_top < 1:
        raise ValueError("need truncation >= 1")
    k = np.arange(1, n_top + 1, dtype=float)
    full = compensated_cumsum(k * a[1:]) * k**-alpha
    j = int(np.argmax(full))
    idx = _dyadic_indices(n_top)
    return CoefficientTrace(sup=float(full[j]), argmax=j + 1, n=idx, trace=full[idx - 1])


def coefficient_trace(coeffs: np.ndarray, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Dyadic samples of ``n^-beta sum_{k<=n} k b_k`` (no sign requirement)."""
    b = np.asarray(coeffs, dtype=float)
    n_top = b.size - 1
    k = np.arange(1, n_top + 1, dtype=float)
    full = compensated_cumsum(k * b[1:]) * k**-beta
    idx = _dyadic_indices(n_top)
    return idx, full[idx - 1]


def partial_sum_growth(f: PowerSeries) -> tuple[float, int]:
    """``sup_{n>=1} |a_1 + ... + a_n| / log(n+1)`` and the n attaining it.

    The constant term is excluded, matching the Bloch-space partial-sum bound.
    """
    if f.truncation < 1:
        return 0.0, 1
    s = np.abs(compensated_cumsum(f.coeffs[1:]))
    n = np.arange(1, f.truncation + 1, dtype=float)
    q = s / np.log(n + 1.0)
    j = int(np.argmax(q))
    return float(q[j]), j + 1


def bloch_norm(f: PowerSeries, alpha: float, depth: int = 30, angles: int = 64) -> float:
    """``|f(0)| + seminorm``."""
    return abs(float(f.coeffs[0])) + bloch_seminorm(f, alpha, depth, angles).value


def growth_bound_check(
    f: PowerSeries, alpha: float, seminorm: float, depth: int = 30, angles: int = 16
) -> float:
    """Worst ratio of ``|f(z)|`` to the pointwise growth bound for B^alpha.

    The bound is ``norm`` (alpha < 1), ``norm * log(2/(1-|z|))`` (alpha = 1),
    ``norm * (1-|z|)^(1-alpha)`` (alpha > 1), with ``norm = seminorm`` the
    caller's B^alpha norm bound. Evaluated on the capped dyadic radial grid.
    """
    levels = min(depth, radius_cap_level(f.truncation))
    radii = dyadic_radii(levels)
    if f.nonnegative or np.all(f.coeffs <= 0):
        vals = np.abs(evaluate_many(f.coeffs, radii))
    else:
        thetas = 2.0 * math.pi * np.arange(angles) / angles
        vals = np.abs(evaluate_many(f.coeffs, radii, thetas)).max(axis=1)
    if alpha < 1:
        shape = np.ones_like(radii)
    elif alpha == 1:
        shape = np.log(2.0 / (1.0 - radii))
    else:
        shape = (1.0 - radii) ** (1.0 - alpha)
    if seminorm <= 0:
        return math.inf if np.any(vals > 0) else 0.0
    return float(np.max(vals / (seminorm * shape)))
