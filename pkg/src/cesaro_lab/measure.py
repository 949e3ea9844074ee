"""Finite positive Borel measures on [0, 1), described through their tails.

A measure is a sum of components. Every component knows its tail
``mu([t, 1))`` in closed form, and its moments either in closed form or via
the identity ``mu_n = n * int_0^1 t^(n-1) mu([t,1)) dt`` (n >= 1).
"""

from __future__ import annotations

import json
import math
from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from typing import ClassVar, Union

import numpy as np
from scipy import special

from .gammaratio import log_gamma_ratio
from .quadrature import QuadratureError, adaptive, composite_gauss_legendre

__all__ = [
    "Atomic",
    "canonical_suite",
    "Lebesgue",
    "MeasureError",
    "MeasureSpec",
    "PowerLogTail",
    "QuadratureError",
    "load_measure",
    "moment",
    "moment_sequence",
    "parse_measure",
    "tail_mass",
]


class MeasureError(ValueError):
    """A measure description violates one of its invariants."""


def _check_t(t: float) -> float:
    t = float(t)
    if not (0.0 <= t < 1.0):
        raise MeasureError(f"t must lie in [0, 1), got {t!r}")
    return t


@dataclass(frozen=True)
class Atomic:
    """Point masses ``sum_i w_i delta_{t_i}`` with every ``t_i`` in [0, 1)."""

    atoms: tuple[tuple[float, float], ...]
    kind: ClassVar[str] = "atomic"

    def __post_init__(self):
        atoms = tuple((float(t), float(w)) for t, w in self.atoms)
        if not atoms:
            raise MeasureError("atomic component needs at least one atom")
        for t, w in atoms:
            if not (0.0 <= t < 1.0):
                raise MeasureError(f"atom location must lie in [0, 1) (no mass at 1), got t={t!r}")
            if not (w > 0.0 and math.isfinite(w)):
                raise MeasureError(f"atom weight must be finite and > 0, got w={w!r}")
        object.__setattr__(self, "atoms", atoms)

    def tail(self, t: float) -> float:
        return math.fsum(w for ti, w in self.atoms if ti >= t)

    def tail_at_gap(self, x: float) -> float:
        # x = 1 - t; an atom at t_i is in [t, 1) iff 1 - t_i <= x
        return math.fsum(w for ti, w in self.atoms if 1.0 - ti <= x)

    def moments(self, n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=float)
        out = np.zeros(n.shape)
        for t, w in self.atoms:
            out += w * np.power(t, n)
        return out

    def scaled(self, lam: float) -> Atomic:
        return Atomic(tuple((t, lam * w) for t, w in self.atoms))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "atoms": [{"t": t, "w": w} for t, w in self.atoms]}


@dataclass(frozen=True)
class Lebesgue:
    """Uniform measure ``weight * dt`` on [0, 1)."""

    weight: float = 1.0
    kind: ClassVar[str] = "lebesgue"

    def __post_init__(self):
        if not (self.weight > 0.0 and math.isfinite(self.weight)):
            raise MeasureError(f"lebesgue weight must be finite and > 0, got {self.weight!r}")

    def tail(self, t: float) -> float:
        return self.weight * (1.0 - t)

    def tail_at_gap(self, x: float) -> float:
        return self.weight * x

    def moments(self, n: np.ndarray) -> np.ndarray:
        return self.weight / (np.asarray(n, dtype=float) + 1.0)

    def scaled(self, lam: float) -> Lebesgue:
        return Lebesgue(lam * self.weight)

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.weight != 1.0:
            d["weight"] = self.weight
        return d


@dataclass(frozen=True)
class PowerLogTail:
    """Measure with tail ``c (1-t)^s log^(-gamma)(e/(1-t))``.

    The tail is nonincreasing (so the measure is positive) exactly when
    ``s > 0`` and ``gamma >= -s``.
    """

    s: float
    gamma: float = 0.0
    c: float = 1.0
    kind: ClassVar[str] = "power_log_tail"

    def __post_init__(self):
        for name in ("s", "gamma", "c"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (self.s > 0.0 and math.isfinite(self.s)):
            raise MeasureError(f"power_log_tail needs s > 0 (tail must vanish at 1), got s={self.s!r}")
        if not (self.c > 0.0 and math.isfinite(self.c)):
            raise MeasureError(f"power_log_tail needs c > 0, got c={self.c!r}")
        if not math.isfinite(self.gamma) or self.gamma < -self.s:
            raise MeasureError(
                f"power_log_tail needs gamma >= -s for a nonincreasing tail, got s={self.s!r}, gamma={self.gamma!r}"
            )

    def tail_at_gap(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        if self.gamma == 0.0:
            return self.c * x**self.s
        return self.c * x**self.s * (1.0 - math.log(x)) ** (-self.gamma)

    def tail(self, t: float) -> float:
        return self.tail_at_gap(1.0 - t)

    def moments(self, n: np.ndarray, method: str = "auto") -> np.ndarray:
        n = np.asarray(n)
        if method == "auto":
            method = "closed" if self.gamma == 0.0 else "quadrature"
        if method == "closed":
            if self.gamma != 0.0:
                raise MeasureError("closed-form moments exist only for gamma = 0")
            nf = n.astype(float)
            # c * s * B(n+1, s) = c * Gamma(n+1) Gamma(s+1) / Gamma(n+s+1)
            return self.c * special.gamma(self.s + 1.0) * np.exp(-log_gamma_ratio(nf + 1.0, self.s))
        if method == "quadrature":
            return np.array([_plt_moment_adaptive(self.s, self.gamma, self.c, int(k)) for k in n.ravel()]).reshape(
                n.shape
            )
        raise ValueError(f"unknown moment method {method!r}")

    def moment_table(self, n_max: int, method: str = "auto") -> np.ndarray:
        if method == "auto":
            method = "closed" if self.gamma == 0.0 else "quadrature"
        if method == "closed":
            return self.moments(np.arange(n_max + 1), "closed")
        return _plt_moment_table(self.s, self.gamma, self.c, n_max)

    def scaled(self, lam: float) -> PowerLogTail:
        return PowerLogTail(self.s, self.gamma, lam * self.c)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "s": self.s, "gamma": self.gamma, "c": self.c}


MeasureComponent = Union[Atomic, Lebesgue, PowerLogTail]


@dataclass(frozen=True)
class MeasureSpec:
    """A finite positive measure on [0, 1) given as a sum of components."""

    components: tuple[MeasureComponent, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise MeasureError("measure needs at least one component")
        for comp in comps:
            if not isinstance(comp, (Atomic, Lebesgue, PowerLogTail)):
                raise MeasureError(f"unknown measure component {comp!r}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, *components: MeasureComponent) -> MeasureSpec:
        return cls(tuple(components))

    @property
    def total_mass(self) -> float:
        return tail_mass(self, 0.0)

    def tail_at_gap(self, x: float) -> float:
        """``mu([1 - x, 1))`` for a gap ``x`` in (0, 1]; exact for dyadic gaps."""
        return math.fsum(c.tail_at_gap(x) for c in self.components)

    def scaled(self, lam: float) -> MeasureSpec:
        if not lam > 0:
            raise MeasureError("scale factor must be positive")
        return MeasureSpec(tuple(c.scaled(lam) for c in self.components))

    def to_dict(self) -> dict:
        return {"components": [c.to_dict() for c in self.components]}

    def label(self) -> str:
        parts = []
        for c in self.components:
            if isinstance(c, Atomic):
                parts.append("Atomic(" + ",".join(f"{t:g}:{w:g}" for t, w in c.atoms) + ")")
            elif isinstance(c, Lebesgue):
                parts.append("Lebesgue" if c.weight == 1.0 else f"Lebesgue({c.weight:g})")
            else:
                parts.append(f"PLT(s={c.s:g},g={c.gamma:g},c={c.c:g})")
        return "+".join(parts)


def tail_mass(m: MeasureSpec, t: float) -> float:
    """Return ``mu([t, 1))``."""
    t = _check_t(t)
    return math.fsum(c.tail(t) for c in m.components)


def moment(m: MeasureSpec, n: int, method: str = "auto") -> float:
    """Return the n-th moment ``int t^n dmu(t)``.

    ``method`` only affects power-log components: ``"closed"`` forces the
    Beta formula (gamma = 0 only), ``"quadrature"`` forces the tail integral.
    """
    n = int(n)
    if n < 0:
        raise MeasureError(f"moment order must be >= 0, got {n}")
    total = 0.0
    for c in m.components:
        if isinstance(c, PowerLogTail):
            total += float(c.moments(np.array([n]), method)[0])
        else:
            total += float(c.moments(np.array([n]))[0])
    return total


def moment_sequence(m: MeasureSpec, n_max: int, method: str = "auto") -> np.ndarray:
    """Return ``(mu_0, ..., mu_{n_max})`` as a read-only array.

    Quadrature-backed components share one composite Gauss-Legendre rule
    across all orders. Results are cached per (measure, n_max, method).
    """
    n_max = int(n_max)
    if n_max < 0:
        raise MeasureError(f"n_max must be >= 0, got {n_max}")
    return _moment_sequence_cached(m, n_max, method)


@lru_cache(maxsize=64)
def _moment_sequence_cached(m: MeasureSpec, n_max: int, method: str) -> np.ndarray:
    n = np.arange(n_max + 1)
    out = np.zeros(n_max + 1)
    for c in m.components:
        if isinstance(c, PowerLogTail):
            out += c.moment_table(n_max, method)
        else:
            out += c.moments(n)
    out.setflags(write=False)
    return out


# ---------------------------------------------------------------------------
# power-log tail moments by quadrature
#
# With t = 1 - e^{-u}:
#   mu_n = n c int_0^inf (1 - e^{-u})^{n-1} e^{-(s+1)u} (1+u)^{-gamma} du
# The integrand peaks near u = log n with O(1) width in u.


def _plt_log_integrand(s: float, gamma: float, n: int, u: np.ndarray) -> np.ndarray:
    val = -(s + 1.0) * u - gamma * np.log1p(u)
    if n > 1:
        with np.errstate(divide="ignore"):
            val = val + (n - 1) * np.log1p(-np.exp(-u))
    return val


def _tail_span(s: float, gamma: float) -> float:
    # e^{-(s+1)v} (1+v)^{|gamma|} below ~1e-19 relative to the peak
    span = 44.0 / (s + 1.0)
    if gamma < 0:
        span *= 1.0 + 0.25 * abs(gamma)
    return span


def _plt_moment_adaptive(s: float, gamma: float, c: float, n: int, rtol: float = 1e-10) -> float:
    if n < 0:
        raise MeasureError(f"moment order must be >= 0, got {n}")
    if n == 0:
        return c

    def fn(u: float) -> float:
        return math.exp(float(_plt_log_integrand(s, gamma, n, np.array(u))))

    peak = math.log(n)
    span = _tail_span(s, gamma)
    breaks = sorted({0.0, max(0.0, peak - 6.0), max(0.0, peak - 2.0), peak + 2.0, peak + 8.0})
    breaks += [peak + span, peak + 2 * span, math.inf]
    val, _ = adaptive(fn, breaks, rtol=rtol)
    return n * c * val


_PANEL_WIDTH = 0.25
_PANEL_ORDER = 16


def _plt_moment_table(s: float, gamma: float, c: float, n_max: int) -> np.ndarray:
    out = np.empty(n_max + 1)
    out[0] = c
    if n_max == 0:
        return out
    u_hi = math.log(n_max) + _tail_span(s, gamma) + 2.0
    edges = np.arange(0.0, u_hi + _PANEL_WIDTH, _PANEL_WIDTH)
    nodes, weights = composite_gauss_legendre(edges, _PANEL_ORDER)
    base = -(s + 1.0) * nodes - gamma * np.log1p(nodes)
    lg = np.log1p(-np.exp(-nodes))
    start = 1
    while start <= n_max:
        # geometric chunks keep the active node window narrow
        stop = min(n_max, max(start + 255, 2 * start))
        ns = np.arange(start, stop + 1, dtype=float)
        # nodes with u < log(n_lo) - 6 contribute below exp(-400)
        keep = nodes >= math.log(start) - 6.0
        expo = (ns[:, None] - 1.0) * lg[None, keep] + base[None, keep]
        out[start : stop + 1] = c * ns * (np.exp(expo) @ weights[keep])
        start = stop + 1
    return out


# ---------------------------------------------------------------------------
# measure spec documents


def parse_measure(doc: Mapping) -> MeasureSpec:
    """Build a :class:`MeasureSpec` from its JSON document form."""
    if not isinstance(doc, Mapping) or "components" not in doc:
        raise MeasureError('measure document must be an object with a "components" list')
    comps = doc["components"]
    if not isinstance(comps, list) or not comps:
        raise MeasureError('"components" must be a nonempty list')
    out = []
    for i, comp in enumerate(comps):
        kind = comp.get("kind") if isinstance(comp, Mapping) else None
        try:
            if kind == "atomic":
                atoms = comp.get("atoms")
                if not isinstance(atoms, list):
                    raise MeasureError('atomic component needs an "atoms" list')
                out.append(Atomic(tuple((a["t"], a["w"]) for a in atoms)))
            elif kind == "lebesgue":
                out.append(Lebesgue(float(comp.get("weight", 1.0))))
            elif kind == "power_log_tail":
                out.append(PowerLogTail(float(comp["s"]), float(comp.get("gamma", 0.0)), float(comp.get("c", 1.0))))
            else:
                raise MeasureError(f"unknown component kind {kind!r} (expected atomic, lebesgue, power_log_tail)")
        except (KeyError, TypeError) as exc:
            raise MeasureError(f"component {i}: missing or malformed field {exc}") from None
        except MeasureError as exc:
            raise MeasureError(f"component {i}: {exc}") from None
    return MeasureSpec(tuple(out))


def load_measure(path: str) -> MeasureSpec:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MeasureError(f"{path}: not valid JSON ({exc})") from None
    return parse_measure(doc)


def canonical_suite() -> dict[str, MeasureSpec]:
    """The reference measures used by the agreement matrix."""
    suite = {
        "lebesgue": MeasureSpec.of(Lebesgue()),
        "atomic(0.5)": MeasureSpec.of(Atomic(((0.5, 1.0),))),
    }
    for s in (0.5, 1.0, 2.0):
        for g in (0.0, 1.0, 1.5):
            suite[f"plt(s={s:g},g={g:g})"] = MeasureSpec.of(PowerLogTail(s, g, 1.0))
    return suite
