"""Predicted versus measured boundedness and compactness of C_mu: B^alpha -> B^beta.

The predicted side dispatches on the (alpha, beta) regime and classifies the
measure with the matching Carleson condition. The measured side runs
lower-bound ladders: norms of ``C_mu`` applied to test families that
concentrate near z = 1, plus (for alpha <= 1) the coefficient trace of
``C_mu`` applied to ``sum n^(alpha-2) z^n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import carleson
from .bloch import bloch_seminorm, coefficient_trace
from .measure import MeasureSpec, moment_sequence
from .series import cesaro_apply
from .testfns import make_fa, make_log_squared_a, make_power_alpha, min_truncation

__all__ = [
    "ProbeReport",
    "RegimeVerdict",
    "Rung",
    "boundedness_probe",
    "compactness_probe",
    "full_report",
    "regime_of",
    "theorem_verdict",
]

BELOW_ONE, ABOVE_ONE, AT_ONE, ALWAYS = "AlphaBelowOne", "AlphaAboveOne", "AlphaOne", "AlwaysBounded"

YES, NO, UNCONDITIONAL, UNKNOWN = "yes", "no", "unconditional-yes", "unknown"

BOUNDED_LIKE = "bounded-like"
UNBOUNDED_LIKE = "unbounded-like"
COMPACT_LIKE = "compact-like"
NONCOMPACT_LIKE = "noncompact-like"
INCONCLUSIVE = "inconclusive"

# log2-slope thresholds per ladder level (or per doubling of n); the gap is a dead zone
BOUNDED_SLOPE = 0.05
UNBOUNDED_SLOPE = 0.15
# exponent against log(1/(1-a)) or log n that marks logarithmic growth/decay
LOG_GROWTH_EXPONENT = 0.5
LOG_DECAY_EXPONENT = -0.25
HALVING = 0.5
PLATEAU_VARIATION = 0.20
# a plateau still falling this far below its peak may be a slow log decay
PLATEAU_DROP = 0.005
# allowed spread of input norms along a ladder
INPUT_BAND = 4.0

_UNIT_TOL = 1e-12


def regime_of(alpha: float, beta: float) -> str:
    """Map ``(alpha, beta)`` to exactly one of BELOW_ONE, ABOVE_ONE, AT_ONE, AlwaysBounded."""
    if not (alpha > 0 and beta > 0):
        raise ValueError(f"alpha and beta must be > 0, got {alpha!r}, {beta!r}")
    if abs(alpha - 1.0) <= _UNIT_TOL:
        return AT_ONE if beta <= 2.0 else ALWAYS
    if alpha < 1.0:
        return BELOW_ONE if beta < 2.0 else ALWAYS
    return ABOVE_ONE if beta < alpha + 1.0 else ALWAYS


@dataclass(frozen=True)
class RegimeVerdict:
    alpha: float
    beta: float
    regime: str
    required_condition: str
    predicted_bounded: str
    predicted_compact: str
    carleson: carleson.CarlesonReport | None = field(default=None, repr=False)
    moment_form: dict | None = None

    def summary(self) -> dict:
        out = {
            "alpha": self.alpha,
            "beta": self.beta,
            "regime": self.regime,
            "required_condition": self.required_condition,
            "predicted_bounded": self.predicted_bounded,
            "predicted_compact": self.predicted_compact,
        }
        if self.carleson is not None:
            out["carleson_verdict"] = self.carleson.verdict
        if self.moment_form is not None:
            out["moment_form"] = self.moment_form
        return out


def _tri(flag: bool | None) -> str:
    if flag is None:
        return UNKNOWN
    return YES if flag else NO


def _moment_form(m: MeasureSpec, s: float, depth: int) -> dict:
    # n^s log(n+1) mu_n on a dyadic n grid; bounded under the log-weighted tail condition
    test = carleson.moment_carleson_test(m, s, 2 ** np.arange(4, min(depth, 19) + 1))
    w = test.weighted * np.log(test.n + 1.0)
    return {"sup": float(w.max()), "last_doubling_ratio": float(w[-1] / w[-2]) if w[-2] > 0 else 0.0}


def theorem_verdict(m: MeasureSpec, alpha: float, beta: float, depth: int = 30) -> RegimeVerdict:
    """What the characterisation theorems predict for ``C_mu: B^alpha -> B^beta``."""
    regime = regime_of(alpha, beta)
    if regime == ALWAYS:
        return RegimeVerdict(alpha, beta, regime, "none", UNCONDITIONAL, UNKNOWN)
    if regime == BELOW_ONE:
        s, gamma = 2.0 - beta, 0.0
        cond = f"{s:g}-Carleson"
    elif regime == ABOVE_ONE:
        s, gamma = alpha + 1.0 - beta, 0.0
        cond = f"{s:g}-Carleson"
    else:
        s, gamma = 2.0 - beta, 1.0
        cond = f"1-logarithmic {s:g}-Carleson"
    rep = carleson.classify(m, s, gamma, depth)
    bounded = _tri(rep.bounded)
    if regime == BELOW_ONE:
        compact = bounded
    else:
        compact = _tri(rep.vanishing)
    moment_form = _moment_form(m, s, depth) if regime == AT_ONE else None
    return RegimeVerdict(alpha, beta, regime, cond, bounded, compact, rep, moment_form)


@dataclass(frozen=True)
class Rung:
    j: int
    a: float
    n: int
    in_norm: float
    out_norm: float

    @property
    def ratio(self) -> float:
        return self.out_norm / self.in_norm if self.in_norm > 0 else math.inf


@dataclass(frozen=True)
class CoefficientProbe:
    n: np.ndarray = field(repr=False)
    trace: np.ndarray = field(repr=False)
    exponent: float
    log_exponent: float
    verdict: str


@dataclass(frozen=True)
class ProbeReport:
    kind: str
    alpha: float
    beta: float
    ladder: tuple[Rung, ...]
    fitted_exponent: float
    empirical_verdict: str
    ladder_verdict: str
    ladder_exponent: float
    ladder_log_exponent: float
    coefficient: CoefficientProbe | None = None
    agreement: bool | None = None
    input_band: float = 1.0

    def rows(self) -> list[tuple]:
        return [(r.j, r.a, r.n, r.in_norm, r.out_norm, r.ratio) for r in self.ladder]

    def summary(self) -> dict:
        out = {
            "kind": self.kind,
            "fitted_exponent": self.fitted_exponent,
            "empirical_verdict": self.empirical_verdict,
            "ladder_verdict": self.ladder_verdict,
            "ladder_exponent": self.ladder_exponent,
            "ladder_log_exponent": self.ladder_log_exponent,
            "input_band": self.input_band,
            "agreement": self.agreement,
        }
        if self.coefficient is not None:
            out["coefficient_exponent"] = self.coefficient.exponent
            out["coefficient_log_exponent"] = self.coefficient.log_exponent
            out["coefficient_verdict"] = self.coefficient.verdict
        return out


def _fit(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.polyfit(x, y, 1)[0])


def _trend(levels: np.ndarray, values: np.ndarray, ell: np.ndarray) -> tuple[float, float, bool, bool]:
    """Slope of log2 values per level, exponent against log(ell), monotonicity flags."""
    with np.errstate(divide="ignore"):
        logv = np.log(values)
    if not np.all(np.isfinite(logv)):
        return -math.inf, -math.inf, False, True
    slope = _fit(levels, logv / math.log(2.0))
    log_exp = _fit(np.log(ell), logv)
    steps = np.diff(values)
    scale = float(np.abs(values).max())
    return slope, log_exp, bool(np.all(steps >= -1e-12 * scale)), bool(np.all(steps <= 1e-12 * scale))


def _growth_verdict(slope: float, log_exp: float, increasing: bool) -> str:
    if slope > UNBOUNDED_SLOPE or (increasing and log_exp >= LOG_GROWTH_EXPONENT):
        return UNBOUNDED_LIKE
    if slope < BOUNDED_SLOPE:
        return BOUNDED_LIKE
    return INCONCLUSIVE


def _ladder(m, alpha, beta, depth, family, mu) -> tuple[Rung, ...]:
    rungs = []
    for j in range(2, depth + 1):
        a = 1.0 - 2.0**-j
        n = 64 * 2**j
        if n < min_truncation(a):
            raise ValueError(f"truncation N={n} below 64/(1-a) for a={a}")
        f = family(a, n)
        levels = j + 3  # the 1 - 8/N radius cap for N = 64 * 2^j
        in_norm = bloch_seminorm(f, alpha, depth=levels).value
        out_norm = bloch_seminorm(cesaro_apply(m, f, mu), beta, depth=levels).value
        rungs.append(Rung(j, a, n, in_norm, out_norm))
    return tuple(rungs)


def _upper_half(rungs) -> slice:
    return slice(len(rungs) // 2, None)


def _input_band(rungs) -> float:
    ins = np.array([r.in_norm for r in rungs])
    return float(ins.max() / ins.min())


def _coefficient_probe(m, alpha, beta, n_top, mu) -> CoefficientProbe:
    f = make_power_alpha(alpha, n_top)
    b = cesaro_apply(m, f, mu)
    n, trace = coefficient_trace(b.coeffs, beta)
    top = slice(len(n) // 2, None)
    slope, log_exp, inc, _ = _trend(np.log2(n[top].astype(float)), trace[top], 1.0 + np.log(n[top]))
    return CoefficientProbe(n, trace, slope, log_exp, _growth_verdict(slope, log_exp, inc))


def _bounded_agreement(predicted: str, empirical: str) -> bool | None:
    if empirical == INCONCLUSIVE or predicted == UNKNOWN:
        return None
    return (predicted in (YES, UNCONDITIONAL)) == (empirical == BOUNDED_LIKE)


def _compact_agreement(predicted: str, empirical: str) -> bool | None:
    if empirical == INCONCLUSIVE or predicted == UNKNOWN:
        return None
    return (predicted == YES) == (empirical == COMPACT_LIKE)


def boundedness_probe(
    m: MeasureSpec, alpha: float, beta: float, ladder_depth: int = 10, verdict: RegimeVerdict | None = None
) -> ProbeReport:
    """Lower-bound evidence on the boundedness of ``C_mu: B^alpha -> B^beta``.

    (a) f_a ladder: ``a_j = 1 - 2^-j``, ``N_j = 64 2^j``, ratio of the B^beta
    seminorm of ``C_mu f_a`` to the B^alpha seminorm of ``f_a``; its log2
    slope per level is the ladder exponent.
    (b) for alpha <= 1: the trace ``n^-beta sum k b_k`` of
    ``b = C_mu(sum n^(alpha-2) z^n)``, slope per doubling of n.

    Both only bound the operator norm from below, so any confident growth
    makes the verdict unbounded-like; bounded-like needs every sub-probe flat.
    """
    if ladder_depth < 4:
        raise ValueError("ladder_depth must be >= 4")
    n_top = 64 * 2**ladder_depth
    mu = moment_sequence(m, n_top)
    rungs = _ladder(m, alpha, beta, ladder_depth, lambda a, n: make_fa(alpha, a, n), mu)
    ratios = np.array([r.ratio for r in rungs])
    levels = np.array([r.j for r in rungs], dtype=float)
    top = _upper_half(rungs)
    slope, log_exp, inc, _ = _trend(levels[top], ratios[top], 1.0 + levels[top] * math.log(2.0))
    ladder_verdict = _growth_verdict(slope, log_exp, inc)

    coef = None
    fitted = slope
    verdicts = [ladder_verdict]
    if alpha <= 1.0 + _UNIT_TOL:
        coef = _coefficient_probe(m, alpha, beta, n_top, mu)
        verdicts.append(coef.verdict)
        fitted = coef.exponent
    if UNBOUNDED_LIKE in verdicts:
        empirical = UNBOUNDED_LIKE
        if ladder_verdict == UNBOUNDED_LIKE and (coef is None or coef.verdict != UNBOUNDED_LIKE):
            fitted = slope
    elif all(v == BOUNDED_LIKE for v in verdicts):
        empirical = BOUNDED_LIKE
    else:
        empirical = INCONCLUSIVE

    if verdict is None:
        verdict = theorem_verdict(m, alpha, beta)
    return ProbeReport(
        kind="bounded",
        alpha=alpha,
        beta=beta,
        ladder=rungs,
        fitted_exponent=fitted,
        empirical_verdict=empirical,
        ladder_verdict=ladder_verdict,
        ladder_exponent=slope,
        ladder_log_exponent=log_exp,
        coefficient=coef,
        agreement=_bounded_agreement(verdict.predicted_bounded, empirical),
        input_band=_input_band(rungs),
    )


def compactness_probe(
    m: MeasureSpec, alpha: float, beta: float, ladder_depth: int = 10, verdict: RegimeVerdict | None = None
) -> ProbeReport:
    """Does ``||C_mu F_j||_{B^beta}`` vanish along a normalised family F_j -> 0?

    ``F_j`` is f_a for alpha != 1 and the log-squared family at alpha = 1.
    On the upper half of the ladder: compact-like if the output norms
    decrease and either halve or decay like a negative power of
    ``log(1/(1-a))``; noncompact-like if they grow, or stay within a 20% band
    without falling off their peak.
    For alpha <= 1 the coefficient witness of :func:`boundedness_probe` also
    runs, and an unbounded-like witness makes the verdict noncompact-like.
    """
    if ladder_depth < 4:
        raise ValueError("ladder_depth must be >= 4")
    n_top = 64 * 2**ladder_depth
    mu = moment_sequence(m, n_top)
    if abs(alpha - 1.0) <= _UNIT_TOL:
        family = make_log_squared_a
    else:
        def family(a, n):
            return make_fa(alpha, a, n)
    rungs = _ladder(m, alpha, beta, ladder_depth, family, mu)
    outs = np.array([r.out_norm for r in rungs])
    levels = np.array([r.j for r in rungs], dtype=float)
    top = _upper_half(rungs)
    tail = outs[top]
    slope, log_exp, inc, dec = _trend(levels[top], tail, 1.0 + levels[top] * math.log(2.0))
    coef = None
    if alpha <= 1.0 + _UNIT_TOL:
        # the f_a ladder cannot see a (2 - beta) deficit; unbounded forces noncompact
        coef = _coefficient_probe(m, alpha, beta, n_top, mu)
    if slope > UNBOUNDED_SLOPE or (inc and log_exp >= LOG_GROWTH_EXPONENT):
        ladder_verdict = NONCOMPACT_LIKE
    elif dec and (tail[-1] < HALVING * tail[0] or log_exp <= LOG_DECAY_EXPONENT):
        ladder_verdict = COMPACT_LIKE
    elif tail.max() - tail.min() < PLATEAU_VARIATION * tail.max() and tail[-1] >= (1.0 - PLATEAU_DROP) * tail.max():
        ladder_verdict = NONCOMPACT_LIKE
    else:
        ladder_verdict = INCONCLUSIVE
    empirical = ladder_verdict
    if coef is not None and coef.verdict == UNBOUNDED_LIKE:
        empirical = NONCOMPACT_LIKE
    if verdict is None:
        verdict = theorem_verdict(m, alpha, beta)
    return ProbeReport(
        kind="compact",
        alpha=alpha,
        beta=beta,
        ladder=rungs,
        fitted_exponent=slope,
        empirical_verdict=empirical,
        ladder_verdict=ladder_verdict,
        ladder_exponent=slope,
        ladder_log_exponent=log_exp,
        coefficient=coef,
        agreement=_compact_agreement(verdict.predicted_compact, empirical),
        input_band=_input_band(rungs),
    )


@dataclass(frozen=True)
class FullReport:
    measure: str
    verdict: RegimeVerdict
    bounded: ProbeReport
    compact: ProbeReport
    carleson: carleson.CarlesonReport | None

    @property
    def contradiction(self) -> bool:
        return self.bounded.agreement is False or self.compact.agreement is False

    @property
    def agreement(self) -> bool | None:
        flags = [self.bounded.agreement, self.compact.agreement]
        if False in flags:
            return False
        if None in flags:
            return None
        return True

    def to_dict(self) -> dict:
        out = {
            "measure": self.measure,
            "verdict": self.verdict.summary(),
            "bounded": self.bounded.summary(),
            "compact": self.compact.summary(),
            "agreement": {
                "bounded": {
                    "predicted": self.verdict.predicted_bounded,
                    "empirical": self.bounded.empirical_verdict,
                    "agree": self.bounded.agreement,
                },
                "compact": {
                    "predicted": self.verdict.predicted_compact,
                    "empirical": self.compact.empirical_verdict,
                    "agree": self.compact.agreement,
                },
                "overall": self.agreement,
            },
        }
        if self.carleson is not None:
            out["carleson"] = {
                "s": self.carleson.s,
                "gamma": self.carleson.gamma,
                "verdict": self.carleson.verdict,
                "sup_estimate": self.carleson.sup_estimate,
                "limit_estimate": self.carleson.limit_estimate,
                "moment_sup": self.carleson.moment_sup,
            }
        return out


def full_report(m: MeasureSpec, alpha: float, beta: float, ladder_depth: int = 10) -> FullReport:
    verdict = theorem_verdict(m, alpha, beta)
    bounded = boundedness_probe(m, alpha, beta, ladder_depth, verdict)
    compact = compactness_probe(m, alpha, beta, ladder_depth, verdict)
    return FullReport(m.label(), verdict, bounded, compact, verdict.carleson)

