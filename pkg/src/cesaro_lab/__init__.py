"""Cesaro-like operators between Bloch-type spaces: moments, Carleson tests, probes."""

from .asymptotics import kernel_integral, regime_scan
from .bloch import bloch_seminorm, growth_bound_check, coefficient_criterion, partial_sum_growth
from .carleson import carleson_quotient, classify, moment_carleson_test
from .measure import (
    Atomic,
    Lebesgue,
    MeasureError,
    MeasureSpec,
    PowerLogTail,
    canonical_suite,
    load_measure,
    moment,
    moment_sequence,
    parse_measure,
    tail_mass,
)
from .probes import boundedness_probe, compactness_probe, full_report, regime_of, theorem_verdict
from .series import PowerSeries, SeriesError, cesaro_apply, cesaro_matrix_apply, derivative, evaluate, partial_sums

__all__ = [
    "Atomic",
    "Lebesgue",
    "MeasureError",
    "MeasureSpec",
    "PowerLogTail",
    "PowerSeries",
    "SeriesError",
    "bloch_seminorm",
    "boundedness_probe",
    "canonical_suite",
    "carleson_quotient",
    "cesaro_apply",
    "cesaro_matrix_apply",
    "classify",
    "compactness_probe",
    "derivative",
    "evaluate",
    "full_report",
    "growth_bound_check",
    "coefficient_criterion",
    "kernel_integral",
    "load_measure",
    "moment",
    "moment_carleson_test",
    "moment_sequence",
    "parse_measure",
    "partial_sum_growth",
    "partial_sums",
    "regime_of",
    "regime_scan",
    "tail_mass",
    "theorem_verdict",
]
