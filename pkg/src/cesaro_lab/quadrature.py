"""Quadrature helpers shared by the moment and kernel integral code.

Two routes are provided: an adaptive one (``scipy.integrate.quad`` over a
list of break points, failing loudly) and a fixed composite Gauss-Legendre
rule whose nodes can be shared across a family of integrands.
"""

from __future__ import annotations

import math
import warnings
from collections.abc import Callable, Sequence

import numpy as np
from scipy import integrate


class QuadratureError(ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, value: float, error: float):
        super().__init__(f"{message} (estimate={value!r}, error bound={error!r})")
        self.value = value
        self.error = error


def adaptive(
    fn: Callable[[float], float],
    breaks: Sequence[float],
    rtol: float = 1e-10,
    atol: float = 1e-300,
    limit: int = 400,
) -> tuple[float, float]:
    """Integrate ``fn`` over consecutive pieces of ``breaks``.

    The last break may be ``math.inf``. Returns ``(value, error)`` and raises
    :class:`QuadratureError` if the summed error bound exceeds
    ``rtol * |value| + atol``.
    """
    total = 0.0
    err = 0.0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        if hi <= lo:
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, e = integrate.quad(fn, lo, hi, epsabs=atol, epsrel=rtol * 1e-2, limit=limit)
        total += val
        err += e
    if not math.isfinite(total) or err > rtol * abs(total) + atol:
        raise QuadratureError("adaptive quadrature did not converge", total, err)
    return total, err


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


def composite_gauss_legendre(edges: np.ndarray, order: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of a Gauss-Legendre rule on each panel ``[edges[i], edges[i+1]]``."""
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights
