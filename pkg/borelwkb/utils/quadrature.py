"""Adaptive Gauss-Legendre quadrature for complex-valued integrands."""

import logging
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np

logger = logging.getLogger(__name__)

MAX_DEPTH = 40


@lru_cache(maxsize=16)
def gauss_legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    return np.polynomial.legendre.leggauss(n)


def _panel(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int) -> complex:
    nodes, weights = gauss_legendre(n)
    half = 0.5 * (b - a)
    values = np.asarray(f(0.5 * (a + b) + half * nodes), dtype=complex)
    return complex(half * np.dot(weights, values))


def adaptive_gauss(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                   abs_tol: float = 1e-14, rel_tol: float = 1e-12,
                   n_low: int = 16, n_high: int = 32) -> Tuple[complex, float]:
    """
    Integrate a vectorised complex integrand over the real interval [a, b].

    Each panel is evaluated with an n_low and an n_high point rule; panels
    whose two estimates disagree are bisected.

    Returns:
        Tuple[complex, float]: integral and accumulated error estimate
    """
    total = 0j
    error = 0.0
    stack = [(float(a), float(b), 0)]
    coarse = _panel(f, a, b, n_high)
    scale = max(abs(coarse), 1e-300)

    while stack:
        lo, hi, depth = stack.pop()
        low = _panel(f, lo, hi, n_low)
        high = _panel(f, lo, hi, n_high)
        diff = abs(high - low)
        width_share = (hi - lo) / (b - a) if b != a else 1.0
        if diff <= max(abs_tol, rel_tol * scale) * width_share or depth >= MAX_DEPTH:
            if depth >= MAX_DEPTH and diff > abs_tol:
                logger.debug(f"Quadrature depth limit on [{lo:.3e}, {hi:.3e}], panel error {diff:.3e}")
            total += high
            error += diff
            continue
        mid = 0.5 * (lo + hi)
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))
    return total, error
