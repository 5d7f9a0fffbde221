"""Truncated Borel transforms of the WKB coefficient series."""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln

from ..coeffs.table import CoeffTable
from ..transform.potential import Sign
from ..utils.errors import ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BorelSeries:
    """Taylor coefficients c_n = A_{n+1}(point)/n!, n = 0..N-1, of the Borel transform at one point."""

    coeffs: np.ndarray
    point: complex
    sign: Sign
    radius_estimate: float
    d: Optional[float] = None

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def taylor(self, t, order: Optional[int] = None):
        """Partial sum of the series at t."""
        coeffs = self.coeffs if order is None else self.coeffs[:order]
        return np.polynomial.polynomial.polyval(t, coeffs)

    def asymptotic_sum(self, u: complex, n_terms: int) -> complex:
        """sum_{n=1}^{n_terms} A_n / u^n, recovered from the Borel coefficients."""
        if n_terms > len(self.coeffs):
            raise ValidationError(f"Series holds {len(self.coeffs)} terms, {n_terms} requested")
        u = complex(u)
        total = 0j
        for n in range(n_terms):
            # A_{n+1} = n! c_n
            total += self.coeffs[n] * math.exp(gammaln(n + 1)) / u ** (n + 1)
        return total

    def to_dict(self):
        return {
            'sign': self.sign.value,
            'point': self.point,
            'coeffs': list(self.coeffs),
            'radius_estimate': self.radius_estimate,
        }


def _ratio_radius(coeffs: np.ndarray) -> float:
    n = len(coeffs)
    if n < 2 or coeffs[n - 1] == 0:
        return math.inf
    return float(abs(coeffs[n - 2] / coeffs[n - 1]))


def borel_series(table: CoeffTable, point: complex, N: int, d: Optional[float] = None) -> BorelSeries:
    """
    Borel coefficients at a point: the value of p for polynomial tables,
    the ray parameter s for ray tables.
    """
    if N < 1:
        raise ValidationError(f"N must be at least 1, got {N}")
    table.require(N)
    values = table.values_at(point, N)[1:]
    log_fact = gammaln(np.arange(N) + 1.0)
    coeffs = values * np.exp(-log_fact)
    radius = _ratio_radius(coeffs)
    if d is not None and radius > 2 * d:
        logger.debug(f"Ratio radius {radius:.3e} exceeds the analyticity radius 2d = {2 * d:.3e}")
    return BorelSeries(coeffs=coeffs, point=complex(point), sign=table.sign, radius_estimate=radius, d=d)


def borel_radius(series: BorelSeries) -> float:
    """Root-test estimate |c_n|^(-1/n) taken over the last half of the series."""
    tail = [(n, abs(c)) for n, c in enumerate(series.coeffs) if n >= max(1, len(series) // 2) and c != 0]
    if not tail:
        return math.inf
    return float(min(value ** (-1.0 / n) for n, value in tail))
