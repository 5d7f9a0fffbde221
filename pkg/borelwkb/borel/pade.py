"""Pade approximants of truncated Borel series."""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from ..utils.errors import DegeneratePade, ValidationError
from .series import BorelSeries

logger = logging.getLogger(__name__)

PIVOT_THRESHOLD = 1e-13


@dataclass(frozen=True)
class PadeApproximant:
    """Rational function numerator(t)/denominator(t), coefficients in increasing degree, denominator(0) = 1."""

    numerator: np.ndarray
    denominator: np.ndarray
    L: int
    M: int

    def __call__(self, t):
        return P.polyval(t, self.numerator) / P.polyval(t, self.denominator)

    def poles(self) -> np.ndarray:
        den = np.trim_zeros(np.asarray(self.denominator, dtype=complex), 'b')
        if len(den) <= 1:
            return np.zeros(0, dtype=complex)
        return P.polyroots(den)

    def derivative(self, order: int = 1):
        """Callable for the order-th t-derivative, by repeated quotient rule on coefficient arrays."""
        num, den = np.asarray(self.numerator, dtype=complex), np.asarray(self.denominator, dtype=complex)
        for _ in range(order):
            num = P.polysub(P.polymul(P.polyder(num), den), P.polymul(num, P.polyder(den)))
            den = P.polymul(den, den)
        return lambda t: P.polyval(t, num) / P.polyval(t, den)

    def to_dict(self):
        return {'L': self.L, 'M': self.M, 'numerator': list(self.numerator),
                'denominator': list(self.denominator)}


def pade(series: BorelSeries, L: int, M: int) -> PadeApproximant:
    """
    [L/M] Pade approximant matching the series through order L + M.

    The variable is rescaled by the ratio radius before the linear solve;
    a numerically rank-deficient system raises DegeneratePade.
    """
    c = np.asarray(series.coeffs, dtype=complex)
    if L < 0 or M < 0:
        raise ValidationError(f"Pade degrees must be non-negative, got L={L}, M={M}")
    if L + M + 1 > len(c):
        raise ValidationError(f"[{L}/{M}] Pade needs {L + M + 1} coefficients, series has {len(c)}")
    if not np.any(c[:L + M + 1]):
        return PadeApproximant(numerator=np.zeros(1, dtype=complex), denominator=np.ones(1, dtype=complex),
                               L=L, M=M)

    radius = series.radius_estimate
    scale = radius if np.isfinite(radius) and radius > 0 else 1.0
    scaled = c[:L + M + 1] * scale ** np.arange(L + M + 1)

    def coeff(k):
        return scaled[k] if 0 <= k else 0j

    q = np.ones(1, dtype=complex)
    if M > 0:
        matrix = np.array([[coeff(k - j) for j in range(1, M + 1)] for k in range(L + 1, L + M + 1)])
        rhs = -np.array([coeff(k) for k in range(L + 1, L + M + 1)])
        singular = np.linalg.svd(matrix, compute_uv=False)
        if singular[0] == 0 or singular[-1] / singular[0] < PIVOT_THRESHOLD:
            raise DegeneratePade(
                f"[{L}/{M}] Pade system is rank deficient",
                details=f"Singular values {singular[-1]:.3e} / {singular[0]:.3e}",
                suggestions=["Reduce the denominator degree M"]
            )
        solution = np.linalg.solve(matrix, rhs)
        q = np.concatenate([[1.0 + 0j], solution])

    p = np.array([sum(q[j] * coeff(k - j) for j in range(min(k, M) + 1)) for k in range(L + 1)])
    powers_p = scale ** -np.arange(L + 1, dtype=float)
    powers_q = scale ** -np.arange(M + 1, dtype=float)
    logger.debug(f"[{L}/{M}] Pade with scale {scale:.3e}")
    return PadeApproximant(numerator=p * powers_p, denominator=q * powers_q, L=L, M=M)


def default_degrees(n_terms: int) -> tuple:
    """Diagonal degrees L = M = floor((N - 1)/2)."""
    k = (n_terms - 1) // 2
    return k, k
