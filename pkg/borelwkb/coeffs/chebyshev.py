"""Functions on a mapped xi-ray represented by Chebyshev interpolants."""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.fft import dct

from ..transform.rays import RayPath
from ..utils.errors import TruncationError, ValidationError

logger = logging.getLogger(__name__)

CHOP_TOLERANCE = 1e-14
FAR_END_TOLERANCE = 1e-6


def chebyshev_coefficients(values: np.ndarray, chop: float = 0.0) -> np.ndarray:
    """
    Chebyshev coefficients of the interpolant through values at the nodes
    x_j = -cos(pi (j + 1/2) / n), listed in increasing x. Coefficients below
    ``chop`` times the largest are zeroed.
    """
    values = np.asarray(values, dtype=complex)
    n = len(values)
    # The standard root grid runs in decreasing x.
    standard = values[::-1]
    coeffs = (dct(standard.real, type=2) + 1j * dct(standard.imag, type=2)) / n
    coeffs[0] /= 2.0
    scale = np.max(np.abs(coeffs)) if n else 0.0
    if chop > 0 and scale > 0:
        coeffs[np.abs(coeffs) < chop * scale] = 0.0
    return coeffs


@dataclass(frozen=True)
class RayFunction:
    """Samples of a function at the Chebyshev nodes of a mapped ray, plus its interpolant."""

    path: RayPath
    values: np.ndarray
    cheb: np.ndarray

    @classmethod
    def from_values(cls, path: RayPath, values) -> 'RayFunction':
        if path.xs is None or path.ray_map is None:
            raise ValidationError("Ray functions need a ray traced at Chebyshev nodes")
        values = np.asarray(values, dtype=complex)
        if values.shape != path.xs.shape:
            values = np.broadcast_to(values, path.xs.shape).astype(complex)
        return cls(path=path, values=values, cheb=chebyshev_coefficients(values))

    @classmethod
    def constant(cls, path: RayPath, value: complex) -> 'RayFunction':
        return cls.from_values(path, np.full(len(path.xs), complex(value)))

    @classmethod
    def zeros(cls, path: RayPath) -> 'RayFunction':
        return cls.constant(path, 0j)

    # Evaluation

    def at_x(self, x) -> Union[complex, np.ndarray]:
        return C.chebval(x, self.cheb)

    def at_s(self, s) -> Union[complex, np.ndarray]:
        """Value at ray parameter s >= 0 (xi = anchor + direction * s)."""
        return self.at_x(self.path.ray_map.x_of_s(s))

    @property
    def anchor_value(self) -> complex:
        return complex(self.at_x(-1.0))

    @property
    def far_end_value(self) -> complex:
        return complex(self.at_x(1.0))

    @property
    def sup(self) -> float:
        return float(np.max(np.abs(self.values))) if len(self.values) else 0.0

    def tail_coefficient(self, count: int = 8) -> float:
        """Relative size of the last Chebyshev coefficients."""
        scale = np.max(np.abs(self.cheb))
        if scale == 0:
            return 0.0
        return float(np.max(np.abs(self.cheb[-count:])) / scale)

    def check_far_end(self, label: str = "ray function") -> None:
        """Raise TruncationError unless the function vanishes at the far end of the ray."""
        sup = self.sup
        far = abs(self.far_end_value)
        if sup > 0 and far > FAR_END_TOLERANCE * sup:
            raise TruncationError(
                f"{label} does not decay at the far end of the ray",
                details=f"|far end| = {far:.3e}, sup = {sup:.3e}",
                suggestions=["Use more Chebyshev nodes", "Check the decay conditions of phi and psi"]
            )

    # Calculus along the ray

    def derivative_xi(self) -> 'RayFunction':
        """d/dxi = direction * (dx/ds) d/dx."""
        path = self.path
        dcheb = C.chebder(chebyshev_coefficients(self.values, chop=CHOP_TOLERANCE))
        dvalues = C.chebval(path.xs, dcheb) * path.ray_map.dx_ds(path.xs)
        return RayFunction.from_values(path, path.sign.direction * dvalues)

    def tail_integral(self) -> 'RayFunction':
        """Tail(s) = integral of the function from s to infinity in the ray parameter."""
        path = self.path
        integrand = self.values / path.ray_map.dx_ds(path.xs)
        icheb = C.chebint(chebyshev_coefficients(integrand))
        total = C.chebval(1.0, icheb)
        return RayFunction.from_values(path, total - C.chebval(path.xs, icheb))

    def integral_from_end(self) -> 'RayFunction':
        """Integral along the ray from its far end (the -inf end for plus, +inf for minus) to xi."""
        return -self.path.sign.direction * self.tail_integral()

    # Arithmetic

    def _values_of(self, other):
        if isinstance(other, RayFunction):
            if other.path is not self.path:
                raise ValidationError("Ray functions live on different rays")
            return other.values
        return other

    def __add__(self, other) -> 'RayFunction':
        return RayFunction.from_values(self.path, self.values + self._values_of(other))

    __radd__ = __add__

    def __sub__(self, other) -> 'RayFunction':
        return RayFunction.from_values(self.path, self.values - self._values_of(other))

    def __rsub__(self, other) -> 'RayFunction':
        return RayFunction.from_values(self.path, self._values_of(other) - self.values)

    def __mul__(self, other) -> 'RayFunction':
        return RayFunction.from_values(self.path, self.values * self._values_of(other))

    __rmul__ = __mul__

    def __neg__(self) -> 'RayFunction':
        return RayFunction.from_values(self.path, -self.values)

    def to_dict(self):
        return {'kind': 'ray', 'xs': list(self.path.xs), 'values': list(self.values)}
