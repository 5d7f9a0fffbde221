"""
Truncated Taylor series ("jets") of phi, psi and f0^{1/2} at the nodes of a ray.

At node k the series variable is w with z = z_k + radius_k w. Coefficients
are read off an FFT of samples on the circle |w| = 1, so d/dxi and the
integral along the ray act exactly on the series; only the integration
constants at the nodes come from Chebyshev quadrature.

Every array holds one series per node: shape (nodes, prec), coefficient j
in column j.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..transform.liouville import phi_psi_values
from ..transform.potential import EquationSpec, Sign
from ..transform.rays import RayPath
from ..utils.errors import SingularityHit, ValidationError
from .chebyshev import RayFunction

logger = logging.getLogger(__name__)

RADIUS_FRACTION = 0.8
MIN_CIRCLE_POINTS = 192


def series_mul(a: np.ndarray, b: np.ndarray, prec: Optional[int] = None) -> np.ndarray:
    """Product of two batches of series truncated to ``prec`` terms."""
    prec = min(a.shape[-1], b.shape[-1]) if prec is None else prec
    if prec > min(a.shape[-1], b.shape[-1]):
        raise ValidationError(f"Cannot multiply series of lengths {a.shape[-1]} and {b.shape[-1]} "
                              f"to {prec} terms")
    out = np.zeros(np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (prec,), dtype=complex)
    for j in range(prec):
        out[..., j] = np.sum(a[..., :j + 1] * b[..., j::-1], axis=-1)
    return out


def series_reciprocal(a: np.ndarray, prec: Optional[int] = None) -> np.ndarray:
    """1/a; the constant terms must not vanish."""
    prec = a.shape[-1] if prec is None else prec
    if np.any(a[..., 0] == 0):
        raise SingularityHit("Series without a constant term has no reciprocal")
    out = np.zeros(a.shape[:-1] + (prec,), dtype=complex)
    out[..., 0] = 1.0 / a[..., 0]
    for j in range(1, prec):
        out[..., j] = -np.sum(a[..., 1:j + 1] * out[..., j - 1::-1], axis=-1) * out[..., 0]
    return out


def series_sqrt(a: np.ndarray, root: np.ndarray, prec: Optional[int] = None) -> np.ndarray:
    """The square root of a whose constant term is ``root`` (a branch of sqrt(a_0))."""
    prec = a.shape[-1] if prec is None else prec
    root = np.asarray(root, dtype=complex)
    if np.any(root == 0):
        raise SingularityHit("Series square root at a zero of the argument")
    out = np.zeros(a.shape[:-1] + (prec,), dtype=complex)
    out[..., 0] = root
    for j in range(1, prec):
        cross = np.sum(out[..., 1:j] * out[..., j - 1:0:-1], axis=-1) if j > 1 else 0.0
        out[..., j] = (a[..., j] - cross) / (2.0 * root)
    return out


def series_derivative(a: np.ndarray) -> np.ndarray:
    """d/dw; one term shorter."""
    return a[..., 1:] * np.arange(1, a.shape[-1])


def series_antiderivative(a: np.ndarray, constant) -> np.ndarray:
    """Integral in w with the given constant term; one term longer."""
    out = np.zeros(a.shape[:-1] + (a.shape[-1] + 1,), dtype=complex)
    out[..., 0] = constant
    out[..., 1:] = a / np.arange(1, a.shape[-1] + 1)
    return out


def circle_coefficients(samples: np.ndarray, prec: int) -> np.ndarray:
    """Taylor coefficients from values at the M-th roots of unity (last axis)."""
    return np.fft.fft(samples, axis=-1)[..., :prec] / samples.shape[-1]


def jet_radius(eq: EquationSpec, path: RayPath, fraction: float = RADIUS_FRACTION) -> np.ndarray:
    """
    Radius of the z-disc expanded around each node: a fraction of the
    distance to the nearest declared singular point, or of d/|f0^{1/2}|
    for potentials without declared points.
    """
    if not 0 < fraction < 1:
        raise ValidationError(f"Radius fraction must lie in (0, 1), got {fraction}")
    pot = eq.potential
    radii = []
    for pt in path.samples:
        if pot.z_singularities:
            distance = min(abs(pt.z - complex(s)) for s in pot.z_singularities)
        else:
            distance = eq.d / abs(pt.sqrt_f0)
        radii.append(fraction * distance)
    return np.array(radii)


@dataclass(frozen=True)
class RayJets:
    """phi, psi, f0^{1/2} and f0^{-1/2} as Taylor series around every node of a ray."""

    path: RayPath
    radius: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    sqrt_f0: np.ndarray
    inv_sqrt_f0: np.ndarray
    fraction: float = RADIUS_FRACTION

    @classmethod
    def sample(cls, eq: EquationSpec, path: RayPath, prec: int,
               fraction: float = RADIUS_FRACTION) -> 'RayJets':
        if prec < 2:
            raise ValidationError(f"Jets need at least two terms, got {prec}")
        pot = eq.potential
        radius = jet_radius(eq, path, fraction)
        M = max(MIN_CIRCLE_POINTS, 2 * prec)
        roots = np.exp(2j * math.pi * np.arange(M) / M)
        points = np.array([pt.z for pt in path.samples])[:, None] + radius[:, None] * roots[None, :]

        shape = points.shape
        phi = np.empty(shape, dtype=complex)
        psi = np.empty(shape, dtype=complex)
        f0 = np.empty(shape, dtype=complex)
        for index in np.ndindex(shape):
            phi[index], psi[index], f0[index] = phi_psi_values(pot, points[index])

        roots_f0 = np.array([pt.sqrt_f0 for pt in path.samples])
        sqrt_f0 = series_sqrt(circle_coefficients(f0, prec), roots_f0)
        logger.debug(f"Jets of {prec} terms on {len(path)} nodes from {M} circle points")
        return cls(path=path, radius=radius,
                   phi=circle_coefficients(phi, prec), psi=circle_coefficients(psi, prec),
                   sqrt_f0=sqrt_f0, inv_sqrt_f0=series_reciprocal(sqrt_f0), fraction=fraction)

    @property
    def prec(self) -> int:
        return self.phi.shape[1]

    def constant(self, value: complex, prec: int) -> np.ndarray:
        out = np.zeros((len(self.radius), prec), dtype=complex)
        out[:, 0] = value
        return out

    def d_xi(self, a: np.ndarray) -> np.ndarray:
        """d/dxi = f0^{-1/2} radius^{-1} d/dw."""
        return series_mul(self.inv_sqrt_f0, series_derivative(a), a.shape[1] - 1) / self.radius[:, None]

    def integral_from_end(self, a: np.ndarray) -> np.ndarray:
        """
        Series of the integral of a from the far end of the ray; the constant
        terms are the Chebyshev integrals of the node values.
        """
        start = RayFunction.from_values(self.path, a[:, 0]).integral_from_end().values
        body = series_mul(self.sqrt_f0, a, a.shape[1] - 1) * self.radius[:, None]
        return series_antiderivative(body, start)

    def q(self, sign) -> np.ndarray:
        """Q = phi^2/4 -+ phi'/2 - psi, one term shorter than the jets."""
        pm = Sign.parse(sign).pm
        prec = self.prec - 1
        return (0.25 * series_mul(self.phi, self.phi, prec) - pm * 0.5 * self.d_xi(self.phi)
                - self.psi[:, :prec])

    def slope(self, a: np.ndarray) -> np.ndarray:
        """d/dxi of a at the nodes."""
        return a[:, 1] * self.inv_sqrt_f0[:, 0] / self.radius
