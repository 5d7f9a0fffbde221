"""Closed forms and the z-space recursion for the rotating harmonic oscillator."""

import cmath
import logging
from typing import Callable, Tuple

import numpy as np

from ..transform.potential import Sign
from ..utils.errors import DomainError
from ..utils.quadrature import adaptive_gauss

logger = logging.getLogger(__name__)


def _check_oscillator_point(z: complex) -> complex:
    z = complex(z)
    if z == 0 or z == 1:
        raise DomainError(f"The oscillator coefficients are singular at z={z}")
    if abs(z.imag) <= 1e-14 * max(1.0, abs(z)) and z.real <= 1.0:
        raise DomainError(f"z={z} lies on the cut (-inf, 1]",
                          suggestions=["Move z off the real axis or to z > 1"])
    return z


def _leading_constant(mu: complex, sign: Sign) -> complex:
    pm = sign.pm
    return pm * (0.375 + pm * mu + 0.5 * mu ** 2)


def _ell_term(z: complex) -> complex:
    """Antiderivative of 1/(t^2 (t - 1)) vanishing at infinity."""
    return complex(np.log1p(-1.0 / z)) + 1.0 / z


def oscillator_A1(lam, ell: int, z: complex, sign=Sign.PLUS) -> complex:
    """A_1 = +-(3/8 +- mu + mu^2/2)/(z - 1)^2 +- l(l+1)(log(1 - 1/z) + 1/z), mu = lambda + 1/2."""
    sign = Sign.parse(sign)
    z = _check_oscillator_point(z)
    mu = complex(lam) + 0.5
    value = _leading_constant(mu, sign) / (z - 1.0) ** 2
    if ell:
        value += sign.pm * ell * (ell + 1) * _ell_term(z)
    return value


def oscillator_A1_derivative(lam, ell: int, z: complex, sign=Sign.PLUS) -> complex:
    """dA_1/dz."""
    sign = Sign.parse(sign)
    z = _check_oscillator_point(z)
    mu = complex(lam) + 0.5
    value = -2.0 * _leading_constant(mu, sign) / (z - 1.0) ** 3
    if ell:
        value += sign.pm * ell * (ell + 1) / (z ** 2 * (z - 1.0))
    return value


def integral_from_end(g: Callable[[np.ndarray], np.ndarray], z: complex, sign: Sign) -> complex:
    """
    Integral of g from the end of the branch's path to z: from +inf for
    the minus branch, from +i inf for the plus branch.
    """
    heading = 1j if Sign.parse(sign) is Sign.PLUS else 1.0 + 0j

    def integrand(v):
        t = z + heading * v / (1.0 - v)
        return g(t) * heading / (1.0 - v) ** 2

    value, _ = adaptive_gauss(integrand, 0.0, 1.0 - 1e-15, abs_tol=1e-15, rel_tol=1e-12)
    return -value


def oscillator_A2_zrec(lam, ell: int, z: complex, sign=Sign.PLUS) -> complex:
    """
    A_2 from the z-space recursion, with the two path integrals evaluated by
    quadrature along a straight path to the end of the branch.
    """
    sign = Sign.parse(sign)
    z = _check_oscillator_point(z)
    pm = sign.pm
    mu = complex(lam) + 0.5
    kappa = 0.75 - pm * 2.0 * mu + mu ** 2
    a1_constant = _leading_constant(mu, sign)
    ll = ell * (ell + 1)

    def a1(t):
        out = a1_constant / (t - 1.0) ** 2
        if ll:
            out = out + pm * ll * (np.log1p(-1.0 / t) + 1.0 / t)
        return out

    cubic = integral_from_end(lambda t: a1(t) / (t - 1.0) ** 3, z, sign)
    value = (2.0 * mu / (z - 1.0) ** 2 * oscillator_A1(lam, ell, z, sign)
             - pm * oscillator_A1_derivative(lam, ell, z, sign) / (z - 1.0)
             - pm * kappa * cubic)
    if ll:
        value += pm * ll * integral_from_end(lambda t: a1(t) / (t ** 2 * (t - 1.0)), z, sign)
    return value


def oscillator_xi(z: complex) -> complex:
    return (complex(z) - 1.0) ** 2 / 4.0


def oscillator_z_of_xi(xi: complex) -> complex:
    """Pre-image z = 1 + 2 xi^(1/2) with the principal root."""
    return 1.0 + 2.0 * cmath.sqrt(complex(xi))


def oscillator_prefactor(lam, z: complex, sign=Sign.PLUS) -> Tuple[complex, complex]:
    """((z - 1)/2)^(-+mu - 1/2) and the exponent u-coefficient +-(z - 1)^2/4."""
    sign = Sign.parse(sign)
    mu = complex(lam) + 0.5
    base = (complex(z) - 1.0) / 2.0
    return base ** (-sign.pm * mu - 0.5), sign.pm * oscillator_xi(z)
