"""Exact polynomial recursion for the Bessel coefficients in p = -i (z^2 - 1)^(-1/2)."""

import cmath
import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Union

from ..transform.potential import Sign
from ..utils.errors import DomainError, ValidationError
from .poly import PolyC, PolyVar

logger = logging.getLogger(__name__)

Kappa = Union[Fraction, complex]

MAX_DENOMINATOR = 1024


def exact_kappa(value) -> Kappa:
    """
    Return kappa as a Fraction when it is rational with a small denominator
    (ints, Fractions, dyadic or simple floats), otherwise as a complex.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError("kappa must be a number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            return complex(value.replace(' ', ''))
    as_complex = complex(value)
    if as_complex.imag != 0:
        return as_complex
    candidate = Fraction(as_complex.real).limit_denominator(MAX_DENOMINATOR)
    if float(candidate) == as_complex.real:
        return candidate
    return as_complex


def bessel_operator(poly: PolyC, kappa: Kappa) -> PolyC:
    """
    One step of the recursion
    P -> -kappa p^2 P + 1/2 p^2 (1 - p^2) P' + 1/8 int_0^p (1 - 4 kappa^2 + 8 kappa t - 5 t^2) P dt.
    """
    p2 = PolyC.monomial(2, var=PolyVar.P)
    weight = PolyC([1 - 4 * kappa * kappa, 8 * kappa, -5], PolyVar.P)
    half = Fraction(1, 2)
    drift = p2 * (1 - p2) * poly.derivative() * half
    source = (weight * poly).integral() * Fraction(1, 8)
    return p2 * poly * (-kappa) + drift + source


@lru_cache(maxsize=64)
def _plus_table(kappa: Kappa, n_max: int) -> tuple:
    polys = [PolyC.constant(Fraction(1), PolyVar.P)]
    for n in range(n_max):
        polys.append(bessel_operator(polys[-1], kappa))
    logger.debug(f"Bessel polynomial table for kappa={kappa} up to n={n_max}")
    return tuple(polys)


def bessel_coeff_p(n: int, kappa, sign=Sign.PLUS) -> PolyC:
    """
    A_n as a polynomial in p for the given branch.

    Exact rational arithmetic is used when kappa is rational. The minus
    branch is the plus branch under p -> -p.
    """
    if n < 0:
        raise ValidationError(f"Coefficient index must be non-negative, got {n}")
    kappa = exact_kappa(kappa)
    poly = _plus_table(kappa, n)[n]
    return poly if Sign.parse(sign) is Sign.PLUS else poly.reflect()


def bessel_coeff_polys(N: int, kappa, sign=Sign.PLUS) -> List[PolyC]:
    """A_0, ..., A_N as polynomials in p."""
    if N < 0:
        raise ValidationError(f"Table length must be non-negative, got {N}")
    kappa = exact_kappa(kappa)
    polys = list(_plus_table(kappa, N))
    if Sign.parse(sign) is Sign.MINUS:
        polys = [poly.reflect() for poly in polys]
    return polys


def bessel_s(z: complex) -> complex:
    """(z^2 - 1)^(1/2) on the principal branch with the cut along (-inf, 1]."""
    z = complex(z)
    return cmath.sqrt(z - 1.0) * cmath.sqrt(z + 1.0)


def bessel_p_of_z(z: complex) -> complex:
    """p = -i (z^2 - 1)^(-1/2)."""
    s = bessel_s(z)
    if s == 0:
        raise DomainError(f"p is undefined at the turning point z={z}")
    return -1j / s


def bessel_arcsec(z: complex) -> complex:
    """arcsec z = (z^2 - 1)^(1/2) + i xi(z) on the branch matching xi."""
    s = bessel_s(z)
    xi = 1j * s - cmath.log((1.0 + 1j * s) / complex(z))
    return s + 1j * xi
