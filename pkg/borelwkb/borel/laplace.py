"""Borel-Pade-Laplace summation of the WKB corrections."""

import cmath
import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.signal import residue

from ..coeffs.table import CoeffTable
from ..transform.potential import Sign
from ..utils.errors import DegeneratePade, PoleOnContour, ValidationError
from ..utils.quadrature import adaptive_gauss
from .pade import PadeApproximant, default_degrees, pade
from .series import BorelSeries, borel_series

logger = logging.getLogger(__name__)

POLE_CLEARANCE = 1e-3
TAIL_EXPONENT = 38.0
BOUND_SAMPLES = 64


@dataclass(frozen=True)
class BorelSummation:
    """
    Configuration and result of one Borel-Pade-Laplace evaluation.

    ``value`` and ``err_estimate`` stay None until the Laplace integral has
    been evaluated for ``u``.
    """

    series: BorelSeries
    pade_L: int
    pade_M: int
    approximant: PadeApproximant
    d: float = 1.0
    u: Optional[complex] = None
    T: Optional[float] = None
    value: Optional[complex] = None
    err_estimate: Optional[float] = None

    @classmethod
    def prepare(cls, series: BorelSeries, L: Optional[int] = None, M: Optional[int] = None,
                d: float = 1.0) -> 'BorelSummation':
        if L is None or M is None:
            L, M = default_degrees(len(series))
        approximant = pade(series, L, M)
        return cls(series=series, pade_L=L, pade_M=M, approximant=approximant, d=d)

    def to_dict(self):
        return {
            'sign': self.series.sign.value,
            'point': self.series.point,
            'N': len(self.series),
            'L': self.pade_L,
            'M': self.pade_M,
            'd': self.d,
            'u': self.u,
            'T': self.T,
            'value': self.value,
            'err_estimate': self.err_estimate,
        }


def check_poles(approximant: PadeApproximant, T: float, clearance: float = POLE_CLEARANCE) -> None:
    """PoleOnContour when a pole lies within ``clearance`` of [0, T]."""
    for pole in approximant.poles():
        if 0.0 <= pole.real <= T:
            distance = abs(pole.imag)
        elif pole.real < 0.0:
            distance = abs(pole)
        else:
            distance = abs(pole - T)
        if distance < clearance:
            raise PoleOnContour(
                f"[{approximant.L}/{approximant.M}] Pade pole at t={pole:.6g} is on the Laplace contour",
                details=f"Distance {distance:.3e} to [0, {T:.3e}]",
                suggestions=["Lower the Pade denominator degree M",
                             "Move the evaluation point away from the Stokes curve"]
            )


def truncation_point(approximant: PadeApproximant, u: complex, d: float,
                     bound_scale: Optional[float] = None) -> float:
    """T = max(4d, (38 + log(1 + bound_scale))/Re u)."""
    re_u = complex(u).real
    if bound_scale is None:
        grid = np.linspace(0.0, max(4.0 * d, TAIL_EXPONENT / re_u), BOUND_SAMPLES)
        with np.errstate(divide='ignore', invalid='ignore'):
            samples = np.abs(approximant(grid))
        samples = samples[np.isfinite(samples)]
        bound_scale = float(np.max(samples)) if len(samples) else 1.0
    return max(4.0 * d, (TAIL_EXPONENT + math.log1p(bound_scale)) / re_u)


def laplace_integral(fn: Callable[[np.ndarray], np.ndarray], u: complex, T: float) -> Tuple[complex, float]:
    """integral_0^T e^(-u t) fn(t) dt on adaptive Gauss-Legendre panels."""
    u = complex(u)

    def integrand(t):
        return np.exp(-u * t) * fn(t)

    return adaptive_gauss(integrand, 0.0, T, abs_tol=1e-14, rel_tol=1e-14, n_low=20, n_high=40)


def laplace_eval(summation: BorelSummation, u: complex, bound_scale: Optional[float] = None) -> complex:
    """Laplace transform of the Pade continuation of the Borel transform."""
    return evaluate(summation, u, bound_scale=bound_scale).value


def evaluate(summation: BorelSummation, u: complex, bound_scale: Optional[float] = None,
             compare_lower: bool = True) -> BorelSummation:
    """
    Evaluate the Laplace integral and fill in value, T and err_estimate.

    The error estimate adds the quadrature error to the difference with the
    [L-1/M-1] approximant when that one exists.
    """
    u = complex(u)
    if not u.real > 0:
        raise ValidationError(f"Laplace summation needs Re u > 0, got u={u}")
    approximant = summation.approximant
    T = truncation_point(approximant, u, summation.d, bound_scale)
    check_poles(approximant, T)
    value, quad_err = laplace_integral(approximant, u, T)
    err = quad_err + 1e-14 * (1.0 + abs(value))

    L, M = summation.pade_L, summation.pade_M
    if compare_lower and L >= 1 and M >= 1:
        try:
            lower = pade(summation.series, L - 1, M - 1)
            check_poles(lower, T)
            lower_value, _ = laplace_integral(lower, u, T)
            err += abs(value - lower_value)
        except (DegeneratePade, PoleOnContour) as exc:
            logger.debug(f"Lower-order Pade comparison skipped: {exc}")
    logger.debug(f"Laplace value {value:.15g} at u={u} with T={T:.3e}, error estimate {err:.2e}")
    return replace(summation, u=u, T=T, value=value, err_estimate=err)


def borel_sum(table: CoeffTable, point: complex, u: complex, N: int,
              L: Optional[int] = None, M: Optional[int] = None, d: float = 1.0) -> BorelSummation:
    """Borel series at a point, its Pade approximant and the Laplace integral, in one call."""
    series = borel_series(table, point, N, d=d)
    return evaluate(BorelSummation.prepare(series, L, M, d=d), u)


def _simple_fractions(approximant: PadeApproximant):
    num = np.trim_zeros(np.asarray(approximant.numerator, dtype=complex), 'b')
    den = np.trim_zeros(np.asarray(approximant.denominator, dtype=complex), 'b')
    if len(num) == 0:
        return np.zeros(0, dtype=complex), np.zeros(0, dtype=complex), np.zeros(0, dtype=complex)
    if len(den) <= 1:
        return np.zeros(0, dtype=complex), np.zeros(0, dtype=complex), num[::-1] / den[0]
    poles = approximant.poles()
    if len(poles) > 1:
        gaps = np.abs(poles[:, None] - poles[None, :]) + np.eye(len(poles))
        if np.min(gaps) < 1e-8:
            raise DegeneratePade("Pade approximant has a repeated pole",
                                 suggestions=["Change the Pade degrees"])
    r, p, k = residue(num[::-1], den[::-1])
    return r, p, k


def remainder_formula(series: BorelSeries, summation: BorelSummation, u: complex, N: int,
                      T: Optional[float] = None) -> complex:
    """
    R_N = ( d^(N-1)F/dt^(N-1)(0) + integral_0^T e^(-ut) d^N F/dt^N dt ) / u^N,
    the remainder after N - 1 terms, with d^N F from the Pade continuation.
    """
    u = complex(u)
    if N < 1 or N > len(series):
        raise ValidationError(f"N must lie in 1..{len(series)}, got {N}")
    T = T if T is not None else truncation_point(summation.approximant, u, summation.d)
    r, p, k = _simple_fractions(summation.approximant)
    direct = np.polyder(k, N) if len(k) > N else np.zeros(1, dtype=complex)
    factor = (-1) ** N * math.factorial(N)

    def derivative(t):
        t = np.asarray(t, dtype=complex)
        out = np.polyval(direct, t)
        for residue_j, pole_j in zip(r, p):
            out = out + residue_j * factor / (t - pole_j) ** (N + 1)
        return out

    integral, _ = laplace_integral(derivative, u, T)
    start = series.coeffs[N - 1] * math.factorial(N - 1)
    return (start + integral) / u ** N


def K_surrogate(C: float, V_sup: float) -> float:
    """K = C sup e^V, the constant of the exponential bound on the Borel transform."""
    return float(C) * math.exp(float(V_sup))


def ode_residual(eta: Callable[[float], complex], phi: Callable[[float], complex],
                 psi: Callable[[float], complex], sign: Sign, u: complex, s: float,
                 h: float = 0.05) -> float:
    """
    Relative residual |W'' - (u^2 + u phi + psi) W| / (|u|^2 |W|) of
    W = exp(+-u xi +- (1/2) int phi)(1 + eta) at ray parameter s.

    The exponential is factored out, W = e^(+-u xi) G, and G'' , G' come from
    Richardson-extrapolated central differences along the ray.
    """
    sign = Sign.parse(sign)
    pm, direction = sign.pm, sign.direction
    u = complex(u)
    if s < h:
        raise ValidationError(f"Residual needs s >= h, got s={s}, h={h}")

    def exponent(target):
        if target == s:
            return 0j
        lo, hi = (s, target) if target > s else (target, s)
        value, _ = adaptive_gauss(lambda x: np.array([phi(float(v)) for v in x]), lo, hi)
        return direction * (value if target > s else -value)

    def G(target):
        return cmath.exp(pm * 0.5 * exponent(target)) * (1.0 + eta(target))

    g0 = G(s)
    estimates = []
    for step in (h, h / 2):
        gp, gm = G(s + step), G(s - step)
        first = direction * (gp - gm) / (2 * step)
        second = (gp - 2 * g0 + gm) / step ** 2
        estimates.append((first, second))
    first = (4 * estimates[1][0] - estimates[0][0]) / 3
    second = (4 * estimates[1][1] - estimates[0][1]) / 3
    residual = second + 2 * pm * u * first - (u * phi(s) + psi(s)) * g0
    return abs(residual) / (abs(u) ** 2 * abs(g0))
