"""
Convergent factorial-series representation of the WKB corrections,

    eta(u, xi) = sum_{n>=0} B_{n+1}(omega, xi) / (u (u + omega) ... (u + n omega)),

together with the explicit bounds on its coefficients and its tail.
"""

import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from scipy.special import gammaln

from ..coeffs.bessel import bessel_operator, exact_kappa
from ..coeffs.chebyshev import RayFunction
from ..coeffs.collocation import recursion_sequence
from ..coeffs.poly import PolyC
from ..coeffs.table import CoeffTable
from ..transform.potential import EquationSpec, Sign
from ..transform.rays import RayPath
from ..utils.errors import ParameterOrder, ValidationError
from .stirling import StirlingTable, stirling

logger = logging.getLogger(__name__)

OMEGA_MARGIN = 1.25
MP_DIGITS = 40


def default_omega(d: float) -> float:
    """omega = 1.25 pi/(4d), just above the threshold pi/(4d)."""
    if d <= 0:
        raise ValidationError(f"d must be positive, got {d}")
    return OMEGA_MARGIN * math.pi / (4.0 * d)


def default_sigma(omega: float, u: complex) -> float:
    return min(omega / 2.0, complex(u).real / 2.0)


def B_from_A(A: Sequence, omega, S: Optional[StirlingTable] = None) -> List:
    """
    B_{n+1} = sum_{k=0}^{n} (-omega)^(n-k) s(n, k) A_{k+1} for n = 0..len(A)-1.

    ``A[k]`` holds A_{k+1}. Entries may be numbers, Fractions, arrays,
    polynomials or ray functions; Fractions stay exact with a rational omega.
    """
    if not len(A):
        return []
    S = S or stirling(len(A) - 1)
    if S.n_max < len(A) - 1:
        raise ValidationError(f"Stirling table up to n={S.n_max} is too short for {len(A)} coefficients")
    # Exact integer weights for int, Fraction and mpmath omega.
    as_float = isinstance(omega, float)
    B = []
    for n in range(len(A)):
        total = A[n]
        for k in range(1, n):
            count = float(S(n, k)) if as_float else S(n, k)
            weight = count * (-omega) ** (n - k)
            if weight:
                total = total + A[k] * weight
        B.append(total)
    return B


def B_recursive(eq: EquationSpec, ray: RayPath, omega: float, N: int) -> List[RayFunction]:
    """
    B_1..B_N on a mapped ray from
    B_{n+1} = ((n - 1) omega - phi/2) B_n -+ B_n'/2 -+ 1/2 int Q B_n, B_1 = A_1.
    """
    shifts = [0.0] + [(n - 1) * omega for n in range(1, N)]
    B, _ = recursion_sequence(eq, ray, N, shifts=shifts)
    for n, fn in enumerate(B, start=1):
        fn.check_far_end(f"B_{n}")
    logger.debug(f"Factorial coefficients B_1..B_{N} with omega={omega:.6g} on a {Sign.parse(eq.sign).value} ray")
    return B


def B_recursive_bessel(kappa, omega, N: int, sign=Sign.PLUS) -> List[PolyC]:
    """B_1..B_N for the Bessel equation as exact polynomials in p."""
    if N < 1:
        raise ValidationError(f"N must be at least 1, got {N}")
    kappa = exact_kappa(kappa)
    if isinstance(omega, float) and Fraction(omega).limit_denominator(1024) == omega:
        omega = Fraction(omega).limit_denominator(1024)
    B = [bessel_operator(PolyC.constant(Fraction(1)), kappa)]
    for n in range(1, N):
        B.append(B[-1] * ((n - 1) * omega) + bessel_operator(B[-1], kappa))
    if Sign.parse(sign) is Sign.MINUS:
        B = [poly.reflect() for poly in B]
    return B


def B_symbolic(polys: Sequence[PolyC], N: int) -> List[Dict[int, PolyC]]:
    """
    B_1..B_N as polynomials in omega whose coefficients are polynomials in p.

    ``polys`` is A_0..A_N; entry n of the result maps the power j of omega
    to the coefficient (-1)^j s(n, n - j) A_{n-j+1}.
    """
    if len(polys) < N + 1:
        raise ValidationError(f"Need A_0..A_{N}, got {len(polys)} polynomials")
    S = stirling(max(N - 1, 0))
    out = []
    for n in range(N):
        terms = {}
        for j in range(n + 1):
            weight = (-1) ** j * S(n, n - j)
            if weight == 0:
                continue
            term = polys[n - j + 1] * weight
            if not term.is_zero:
                terms[j] = term
        out.append(terms)
    return out


def omega_degree(terms: Dict[int, PolyC]) -> int:
    return max(terms) if terms else -1


def log_denominator(u: complex, omega: float, n: int) -> complex:
    """log(u (u + omega) ... (u + n omega)) as a sum of principal logarithms."""
    u = complex(u)
    return complex(np.sum(np.log(u + omega * np.arange(n + 1))))


def factorial_denominator_bound(u: complex, omega: float, n: int) -> float:
    """Gamma(a) / (omega^(n+1) Gamma(a + n + 1)) with a = Re u / omega, a bound on 1/|u ... (u + n omega)|."""
    a = complex(u).real / omega
    if a <= 0:
        raise ValidationError(f"Re u must be positive, got u={u}")
    return math.exp(gammaln(a) - gammaln(a + n + 1) - (n + 1) * math.log(omega))


def _check_sigma(sigma: float, omega: float) -> None:
    if not 0 < sigma < omega:
        raise ParameterOrder(f"Need 0 < sigma < omega, got sigma={sigma}, omega={omega}",
                             suggestions=["Lower sigma or raise omega"])


def B_coefficient_bound(C: float, V: float, weight: float, sigma: float, omega: float, n: int) -> float:
    """(C / 2^(sigma/omega)) omega^(n+1) / (omega - sigma) e^V n! / weight."""
    _check_sigma(sigma, omega)
    if C == 0:
        return 0.0
    log_bound = (math.log(C) - (sigma / omega) * math.log(2.0) + (n + 1) * math.log(omega)
                 - math.log(omega - sigma) + V + gammaln(n + 1) - math.log(weight))
    return math.exp(log_bound)


def factorial_tail_bound(C: float, V: float, weight: float, sigma: float, omega: float,
                         u: complex, N: int) -> float:
    """
    (C / 2^(sigma/omega)) Gamma(Re u/omega - 1) / (omega - sigma) e^V / weight (N + 1/2)^(1 - Re u/omega).

    Requires Re u > omega > sigma > 0.
    """
    a = complex(u).real / omega
    if a <= 1:
        raise ParameterOrder(f"The tail bound needs Re u > omega, got u={u}, omega={omega}",
                             suggestions=["Lower omega (keeping omega > pi/(4d))", "Increase Re u"])
    _check_sigma(sigma, omega)
    if C == 0:
        return 0.0
    log_bound = (math.log(C) - (sigma / omega) * math.log(2.0) + gammaln(a - 1.0)
                 - math.log(omega - sigma) + V - math.log(weight) + (1.0 - a) * math.log(N + 0.5))
    return math.exp(log_bound)


@dataclass(frozen=True)
class TailInputs:
    """Constants of the tail bound: C at r = pi/(4 omega), V at sigma, and the weight factor."""

    C: float
    V: float
    sigma: float
    weight: float = 1.0


@dataclass(frozen=True)
class FactorialSeriesExpansion:
    """Coefficients B_1..B_N at one point for a given omega."""

    omega: float
    sign: Sign
    B: np.ndarray
    xi: complex
    d: Optional[float] = None
    tail: Optional[TailInputs] = None
    point: Optional[complex] = None

    def __len__(self) -> int:
        return len(self.B)

    def with_tail(self, tail: TailInputs) -> 'FactorialSeriesExpansion':
        return replace(self, tail=tail)

    def to_dict(self):
        return {
            'omega': self.omega,
            'sign': self.sign.value,
            'xi': self.xi,
            'point': self.point,
            'd': self.d,
            'B': list(self.B),
        }


def _mp_scalar(ctx, value):
    if isinstance(value, Fraction):
        return ctx.mpf(value.numerator) / value.denominator
    return ctx.convert(complex(value))


def _polynomial_values_mp(ctx, table: CoeffTable, point: complex, N: int) -> List:
    p = ctx.convert(complex(point))
    values = []
    for poly in table.entries[1:N + 1]:
        total = ctx.mpf(0)
        for c in reversed(poly.coeffs):
            total = total * p + _mp_scalar(ctx, c)
        values.append(total)
    return values


def factorial_expansion(table: CoeffTable, point: complex, omega: float, N: int, xi: complex,
                        d: Optional[float] = None) -> FactorialSeriesExpansion:
    """
    B_1..B_N at ``point`` from the A-coefficients of a table.

    Polynomial tables are evaluated in MP_DIGITS-digit arithmetic on a
    private mpmath context, so concurrent calls do not share precision.
    """
    if omega <= 0:
        raise ValidationError(f"omega must be positive, got {omega}")
    if d is not None and omega <= math.pi / (4.0 * d):
        logger.warning(f"omega={omega:.4g} does not exceed pi/(4d)={math.pi / (4.0 * d):.4g}; "
                       f"the factorial series may diverge")
    table.require(N)
    if table.is_polynomial:
        ctx = mpmath.MPContext()
        ctx.dps = MP_DIGITS
        B_mp = B_from_A(_polynomial_values_mp(ctx, table, point, N), ctx.mpf(omega))
        B = np.array([complex(b) for b in B_mp], dtype=complex)
    else:
        A = table.values_at(point, N)[1:]
        B = np.asarray(B_from_A(list(A), float(omega)), dtype=complex)
    return FactorialSeriesExpansion(omega=float(omega), sign=table.sign, B=B, xi=complex(xi), d=d,
                                    point=point)


def eval_factorial_series(expansion: FactorialSeriesExpansion, u: complex, N: Optional[int] = None,
                          strict: bool = False) -> Tuple[complex, float]:
    """
    Partial sum over the first N coefficients and its tail bound.

    The tail bound is NaN (uncertified) when no tail inputs are attached or
    Re u <= omega; with ``strict`` the latter raises ParameterOrder.
    """
    u = complex(u)
    N = len(expansion) if N is None else N
    if not 1 <= N <= len(expansion):
        raise ValidationError(f"N must lie in 1..{len(expansion)}, got {N}")
    if not u.real > 0:
        raise ValidationError(f"Factorial series needs Re u > 0, got u={u}")
    omega = expansion.omega

    logs = np.cumsum(np.log(u + omega * np.arange(N)))
    value = complex(np.sum(expansion.B[:N] * np.exp(-logs)))

    tail_bound = math.nan
    if expansion.tail is None:
        logger.debug("No tail inputs attached; factorial tail bound not computed")
    elif u.real <= omega:
        if strict:
            raise ParameterOrder(f"The tail bound needs Re u > omega, got u={u}, omega={omega}")
        logger.warning(f"Re u={u.real:.4g} <= omega={omega:.4g}: factorial tail bound uncertified")
    else:
        t = expansion.tail
        tail_bound = factorial_tail_bound(t.C, t.V, t.weight, t.sigma, omega, u, N)
    return value, tail_bound
