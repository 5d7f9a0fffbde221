"""Explicit constants of the coefficient bounds."""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..utils.errors import Overflow, ValidationError
from .conditions import ConditionCert

logger = logging.getLogger(__name__)

EULER_GAMMA = 0.5772156649015329
MAX_UPPER_TERMS = 200000


@dataclass(frozen=True)
class ConstantsChain:
    c1: float
    c2: float
    c3: float
    C1d: float
    d: float

    @property
    def growth_exponent(self) -> float:
        """c2/2 + (c1 + 9 c2/4) d, the power of n in the majorant of C_n(d)."""
        return self.c2 / 2.0 + (self.c1 + 2.25 * self.c2) * self.d

    def to_dict(self):
        return {'c1': self.c1, 'c2': self.c2, 'c3': self.c3, 'C1d': self.C1d, 'd': self.d}


def constants_chain(cert: ConditionCert, d: Optional[float] = None) -> ConstantsChain:
    """
    c1 = max(c, c^2)(1 + d)^rho,
    c2 = 4 max(c, c^2)(1 + rho)(1 + (1 + d)^(1+rho))/rho,
    c3 = 1 + 7 c2/4, C1(d) = 1 + c1/2 + 5 c1 d/4.
    """
    d = cert.d if d is None else d
    if d <= 0:
        raise ValidationError(f"d must be positive, got {d}")
    c, rho = cert.c, cert.rho
    big = max(c, c * c)
    c1 = big * (1.0 + d) ** rho
    c2 = 4.0 * big * (1.0 + rho) * (1.0 + (1.0 + d) ** (1.0 + rho)) / rho
    c3 = 1.0 + 1.75 * c2
    C1d = 1.0 + 0.5 * c1 + 1.25 * c1 * d
    return ConstantsChain(c1=c1, c2=c2, c3=c3, C1d=C1d, d=d)


def _step_factor(chain: ConstantsChain, d: float, n: int) -> float:
    return (1.0 + chain.c2 / (2.0 * n) + (chain.c1 + 2.25 * chain.c2) * d / n
            + 1.75 * chain.c1 * d * d / (n * n))


@dataclass(frozen=True)
class CSequence:
    """log C_1(d)..log C_N(d) and the logarithm of their closed-form majorant."""

    log_values: np.ndarray
    log_majorant: np.ndarray

    @property
    def values(self) -> np.ndarray:
        with np.errstate(over='ignore'):
            return np.exp(self.log_values)

    @property
    def majorant(self) -> np.ndarray:
        with np.errstate(over='ignore'):
            return np.exp(self.log_majorant)

    def __len__(self) -> int:
        return len(self.log_values)

    def value(self, n: int) -> float:
        """C_n(d); Overflow when it does not fit a double."""
        log_value = float(self.log_values[n - 1])
        if log_value > 709.0:
            raise Overflow(f"C_{n}(d) = exp({log_value:.1f}) does not fit a double")
        return math.exp(log_value)


def C_n_sequence(chain: ConstantsChain, d: float, N: int) -> CSequence:
    """
    C_{n+1}(d) = (1 + c2/(2n) + (c1 + 9c2/4) d/n + 7 c1 d^2/(4 n^2)) C_n(d),
    with the majorant C_1(d) exp(gamma a + 7 pi^2 c1 d^2/24) n^a, a = c2/2 + (c1 + 9c2/4) d.
    """
    if N < 1:
        raise ValidationError(f"N must be at least 1, got {N}")
    logs = np.empty(N)
    logs[0] = math.log(chain.C1d)
    for n in range(1, N):
        logs[n] = logs[n - 1] + math.log(_step_factor(chain, d, n))
    a = chain.c2 / 2.0 + (chain.c1 + 2.25 * chain.c2) * d
    n = np.arange(1, N + 1)
    majorant = (math.log(chain.C1d) + EULER_GAMMA * a + 7.0 * math.pi ** 2 * chain.c1 * d * d / 24.0
                + a * np.log(n))
    return CSequence(log_values=logs, log_majorant=majorant)


def C_upper(chain: ConstantsChain, r: float, d: Optional[float] = None, rel_tol: float = 1e-15) -> float:
    """c3 sum_{n>=0} C_{n+1}(d) (r/d)^n, with a geometric estimate of the remaining terms."""
    d = chain.d if d is None else d
    if not 0 < r < d:
        raise ValidationError(f"Need 0 < r < d, got r={r}, d={d}")
    q = r / d
    log_term = math.log(chain.C1d)
    total = 0.0
    for n in range(MAX_UPPER_TERMS):
        if log_term > 709.0:
            raise Overflow(f"C_upper diverges numerically at term {n}",
                           suggestions=["Decrease r relative to d"])
        term = math.exp(log_term)
        total += term
        ratio = _step_factor(chain, d, n + 1) * q
        if ratio < 1.0 and term * ratio / (1.0 - ratio) <= rel_tol * total:
            total += term * ratio / (1.0 - ratio)
            break
        log_term += math.log(_step_factor(chain, d, n + 1)) + math.log(q)
    else:
        raise Overflow(f"C_upper did not converge in {MAX_UPPER_TERMS} terms (r/d = {q:.4f})")
    return chain.c3 * total


def factorial_convolution_identity(n: int, m: int) -> Tuple[int, int]:
    """sum_{j=0}^{m} binom(m, j) j! (n + m - j - 1)! and (n + m)!/n, in exact integers."""
    if n < 1 or m < 0:
        raise ValidationError(f"Need n >= 1 and m >= 0, got n={n}, m={m}")
    lhs = sum(math.comb(m, j) * math.factorial(j) * math.factorial(n + m - j - 1) for j in range(m + 1))
    rhs = math.factorial(n + m) // n
    return lhs, rhs
