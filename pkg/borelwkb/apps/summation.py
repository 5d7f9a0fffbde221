"""Evaluation of the WKB correction eta by one of the three summation methods."""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..borel.laplace import borel_sum
from ..coeffs.table import CoeffTable
from ..factorial.expansion import (TailInputs, default_omega, eval_factorial_series,
                                   factorial_expansion)
from ..utils.errors import ValidationError

logger = logging.getLogger(__name__)


class Method(str, Enum):
    """How eta is obtained from the coefficient table."""

    ASYMPTOTIC = "asymptotic"
    BOREL = "borel"
    FACTORIAL = "factorial"


@dataclass(frozen=True)
class EtaValue:
    """eta at one point with the number of coefficients used and a method-specific error figure."""

    value: complex
    method: Method
    N: int
    error: float = math.nan

    def to_dict(self):
        return {'value': self.value, 'method': self.method.value, 'N': self.N, 'error': self.error}


def asymptotic_sum(table: CoeffTable, point: complex, u: complex, N: int) -> complex:
    """sum_{n=1}^{N-1} A_n/u^n."""
    if N < 1:
        raise ValidationError(f"N must be at least 1, got {N}")
    if N == 1:
        return 0j
    values = table.values_at(point, N - 1)[1:]
    powers = complex(u) ** -np.arange(1, N)
    return complex(np.sum(values * powers))


def eta_value(table: CoeffTable, point: complex, u: complex, method, N: int, xi: complex, d: float,
              L: Optional[int] = None, M: Optional[int] = None, omega: Optional[float] = None,
              tail: Optional[TailInputs] = None) -> EtaValue:
    """
    eta at ``point`` (p for polynomial tables, the ray parameter otherwise).

    asymptotic uses A_1..A_{N-1}; borel and factorial use N coefficients.
    """
    method = Method(method)
    if method is Method.ASYMPTOTIC:
        return EtaValue(value=asymptotic_sum(table, point, u, N), method=method, N=N)
    if method is Method.BOREL:
        summation = borel_sum(table, point, u, N, L=L, M=M, d=d)
        return EtaValue(value=summation.value, method=method, N=N, error=summation.err_estimate)
    omega = default_omega(d) if omega is None else omega
    expansion = factorial_expansion(table, point, omega, N, xi, d)
    if tail is not None:
        expansion = expansion.with_tail(tail)
    value, tail_bound = eval_factorial_series(expansion, u, N)
    logger.debug(f"Factorial series with omega={omega:.4g}, N={N}: {value:.12g} (tail {tail_bound:.2e})")
    return EtaValue(value=value, method=method, N=N, error=tail_bound)
