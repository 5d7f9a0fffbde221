"""Check of the Gevrey-type bounds on the coefficients and their first derivatives."""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.special import gammaln

from ..coeffs.table import CoeffTable
from ..transform.rays import RayPath
from ..utils.errors import BoundViolated, ValidationError
from .constants import ConstantsChain, C_n_sequence
from .weights import weight_factor

logger = logging.getLogger(__name__)

MAX_CHECKED = 10


@dataclass(frozen=True)
class GevreyReport:
    max_ratio: float
    worst: Tuple[int, int, complex]
    checked: int

    def to_dict(self):
        n, m, xi = self.worst
        return {'max_ratio': self.max_ratio, 'worst': {'n': n, 'm': m, 'xi': xi}, 'checked': self.checked}


def gevrey_bound_check(table: CoeffTable, ray: RayPath, chain: ConstantsChain, d: Optional[float] = None,
                       rho: float = 1.0, n_max: int = MAX_CHECKED) -> GevreyReport:
    """
    Compare |d^m A_n/dxi^m| with c3 C_n(d) 2^(-n) (n + m - 1)!/(d^(n+m-1) weight)
    for m in {0, 1} at every sample of the ray.

    Returns the largest ratio of the two sides; BoundViolated when it exceeds 1.
    """
    d = chain.d if d is None else d
    n_max = min(n_max, table.N)
    if n_max < 1:
        raise ValidationError("The table holds no coefficients to check")
    values = table.sample_matrix(ray, n_max)
    derivatives = table.derivative_matrix(ray, n_max)
    weights = np.array([weight_factor(xi, table.sign, rho) for xi in ray.xi])
    log_C = C_n_sequence(chain, d, n_max).log_values

    max_ratio = 0.0
    worst = (1, 0, ray.anchor.xi)
    checked = 0
    for n in range(1, n_max + 1):
        for m, rows in ((0, values), (1, derivatives)):
            log_rhs = (math.log(chain.c3) + log_C[n - 1] - n * math.log(2.0)
                       + gammaln(n + m) - (n + m - 1) * math.log(d))
            ratios = np.abs(rows[n]) * weights * math.exp(-log_rhs)
            checked += len(ratios)
            k = int(np.argmax(ratios))
            if ratios[k] > max_ratio:
                max_ratio = float(ratios[k])
                worst = (n, m, complex(ray.xi[k]))
    logger.debug(f"Gevrey check on {checked} samples: largest ratio {max_ratio:.3e} at {worst}")
    if max_ratio > 1.0:
        n, m, xi = worst
        raise BoundViolated(
            f"|d^{m} A_{n}/dxi^{m}| exceeds its bound at xi={xi:.6g}",
            details=f"Ratio {max_ratio:.4g}",
            suggestions=["Recheck the condition certificate", "Increase the number of ray nodes"]
        )
    return GevreyReport(max_ratio=max_ratio, worst=worst, checked=checked)
