"""Exponential form of the formal solutions: 1 + sum A_n u^-n = exp(sum E_n u^-n)."""

import logging
from typing import List, Sequence, Tuple

from ..transform.potential import EquationSpec, Sign
from ..transform.rays import RayPath
from ..utils.errors import ValidationError
from .chebyshev import RayFunction
from .collocation import validate_ray_request
from .jets import RayJets, series_mul
from .table import Backend, CoeffTable

logger = logging.getLogger(__name__)


def exp_to_series(E_values: Sequence, N: int) -> List:
    """
    A_1..A_N from E_1..E_N via A_n = E_n + (1/n) sum_{k=1}^{n-1} k E_k A_{n-k}.

    Works for numbers, Fractions and numpy arrays; Fractions stay exact.
    """
    if len(E_values) < N:
        raise ValidationError(f"Need E_1..E_{N}, got {len(E_values)} values")
    A: List = []
    for n in range(1, N + 1):
        convolution = 0
        for k in range(1, n):
            convolution = convolution + k * E_values[k - 1] * A[n - k - 1]
        A.append(E_values[n - 1] + convolution / n if n > 1 else E_values[0])
    return A


def coeffs_appendixA(eq: EquationSpec, ray: RayPath, N: int) -> Tuple[CoeffTable, CoeffTable]:
    """
    F_1 = -phi'/4 -+ phi^2/8 +- psi/2,
    F_{n+1} = -phi F_n/2 -+ F_n'/2 -+ (1/2) sum_{k=1}^{n-1} F_k F_{n-k},
    and E_n the integral of F_n from the far end of the ray.

    The F_n are carried as Taylor series around the nodes. Entry 0 of both
    tables is the zero function.
    """
    validate_ray_request(eq, ray, N)
    sign = Sign.parse(eq.sign)
    pm = sign.pm
    jets = RayJets.sample(eq, ray, N + 2)
    prec = N + 1

    series = [-0.25 * jets.d_xi(jets.phi) - pm * 0.125 * series_mul(jets.phi, jets.phi, prec)
              + pm * 0.5 * jets.psi[:, :prec]]
    for n in range(1, N):
        current = series[n - 1]
        length = current.shape[1] - 1
        nxt = -0.5 * series_mul(jets.phi, current, length) - pm * 0.5 * jets.d_xi(current)
        for k in range(1, n):
            nxt = nxt - pm * 0.5 * series_mul(series[k - 1], series[n - k - 1], length)
        series.append(nxt)

    F = [RayFunction.from_values(ray, s[:, 0]) for s in series]
    E = []
    for n, fn in enumerate(F, start=1):
        en = fn.integral_from_end()
        en.check_far_end(f"E_{n}")
        E.append(en)
    logger.debug(f"Exponential-form coefficients E_1..E_{N} on a {sign.value} ray")

    zero = RayFunction.zeros(ray)
    params = dict(eq.potential.params)
    e_table = CoeffTable(sign=sign, backend=Backend.APPENDIX, entries=tuple([zero] + E),
                         params=params, path=ray, quantity="E")
    f_table = CoeffTable(sign=sign, backend=Backend.APPENDIX, entries=tuple([zero] + F),
                         params=params, path=ray, quantity="F")
    return e_table, f_table


def coeffs_from_exponential(eq: EquationSpec, ray: RayPath, N: int) -> CoeffTable:
    """A_0..A_N assembled from the exponential form."""
    e_table, _ = coeffs_appendixA(eq, ray, N)
    values = exp_to_series([fn.values for fn in e_table.entries[1:]], N)
    entries = [RayFunction.constant(ray, 1.0)] + [RayFunction.from_values(ray, v) for v in values]
    return CoeffTable(sign=e_table.sign, backend=Backend.APPENDIX, entries=tuple(entries),
                      params=e_table.params, path=ray)
