"""
Error bound for the truncated WKB series,

    |R_N| <= C (2r/N + 1/(Re u - sigma)) e^V / weight * N!/(2r|u|)^N,

and the sampled constant C = 2 sup weight |F(t, xi)| over |t| = 2r.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.special import gammaln

from ..coeffs.bessel import bessel_p_of_z
from ..coeffs.table import CoeffTable
from ..transform.liouville import XiPoint
from ..transform.potential import EquationSpec, Sign
from ..transform.rays import RayPath
from ..utils.errors import Overflow, ParameterOrder, TailNotNegligible, ValidationError
from .conditions import ConditionCert, anchor_cloud, certify_conditions
from .constants import C_upper, constants_chain
from .weights import V_weight, weight_factor

logger = logging.getLogger(__name__)

N_ANGLES = 32
TAIL_RELATIVE = 1e-10
MAX_TABLE_LENGTH = 160
TINY = 1e-300


@dataclass(frozen=True)
class BoundInputs:
    """Everything the remainder bound depends on. ``V`` is taken at ``sigma``."""

    C: float
    V: float
    weight: float
    r: float
    sigma: float
    u: complex
    N: int
    d: Optional[float] = None

    def at_sigma(self, sigma: float) -> 'BoundInputs':
        """Same inputs with V rescaled to a new sigma (V is proportional to 1/sigma)."""
        return replace(self, sigma=sigma, V=self.V * self.sigma / sigma)

    def with_N(self, N: int) -> 'BoundInputs':
        return replace(self, N=N)


def remainder_bound(inputs: BoundInputs) -> float:
    u = complex(inputs.u)
    if not inputs.sigma > 0:
        raise ValidationError(f"sigma must be positive, got {inputs.sigma}")
    if u.real <= inputs.sigma:
        raise ParameterOrder(f"The remainder bound needs Re u > sigma, got u={u}, sigma={inputs.sigma}",
                             suggestions=["Take sigma = Re u / 2"])
    if not inputs.r > 0 or (inputs.d is not None and inputs.r >= inputs.d):
        raise ValidationError(f"Need 0 < r < d, got r={inputs.r}, d={inputs.d}")
    if inputs.N < 1:
        raise ValidationError(f"N must be at least 1, got {inputs.N}")
    if inputs.C == 0:
        return 0.0
    N = inputs.N
    log_bound = (math.log(inputs.C) + math.log(2.0 * inputs.r / N + 1.0 / (u.real - inputs.sigma))
                 + inputs.V - math.log(inputs.weight)
                 + gammaln(N + 1) - N * math.log(2.0 * inputs.r * abs(u)))
    return math.exp(log_bound) if log_bound < 709.0 else math.inf


def sigma_scan(inputs: BoundInputs, n_grid: int = 64) -> Tuple[float, float]:
    """Minimise the bound over sigma in (0, Re u) on a uniform grid."""
    re_u = complex(inputs.u).real
    best = (inputs.sigma, remainder_bound(inputs))
    for j in range(1, n_grid + 1):
        sigma = re_u * j / (n_grid + 1)
        bound = remainder_bound(inputs.at_sigma(sigma))
        if bound < best[1]:
            best = (sigma, bound)
    return best


def optimal_truncation(inputs: BoundInputs, N_max: int) -> Tuple[int, float]:
    """The N in 1..N_max with the smallest bound."""
    if N_max < 1:
        raise ValidationError(f"N_max must be at least 1, got {N_max}")
    bounds = [remainder_bound(inputs.with_N(N)) for N in range(1, N_max + 1)]
    best = int(np.argmin(bounds))
    return best + 1, bounds[best]


def relative_bound(bound: float, partial_sum: complex) -> float:
    """Bound on the relative error of 1 + eta given an absolute bound on eta."""
    return bound / max(abs(1.0 + complex(partial_sum)) - bound, TINY)


def _coefficient_samples(table: CoeffTable, ray: RayPath,
                         extra: Sequence[XiPoint]) -> Tuple[np.ndarray, np.ndarray]:
    # Ray tables are sampled at their own nodes.
    path = ray if table.is_polynomial or table.path is None else table.path
    values = table.sample_matrix(path)[1:]
    xis = path.xi
    if extra and table.is_polynomial:
        ps = np.array([bessel_p_of_z(pt.z) for pt in extra])
        more = np.array([poly(ps) for poly in table.entries[1:]])
        values = np.concatenate([values, more], axis=1)
        xis = np.concatenate([xis, [pt.xi for pt in extra]])
    elif extra:
        logger.debug("Ray tables are sampled on the ray only; extra points ignored")
    return values, xis


def C_sampled(table: CoeffTable, ray: RayPath, r: float, rho: float,
              extra: Sequence[XiPoint] = (), n_angles: int = N_ANGLES) -> float:
    """
    2 sup weight(xi) |sum_n A_{n+1}(xi) t^n/n!| over |t| = 2r and the sampled xi.

    TailNotNegligible when the truncated Taylor series is not converged at |t| = 2r.
    """
    if not r > 0:
        raise ValidationError(f"r must be positive, got {r}")
    values, xis = _coefficient_samples(table, ray, extra)
    N = len(values)
    weights = np.array([weight_factor(xi, table.sign, rho) for xi in xis])

    n = np.arange(N)
    scale = np.exp(n * math.log(2.0 * r) - gammaln(n + 1.0))
    terms = np.abs(values) * scale[:, None] * weights[None, :]
    sizes = np.max(terms, axis=1)
    if not np.any(sizes):
        return 0.0

    angles = np.exp(2j * math.pi * np.arange(n_angles) / n_angles)
    powers = angles[:, None] ** n[None, :]
    sums = powers @ (values * scale[:, None])
    sup = float(np.max(np.abs(sums) * weights[None, :]))

    if N >= 2 and sizes[-2] > 0:
        q = sizes[-1] / sizes[-2]
        tail = sizes[-1] * q / (1.0 - q) if q < 1.0 else math.inf
    else:
        tail = sizes[-1]
    if tail > TAIL_RELATIVE * max(sup, TINY):
        raise TailNotNegligible(
            f"Taylor series of the Borel transform is not converged at |t| = {2 * r:.4g}",
            details=f"Estimated tail {tail:.3e} against sup {sup:.3e} with {N} terms",
            suggestions=["Build a longer coefficient table", "Decrease r"]
        )
    return 2.0 * sup


def C_converged(table: CoeffTable, ray: RayPath, r: float, rho: float, extra: Sequence[XiPoint] = (),
                extend: Optional[Callable[[int], CoeffTable]] = None,
                max_length: int = MAX_TABLE_LENGTH) -> Tuple[float, CoeffTable]:
    """
    C_sampled, rebuilding the table through ``extend`` with twice the length
    while the Taylor series is not converged at |t| = 2r.
    """
    while True:
        try:
            return C_sampled(table, ray, r, rho, extra), table
        except TailNotNegligible as exc:
            if extend is None or table.N >= max_length:
                raise
            length = min(2 * table.N, max_length)
            logger.info(f"{exc.details}; rebuilding the table with {length} terms")
            table = extend(length)


@dataclass(frozen=True)
class BoundReport:
    sign: Sign
    xi: complex
    u: complex
    N: int
    sigma: float
    r: float
    V: float
    C: float
    C_upper: float
    bound: float
    weight: float
    true_remainder: Optional[float] = None

    def to_dict(self):
        return {
            'sign': self.sign.value,
            'xi': self.xi,
            'u': self.u,
            'N': self.N,
            'sigma': self.sigma,
            'r': self.r,
            'V': self.V,
            'C': self.C,
            'C_upper': self.C_upper,
            'bound': self.bound,
            'weight': self.weight,
            'true_remainder': self.true_remainder,
        }


@dataclass(frozen=True)
class BoundContext:
    """The u- and N-independent part of a bound: C, V at unit sigma, weight and constants."""

    sign: Sign
    xi: complex
    r: float
    d: float
    C: float
    C_upper: float
    V_unit: float
    weight: float
    cert: ConditionCert

    def inputs(self, u: complex, N: int, sigma: Optional[float] = None) -> BoundInputs:
        sigma = complex(u).real / 2.0 if sigma is None else sigma
        return BoundInputs(C=self.C, V=self.V_unit / sigma, weight=self.weight, r=self.r,
                           sigma=sigma, u=complex(u), N=N, d=self.d)

    def report(self, u: complex, N: int, sigma: Optional[float] = None,
               true_remainder: Optional[float] = None) -> BoundReport:
        inputs = self.inputs(u, N, sigma)
        return BoundReport(sign=self.sign, xi=self.xi, u=inputs.u, N=N, sigma=inputs.sigma, r=self.r,
                           V=inputs.V, C=self.C, C_upper=self.C_upper, bound=remainder_bound(inputs),
                           weight=self.weight, true_remainder=true_remainder)


def bound_context(eq: EquationSpec, table: CoeffTable, ray: RayPath, r: Optional[float] = None,
                  cert: Optional[ConditionCert] = None, cloud_size: int = 64, seed: int = 0,
                  extend: Optional[Callable[[int], CoeffTable]] = None) -> BoundContext:
    """
    Sample C on the ray plus a seeded cloud near its anchor, compute V and
    the analytic upper bound for C. ``extend(length)`` builds a longer table
    when the given one is too short for the radius 2r.
    """
    d = eq.d
    r = d / 2.0 if r is None else r
    if not 0 < r < d:
        raise ValidationError(f"Need 0 < r < d, got r={r}, d={d}")
    cloud = anchor_cloud(eq, ray.anchor, cloud_size, seed) if table.is_polynomial else []
    cert = cert or certify_conditions(eq, ray)
    C, _ = C_converged(table, ray, r, cert.rho, extra=cloud, extend=extend)
    try:
        upper = C_upper(constants_chain(cert, d), r, d)
    except Overflow as exc:
        logger.warning(f"Analytic upper bound for C unavailable: {exc.message}")
        upper = math.inf
    if C > upper:
        logger.warning(f"Sampled C={C:.4g} exceeds its analytic bound {upper:.4g}")
    V_unit = V_weight(eq, ray, 1.0)
    weight = weight_factor(ray.anchor.xi, eq.sign, cert.rho)
    logger.info(f"Bound context at xi={ray.anchor.xi}: C={C:.4g}, C_upper={upper:.4g}, "
                f"sigma V={V_unit:.4g}, weight={weight:.4g}")
    return BoundContext(sign=Sign.parse(eq.sign), xi=ray.anchor.xi, r=r, d=d, C=C, C_upper=upper,
                        V_unit=V_unit, weight=weight, cert=cert)
