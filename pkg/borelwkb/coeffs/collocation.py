"""Generic coefficient backend: the normalized recursion realized on a mapped xi-ray."""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..transform.liouville import XiPoint, phi_psi_jet
from ..transform.potential import EquationSpec, Sign
from ..transform.rays import RayMap, RayPath, trace_mapped_ray
from ..utils.errors import ValidationError
from .chebyshev import RayFunction
from .jets import RADIUS_FRACTION, RayJets, series_mul
from .table import Backend, CoeffTable

logger = logging.getLogger(__name__)

DEFAULT_NODES = 128
MAX_NODES = 512
TAIL_TOLERANCE = 1e-12
ZERO_FLOOR = 1e-12


@dataclass(frozen=True)
class RayCoefficients:
    """phi, psi, dphi/dxi and Q = phi^2/4 -+ dphi/2 - psi sampled on a ray."""

    phi: RayFunction
    psi: RayFunction
    dphi: RayFunction
    q: RayFunction

    @classmethod
    def sample(cls, eq: EquationSpec, ray: RayPath) -> 'RayCoefficients':
        pm = Sign.parse(eq.sign).pm
        triples = [phi_psi_jet(eq.potential, pt) for pt in ray.samples]
        phi = np.array([t[0] for t in triples])
        psi = np.array([t[1] for t in triples])
        dphi = np.array([t[2] for t in triples])
        q = 0.25 * phi ** 2 - pm * 0.5 * dphi - psi
        return cls(
            phi=RayFunction.from_values(ray, phi),
            psi=RayFunction.from_values(ray, psi),
            dphi=RayFunction.from_values(ray, dphi),
            q=RayFunction.from_values(ray, q),
        )


def recursion_step(current: np.ndarray, jets: RayJets, sign: Sign, shift: complex = 0.0,
                   q: Optional[np.ndarray] = None) -> np.ndarray:
    """
    A_{n+1} = (shift - phi/2) A_n -+ A_n'/2 -+ 1/2 int (phi^2/4 -+ phi'/2 - psi) A_n
    on the node series of ``current``; the result is one term shorter.

    ``shift`` is (n - 1) omega for the factorial-series coefficients and 0 otherwise.
    """
    pm = Sign.parse(sign).pm
    prec = current.shape[1]
    if prec < 2:
        raise ValidationError("A recursion step needs series of at least two terms")
    q = jets.q(sign) if q is None else q
    source = jets.integral_from_end(series_mul(q, current, prec))
    return (complex(shift) * current[:, :prec - 1]
            - 0.5 * series_mul(jets.phi, current, prec - 1)
            - pm * 0.5 * jets.d_xi(current)
            - pm * 0.5 * source[:, :prec - 1])


def validate_ray_request(eq: EquationSpec, ray: RayPath, N: int) -> None:
    if N < 1:
        raise ValidationError(f"N must be at least 1, got {N}")
    if ray.xs is None:
        raise ValidationError("The collocation backend needs a ray traced at Chebyshev nodes")
    if ray.sign is not Sign.parse(eq.sign):
        raise ValidationError(f"Ray sign {ray.sign.value} does not match the equation sign {eq.sign}")


def recursion_sequence(eq: EquationSpec, ray: RayPath, N: int, shifts: Optional[List[complex]] = None,
                       fraction: float = RADIUS_FRACTION) -> Tuple[List[RayFunction], List[RayFunction]]:
    """
    Run N recursion steps from the constant 1 and return the values and
    the xi-derivatives of the iterates at the ray nodes. ``shifts[n]`` is the
    shift of step n + 1.
    """
    validate_ray_request(eq, ray, N)
    sign = Sign.parse(eq.sign)
    shifts = shifts or [0.0] * N
    jets = RayJets.sample(eq, ray, N + 3, fraction)
    q = jets.q(sign)
    current = jets.constant(1.0, N + 2)
    values: List[RayFunction] = []
    slopes: List[RayFunction] = []
    for n in range(N):
        current = recursion_step(current, jets, sign, shifts[n], q)
        values.append(RayFunction.from_values(ray, current[:, 0]))
        slopes.append(RayFunction.from_values(ray, jets.slope(current)))
    return values, slopes


def coeffs_collocation(eq: EquationSpec, ray: RayPath, N: int,
                       fraction: float = RADIUS_FRACTION) -> CoeffTable:
    """
    A_0..A_N on a mapped ray from Taylor series around every node and
    cumulative integration from the far end.
    """
    values, slopes = recursion_sequence(eq, ray, N, fraction=fraction)
    for n, fn in enumerate(values, start=1):
        fn.check_far_end(f"A_{n}")
        logger.debug(f"A_{n}: sup {fn.sup:.3e}, tail coefficient {fn.tail_coefficient():.2e}")
    backend = Backend.OSCILLATOR if eq.potential.name == "oscillator" else Backend.COLLOCATION
    one = RayFunction.constant(ray, 1.0)
    return CoeffTable(sign=Sign.parse(eq.sign), backend=backend, entries=tuple([one] + values),
                      params=dict(eq.potential.params), path=ray,
                      slopes=tuple([RayFunction.zeros(ray)] + slopes))


def default_ray_map(eq: EquationSpec, anchor: XiPoint) -> RayMap:
    """Ray map scaled to the distance from the anchor to the nearest singular point."""
    distances = [abs(anchor.xi - complex(xk)) for xk in eq.potential.xi_singularities]
    scale = max(1.0, min(distances)) if distances else 1.0
    return RayMap(scale=scale, power=eq.potential.ray_power)


def resolution_tolerance(N: int, fraction: float = RADIUS_FRACTION) -> float:
    """Chebyshev tail accepted for A_N: the rounding floor of N series steps."""
    return TAIL_TOLERANCE * (1.0 / fraction) ** N


def unresolved(table: CoeffTable, fraction: float = RADIUS_FRACTION) -> float:
    """Largest tail coefficient of A_1..A_N relative to its tolerance; zero entries are skipped."""
    worst = 0.0
    for n in range(1, table.N + 1):
        fn = table[n]
        if fn.sup < ZERO_FLOOR:
            continue
        worst = max(worst, fn.tail_coefficient() / resolution_tolerance(n, fraction))
    return worst


def build_ray_table(eq: EquationSpec, anchor: XiPoint, N: int,
                    n_nodes: int = DEFAULT_NODES, max_nodes: int = MAX_NODES,
                    ray_map: Optional[RayMap] = None) -> CoeffTable:
    """
    Trace the ray from ``anchor`` and build a table on it, doubling the
    number of nodes until every coefficient is resolved.
    """
    sign = Sign.parse(eq.sign)
    ray_map = ray_map or default_ray_map(eq, anchor)
    nodes = n_nodes
    while True:
        ray = trace_mapped_ray(eq.potential, anchor, sign, nodes, ray_map)
        table = coeffs_collocation(eq, ray, N)
        excess = unresolved(table)
        if excess <= 1.0 or nodes >= max_nodes:
            break
        logger.debug(f"Coefficients exceed their resolution tolerance {excess:.2g}-fold with {nodes} nodes; "
                     f"doubling")
        nodes *= 2
    if excess > 1.0:
        logger.warning(f"A_1..A_{N} are resolved only to {excess:.1e} times the tolerance with {nodes} nodes")
    logger.info(f"{table.backend.value} table A_0..A_{N} on a {sign.value} ray with {nodes} nodes")
    return table


def gevrey_ratio(table: CoeffTable) -> np.ndarray:
    """(sup |A_{n+1}| / n!)^(1/n) for n = 1..N-1."""
    sups = [float(np.max(np.abs(row))) for row in table.sample_matrix()]
    return np.array([
        (sups[n + 1] / math.factorial(n)) ** (1.0 / n) if sups[n + 1] > 0 else 0.0
        for n in range(1, len(sups) - 1)
    ])
