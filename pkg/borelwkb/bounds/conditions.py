"""Numerical certificates for the decay conditions on phi and psi."""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..transform.liouville import XiPoint, phi_psi_jet, z_of_xi
from ..transform.potential import Condition, EquationSpec, Sign
from ..transform.rays import RayPath, ray_clearance
from ..utils.errors import ConditionViolated, NumericalError, ValidationError

logger = logging.getLogger(__name__)

SAFETY_FACTOR = 1.1
C_FLOOR = 1e-12
GROWTH_FACTOR = 2.0
GROWTH_RUN = 4


@dataclass(frozen=True)
class ConditionCert:
    """
    Fitted constant c of a decay condition with exponent rho.

    cond1: |phi|, |psi| <= c/(1 + |xi|^(1+rho)).
    cond2: |phi| <= c/(1 + |xi|^(1/2+rho)), |phi'|, |psi| <= c/(1 + |xi|^(1+rho)).
    """

    which: Condition
    c: float
    rho: float
    d: float
    epsilon: float
    samples: List[Dict] = field(default_factory=list)
    safety: float = SAFETY_FACTOR

    def __post_init__(self):
        if not (self.c > 0 and self.rho > 0 and self.d > 0):
            raise ValidationError(f"Invalid certificate (c={self.c}, rho={self.rho}, d={self.d})")

    def scaled(self, factor: float) -> 'ConditionCert':
        return ConditionCert(which=self.which, c=self.c * factor, rho=self.rho, d=self.d,
                             epsilon=self.epsilon, samples=self.samples, safety=self.safety)

    def to_dict(self):
        return {
            'which': self.which.value,
            'c': self.c,
            'rho': self.rho,
            'd': self.d,
            'epsilon': self.epsilon,
            'safety': self.safety,
            'samples': len(self.samples),
        }


def weighted_sizes(condition: Condition, rho: float, xi: complex, phi: complex, psi: complex,
                   dphi: complex) -> float:
    """Largest of the condition's quantities multiplied by their decay weights at one point."""
    r = abs(xi)
    long_range = 1.0 + r ** (1.0 + rho)
    if condition is Condition.COND1:
        return max(abs(phi), abs(psi)) * long_range
    return max(abs(phi) * (1.0 + r ** (0.5 + rho)), abs(dphi) * long_range, abs(psi) * long_range)


def _detect_growth(values: np.ndarray) -> bool:
    """True when the weighted sizes are still rising steeply at the far end of the ray."""
    if len(values) < 2 * GROWTH_RUN:
        return False
    head = float(np.max(values[:len(values) // 2]))
    tail = values[-GROWTH_RUN:]
    rising = bool(np.all(np.diff(tail) > 0))
    return rising and tail[-1] > GROWTH_FACTOR * max(head, C_FLOOR)


def anchor_cloud(eq: EquationSpec, anchor: XiPoint, count: int = 64, seed: int = 0) -> List[XiPoint]:
    """
    Seeded points around the anchor that stay inside the domain, at distance
    up to the clearance left over after d.
    """
    sign = Sign.parse(eq.sign)
    clearance = ray_clearance(anchor.xi, sign, eq.epsilon, eq.potential.xi_singularities)
    radius = min(eq.d, clearance - eq.d) if math.isfinite(clearance) else eq.d
    if radius <= 0 or count <= 0:
        return []
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(count):
        offset = radius * math.sqrt(rng.random()) * np.exp(2j * math.pi * rng.random())
        try:
            points.append(z_of_xi(eq.potential, anchor, anchor.xi + offset))
        except NumericalError as exc:
            logger.debug(f"Cloud point at offset {offset:.3g} skipped: {exc}")
    return points


def certify_conditions(eq: EquationSpec, ray: RayPath, condition: Optional[Condition] = None,
                       cloud: Sequence[XiPoint] = ()) -> ConditionCert:
    """
    Fit the smallest c for which the declared condition holds on every
    sample of the ray (and the optional cloud), inflated by the safety factor.
    """
    condition = Condition(condition or eq.condition)
    rho = eq.rho
    points = list(ray.samples) + list(cloud)
    if not points:
        raise ValidationError("Certification needs at least one sample point")

    diagnostics = []
    ray_values = []
    for k, pt in enumerate(points):
        phi, psi, dphi = phi_psi_jet(eq.potential, pt)
        value = weighted_sizes(condition, rho, pt.xi, phi, psi, dphi)
        if not math.isfinite(value):
            raise ConditionViolated(f"{condition.value} fails: non-finite coefficient at xi={pt.xi}")
        diagnostics.append({'xi': pt.xi, 'value': value})
        if k < len(ray.samples):
            ray_values.append(value)

    if _detect_growth(np.array(ray_values)):
        raise ConditionViolated(
            f"{condition.value} with rho={rho} fails along the ray",
            details=f"Weighted size grows to {ray_values[-1]:.3e} at the far end",
            suggestions=["Try the other condition", "Lower rho"]
        )

    sup = max(d['value'] for d in diagnostics)
    c = max(SAFETY_FACTOR * sup, C_FLOOR)
    logger.info(f"{condition.value} certified with c={c:.4g}, rho={rho} on {len(points)} samples")
    return ConditionCert(which=condition, c=c, rho=rho, d=eq.d, epsilon=eq.epsilon, samples=diagnostics)


def certify_any(eq: EquationSpec, ray: RayPath, cloud: Sequence[XiPoint] = ()) -> ConditionCert:
    """Condition 1 when it holds, Condition 2 otherwise."""
    try:
        return certify_conditions(eq, ray, Condition.COND1, cloud)
    except ConditionViolated as exc:
        logger.debug(f"Falling back to cond2: {exc}")
        return certify_conditions(eq, ray, Condition.COND2, cloud)
