"""The exponent V(sigma, xi) and the decay weight of the error bounds."""

import logging

import numpy as np

from ..coeffs.chebyshev import RayFunction
from ..coeffs.collocation import RayCoefficients
from ..transform.potential import EquationSpec, Sign
from ..transform.rays import RayPath
from ..utils.errors import ValidationError

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-10


def weight_factor(xi: complex, sign, rho: float) -> float:
    """max(1, -+ sgn(Re xi) |Re xi|^rho)."""
    pm = Sign.parse(sign).pm
    re = complex(xi).real
    return max(1.0, -pm * float(np.sign(re)) * abs(re) ** rho)


def V_integrand(eq: EquationSpec, ray: RayPath) -> RayFunction:
    """|phi^2|/4 + |phi'/2 +- psi| along the ray, or |psi| when phi vanishes identically."""
    pm = Sign.parse(eq.sign).pm
    c = RayCoefficients.sample(eq, ray)
    if eq.phi_zero:
        values = np.abs(c.psi.values)
    else:
        values = 0.25 * np.abs(c.phi.values) ** 2 + np.abs(0.5 * c.dphi.values + pm * c.psi.values)
    return RayFunction.from_values(ray, values.astype(complex))


def V_profile(eq: EquationSpec, ray: RayPath, sigma: float) -> RayFunction:
    """V(sigma, xi) at every node of the ray, an integral from the far end."""
    if not sigma > 0:
        raise ValidationError(f"sigma must be positive, got {sigma}")
    if ray.xs is None:
        raise ValidationError("V needs a ray traced at Chebyshev nodes")
    integrand = V_integrand(eq, ray)
    tail = integrand.tail_coefficient()
    if tail > TAIL_TOLERANCE:
        # Kinks where the modulus vanishes.
        logger.warning(f"V integrand resolved only to {tail:.1e} on {len(ray)} nodes")
    integrand.check_far_end("V integrand")
    factor = 1.0 if eq.phi_zero else 6.0
    return (factor / sigma) * integrand.tail_integral()


def V_weight(eq: EquationSpec, ray: RayPath, sigma: float) -> float:
    """V(sigma, xi) at the anchor of the ray."""
    value = float(V_profile(eq, ray, sigma).anchor_value.real)
    logger.debug(f"V({sigma:.4g}) = {value:.6g} at xi={ray.anchor.xi}")
    return max(value, 0.0)
