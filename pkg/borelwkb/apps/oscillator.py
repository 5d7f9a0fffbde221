"""Solutions of the rotating harmonic oscillator equation

    w'' = u^2 ((z - 1)^2/4 - (lambda + 1/2)/u + l(l + 1)/(z^2 u^2)) w.
"""

import cmath
import logging
from dataclasses import dataclass
from typing import Optional

from ..borel.laplace import ode_residual
from ..bounds.remainder import BoundContext, bound_context
from ..coeffs.collocation import RayCoefficients, build_ray_table
from ..coeffs.oscillator import oscillator_prefactor, oscillator_xi
from ..coeffs.table import CoeffTable
from ..transform.liouville import compute_xi
from ..transform.potential import Condition, EquationSpec, Sign, oscillator_potential
from ..transform.rays import default_d, ray_clearance
from ..utils.errors import BranchMismatch, ValidationError
from .summation import EtaValue, Method, asymptotic_sum, eta_value

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 0.1
DEFAULT_TERMS = 12
BOUND_TABLE_LENGTH = 24


@dataclass(frozen=True)
class OscillatorInstance:
    u: complex
    lam: complex
    ell: int
    z: complex
    epsilon: float = DEFAULT_EPSILON
    d: Optional[float] = None

    def __post_init__(self):
        if not complex(self.u).real > 0:
            raise ValidationError(f"Oscillator WKB needs Re u > 0, got u={self.u}")
        oscillator_potential(self.lam, self.ell).check_domain(self.z)

    @property
    def xi(self) -> complex:
        return oscillator_xi(self.z)

    def to_dict(self):
        return {'u': self.u, 'lambda': self.lam, 'ell': self.ell, 'z': self.z, 'xi': self.xi}


def oscillator_equation(inst: OscillatorInstance, sign) -> EquationSpec:
    sign = Sign.parse(sign)
    pot = oscillator_potential(inst.lam, inst.ell)
    clearance = ray_clearance(inst.xi, sign, inst.epsilon, pot.xi_singularities)
    d = inst.d
    if d is None:
        if not clearance > 0:
            raise BranchMismatch(f"z={inst.z} is not in the {sign.value} domain for any d > 0",
                                 suggestions=["Use the other solution", "Move z off the real axis"])
        d = default_d(inst.xi, sign, inst.epsilon, pot.xi_singularities)
    elif clearance < d:
        raise BranchMismatch(f"z={inst.z} is not in the {sign.value} domain with d={d}",
                             details=f"Clearance {clearance:.4g}")
    return EquationSpec(potential=pot, sign=sign, d=d, epsilon=inst.epsilon, rho=0.5,
                        condition=Condition.COND2)


def oscillator_table(inst: OscillatorInstance, sign, N: int, **options) -> CoeffTable:
    """Coefficient table on the branch's ray through xi(z)."""
    eq = oscillator_equation(inst, sign)
    anchor = compute_xi(eq.potential, inst.z)
    return build_ray_table(eq, anchor, N, **options)


@dataclass(frozen=True)
class OscillatorValue:
    w: complex
    mu: EtaValue
    sign: Sign
    residual: Optional[float] = None

    def to_dict(self):
        return {'w': self.w, 'mu': self.mu.value, 'method': self.mu.method.value, 'N': self.mu.N,
                'sign': self.sign.value, 'residual': self.residual}


def oscillator_solution(inst: OscillatorInstance, method=Method.ASYMPTOTIC, sign=Sign.MINUS,
                        N: int = DEFAULT_TERMS, table: Optional[CoeffTable] = None,
                        **options) -> OscillatorValue:
    """w+- = ((z - 1)/2)^(-+(lambda + 1/2) - 1/2) exp(+-u (z - 1)^2/4) (1 + mu+-)."""
    sign = Sign.parse(sign)
    eq = oscillator_equation(inst, sign)
    if table is None:
        table = oscillator_table(inst, sign, N)
    mu = eta_value(table, 0.0, inst.u, method, N, inst.xi, eq.d, **options)
    power, exponent = oscillator_prefactor(inst.lam, inst.z, sign)
    w = power * cmath.exp(complex(inst.u) * exponent) * (1.0 + mu.value)
    return OscillatorValue(w=w, mu=mu, sign=sign)


def oscillator_residual(inst: OscillatorInstance, sign=Sign.MINUS, N: int = DEFAULT_TERMS,
                        table: Optional[CoeffTable] = None, h: float = 0.05) -> float:
    """
    Relative residual of the truncated solution in the Liouville variable,
    taken on the ray at distance 2h from xi(z).
    """
    sign = Sign.parse(sign)
    eq = oscillator_equation(inst, sign)
    if table is None:
        table = oscillator_table(inst, sign, N)
    coefficients = RayCoefficients.sample(eq, table.path)

    def eta(s):
        return asymptotic_sum(table, s, inst.u, N)

    return ode_residual(eta, coefficients.phi.at_s, coefficients.psi.at_s, sign, inst.u, 2.0 * h, h)


def oscillator_bound_context(inst: OscillatorInstance, sign=Sign.MINUS, table_length: int = BOUND_TABLE_LENGTH,
                             r: Optional[float] = None) -> BoundContext:
    """C, V and the constants on the branch's ray through xi(z)."""
    eq = oscillator_equation(inst, sign)
    table = oscillator_table(inst, sign, table_length)
    return bound_context(eq, table, table.path, r=r,
                         extend=lambda length: oscillator_table(inst, sign, length))
