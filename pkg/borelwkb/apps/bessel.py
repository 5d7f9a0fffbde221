"""
Bessel and Hankel functions of order nu + kappa at nu z from the WKB solutions

    w+-(nu, z) = -i exp(-+ i kappa arcsec z) z^(1/2) e^(+-nu xi) (z^2 - 1)^(-1/4) (1 + eta+-).
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Optional

from ..bounds.remainder import BoundContext, bound_context, optimal_truncation, relative_bound
from ..coeffs.bessel import bessel_arcsec, bessel_p_of_z, bessel_s, exact_kappa
from ..coeffs.collocation import default_ray_map
from ..coeffs.table import DP_DXI, CoeffTable, bessel_table
from ..transform.liouville import compute_xi
from ..transform.potential import Condition, EquationSpec, Sign, bessel_potential
from ..transform.rays import default_d, ray_clearance, trace_mapped_ray
from ..utils.errors import BranchMismatch, ValidationError
from .oracle import oracle_bessel
from .summation import EtaValue, Method, eta_value

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 0.05
BOUND_TABLE_LENGTH = 40
OPTIMAL_N_MAX = 30


@dataclass(frozen=True)
class BesselInstance:
    """Order nu, shift kappa and point z of the Bessel equation; ``d`` defaults to 95% of the clearance."""

    nu: complex
    kappa: complex
    z: complex
    epsilon: float = DEFAULT_EPSILON
    d: Optional[float] = None

    def __post_init__(self):
        if not complex(self.nu).real > 0:
            raise ValidationError(f"Bessel WKB needs Re nu > 0, got nu={self.nu}")
        bessel_potential(self.kappa).check_domain(self.z)

    @property
    def xi(self) -> complex:
        return complex(bessel_potential(self.kappa).xi_closed(complex(self.z)))

    @property
    def p(self) -> complex:
        return bessel_p_of_z(self.z)

    @property
    def order(self) -> complex:
        return complex(self.nu) + complex(self.kappa)

    @property
    def argument(self) -> complex:
        return complex(self.nu) * complex(self.z)

    def to_dict(self):
        return {'nu': self.nu, 'kappa': self.kappa, 'z': self.z, 'xi': self.xi, 'p': self.p}


def bessel_equation(inst: BesselInstance, sign) -> EquationSpec:
    """Equation instance for one branch; BranchMismatch when z is outside D(d) for that branch."""
    sign = Sign.parse(sign)
    pot = bessel_potential(inst.kappa)
    clearance = ray_clearance(inst.xi, sign, inst.epsilon, pot.xi_singularities)
    if inst.d is None:
        if not clearance > 0:
            raise BranchMismatch(f"z={inst.z} is not in the {sign.value} domain for any d > 0",
                                 suggestions=["Use the other Hankel function"])
        d = default_d(inst.xi, sign, inst.epsilon, pot.xi_singularities)
    else:
        d = inst.d
        if clearance < d:
            raise BranchMismatch(f"z={inst.z} is not in the {sign.value} domain with d={d}",
                                 details=f"Clearance {clearance:.4g}")
    return EquationSpec(potential=pot, sign=sign, d=d, epsilon=inst.epsilon, rho=1.0,
                        condition=Condition.COND1)


def bessel_prefactor(inst: BesselInstance, sign) -> complex:
    """w+- / (1 + eta+-)."""
    pm = Sign.parse(sign).pm
    z = complex(inst.z)
    quarter = cmath.sqrt(bessel_s(z))
    turn = cmath.exp(-pm * 1j * complex(inst.kappa) * bessel_arcsec(z))
    return -1j * turn * cmath.sqrt(z) * cmath.exp(pm * complex(inst.nu) * inst.xi) / quarter


def bessel_bound_context(inst: BesselInstance, sign, n_nodes: int = 128, r: Optional[float] = None,
                         table_length: int = BOUND_TABLE_LENGTH) -> BoundContext:
    """C, V and the constants on the branch's ray through xi(z)."""
    eq = bessel_equation(inst, sign)
    anchor = compute_xi(eq.potential, inst.z)
    ray = trace_mapped_ray(eq.potential, anchor, eq.sign, n_nodes, default_ray_map(eq, anchor))
    kappa = exact_kappa(inst.kappa)

    def extend(length: int) -> CoeffTable:
        return bessel_table(length, kappa, eq.sign)

    return bound_context(eq, extend(table_length), ray, r=r, extend=extend)


def bessel_eta(inst: BesselInstance, sign, method=Method.ASYMPTOTIC, N: Optional[int] = None,
               L: Optional[int] = None, M: Optional[int] = None, omega: Optional[float] = None,
               table: Optional[CoeffTable] = None) -> EtaValue:
    """
    eta+- at z. ``N`` defaults to the optimal truncation of the remainder
    bound for the asymptotic method and to 16 otherwise.
    """
    method = Method(method)
    eq = bessel_equation(inst, sign)
    if N is None:
        if method is Method.ASYMPTOTIC:
            context = bessel_bound_context(inst, sign)
            N, _ = optimal_truncation(context.inputs(inst.nu, 1), OPTIMAL_N_MAX)
            logger.info(f"Optimal truncation N={N} at nu={inst.nu}, z={inst.z}")
        else:
            N = 16
    if table is None or table.N < N:
        table = bessel_table(N, exact_kappa(inst.kappa), eq.sign)
    return eta_value(table, inst.p, inst.nu, method, N, inst.xi, eq.d, L=L, M=M, omega=omega)


def bessel_w(inst: BesselInstance, sign, method=Method.ASYMPTOTIC, N: Optional[int] = None,
             **options) -> complex:
    eta = bessel_eta(inst, sign, method, N, **options)
    return bessel_prefactor(inst, sign) * (1.0 + eta.value)


def _hankel_factor(inst: BesselInstance, sign) -> complex:
    """e^((pi/2 -+ pi/4) i) (2/(pi nu z))^(1/2), written as 2 e^(...) / (2 pi nu z)^(1/2)."""
    pm = Sign.parse(sign).pm
    return 2.0 * cmath.exp((0.5 - pm * 0.25) * math.pi * 1j) / cmath.sqrt(2.0 * math.pi * inst.argument)


def _branch_sign(branch: str) -> Sign:
    text = str(branch).upper()
    if text == "H1":
        return Sign.PLUS
    if text == "H2":
        return Sign.MINUS
    raise ValidationError(f"Unknown Hankel branch: {branch}", suggestions=["Use H1 or H2"])


def hankel_wkb(inst: BesselInstance, method=Method.ASYMPTOTIC, branch: str = "H2",
               N: Optional[int] = None, **options) -> complex:
    """H1 from the plus solution, H2 from the minus solution, of order nu + kappa at nu z."""
    sign = _branch_sign(branch)
    return _hankel_factor(inst, sign) * bessel_w(inst, sign, method, N, **options)


@dataclass(frozen=True)
class BesselPair:
    J: complex
    Y: complex

    def to_dict(self):
        return {'J': self.J, 'Y': self.Y}


def bessel_jy_wkb(inst: BesselInstance, method=Method.ASYMPTOTIC, N: Optional[int] = None,
                  **options) -> BesselPair:
    """J and Y from both WKB solutions; z must lie in both domains."""
    w_plus = bessel_w(inst, Sign.PLUS, method, N, **options)
    w_minus = bessel_w(inst, Sign.MINUS, method, N, **options)
    norm = 1.0 / cmath.sqrt(2.0 * math.pi * inst.argument)
    quarter = cmath.exp(0.25j * math.pi)
    J = norm * (quarter * w_plus - w_minus / quarter)
    Y = norm * (w_plus / quarter - quarter * w_minus)
    return BesselPair(J=J, Y=Y)


def bessel_true_eta(inst: BesselInstance, sign) -> complex:
    """eta+- recovered from the reference Hankel function."""
    sign = Sign.parse(sign)
    H = oracle_bessel(inst.order, inst.argument).hankel("H1" if sign is Sign.PLUS else "H2")
    return H / (_hankel_factor(inst, sign) * bessel_prefactor(inst, sign)) - 1.0


def _w_and_derivative(inst: BesselInstance, sign: Sign, N: int):
    """w and dw/dz from A_1..A_{N-1} and their p-derivatives."""
    pm = sign.pm
    nu, z = complex(inst.nu), complex(inst.z)
    s = bessel_s(z)
    dxi_dz = 1j * s / z
    p = inst.p
    polys = bessel_table(N, exact_kappa(inst.kappa), sign).entries
    eta = sum(polys[n](p) / nu ** n for n in range(1, N))
    deta = sum((DP_DXI * polys[n].derivative())(p) / nu ** n for n in range(1, N)) * dxi_dz
    log_derivative = (-pm * 1j * complex(inst.kappa) / (z * s) + 0.5 / z + pm * nu * dxi_dz
                      - z / (2.0 * s * s))
    pref = bessel_prefactor(inst, sign)
    w = pref * (1.0 + eta)
    return w, pref * (log_derivative * (1.0 + eta) + deta)


def wkb_wronskian(inst: BesselInstance, N: int = 12) -> complex:
    """w+ dw-/dz - w- dw+/dz from the truncated series."""
    w_plus, dw_plus = _w_and_derivative(inst, Sign.PLUS, N)
    w_minus, dw_minus = _w_and_derivative(inst, Sign.MINUS, N)
    return w_plus * dw_minus - w_minus * dw_plus


@dataclass(frozen=True)
class BesselComparison:
    nu: complex
    z: complex
    N: int
    wkb: complex
    oracle: complex
    rel_err: float
    bound: float

    @property
    def within_bound(self) -> bool:
        return self.rel_err <= self.bound

    def to_dict(self):
        return {'nu': self.nu, 'z': self.z, 'N': self.N, 'wkb': self.wkb, 'oracle': self.oracle,
                'rel_err': self.rel_err, 'bound': self.bound}


def compare_hankel(inst: BesselInstance, N: int, branch: str = "H2",
                   context: Optional[BoundContext] = None) -> BesselComparison:
    """Truncated-series Hankel value against the reference, with the relative error bound."""
    sign = _branch_sign(branch)
    context = context or bessel_bound_context(inst, sign)
    eta = bessel_eta(inst, sign, Method.ASYMPTOTIC, N)
    value = _hankel_factor(inst, sign) * bessel_prefactor(inst, sign) * (1.0 + eta.value)
    H = oracle_bessel(inst.order, inst.argument).hankel("H1" if sign is Sign.PLUS else "H2")
    rel_err = abs(value - H) / abs(H)
    bound = relative_bound(context.report(inst.nu, N).bound, eta.value)
    return BesselComparison(nu=inst.nu, z=inst.z, N=N, wkb=value, oracle=H, rel_err=float(rel_err),
                            bound=float(bound))
