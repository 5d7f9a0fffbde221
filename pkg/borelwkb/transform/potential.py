"""Potential triples f0, f1, f2 and the equation instances built on them."""

import cmath
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from ..utils.errors import DomainError, SingularityHit, ValidationError

logger = logging.getLogger(__name__)

# A jet callback returns (g(z), g'(z), ..., g^(k)(z)).
JetFunction = Callable[[complex, int], Tuple[complex, ...]]

MAX_JET_ORDER = 4
F0_FLOOR = 1e-12


class Sign(str, Enum):
    """The two WKB branches. PLUS grows like e^{u xi}, MINUS like e^{-u xi}."""

    PLUS = "plus"
    MINUS = "minus"

    @property
    def pm(self) -> int:
        """The upper/lower sign of the +- symbols: +1 for PLUS, -1 for MINUS."""
        return 1 if self is Sign.PLUS else -1

    @property
    def direction(self) -> int:
        """Direction of Re xi along the ray: toward -inf for PLUS, +inf for MINUS."""
        return -self.pm

    @classmethod
    def parse(cls, value) -> 'Sign':
        if isinstance(value, Sign):
            return value
        text = str(value).strip().lower()
        if text in ('+', 'plus', 'p', '1', '+1'):
            return cls.PLUS
        if text in ('-', 'minus', 'm', '-1'):
            return cls.MINUS
        raise ValidationError(f"Unknown sign: {value}", suggestions=["Use 'plus' or 'minus'"])


class Condition(str, Enum):
    """Decay conditions on phi and psi."""

    COND1 = "cond1"
    COND2 = "cond2"


@dataclass(frozen=True)
class PotentialTriple:
    """
    Coefficients f0, f1, f2 of w'' = (u^2 f0 + u f1 + f2) w on a z-domain.

    ``sqrt_f0`` and ``xi_closed`` are optional closed forms used by the
    built-in applications. Custom potentials leave them unset and rely on
    branch tracking along contours. ``z_singularities`` lists the poles
    of f0, f1, f2 and the zeros of f0.
    """

    f0: JetFunction
    f1: JetFunction
    f2: JetFunction
    z0: complex
    name: str = "custom"
    params: Dict[str, complex] = field(default_factory=dict)
    cuts: str = "none declared"
    sqrt_f0: Optional[Callable[[complex], complex]] = None
    xi_closed: Optional[Callable[[complex], complex]] = None
    in_domain: Optional[Callable[[complex], bool]] = None
    f0_floor: float = F0_FLOOR
    phi_identically_zero: bool = False
    xi_singularities: Tuple[complex, ...] = ()
    z_singularities: Tuple[complex, ...] = ()
    ray_power: int = 1

    def jet(self, which: int, z: complex, k: int = 0) -> Tuple[complex, ...]:
        """Evaluate the order-k jet of f0, f1 or f2 at z."""
        if k < 0 or k > MAX_JET_ORDER:
            raise ValidationError(f"Jet order must be between 0 and {MAX_JET_ORDER}, got {k}")
        fn = (self.f0, self.f1, self.f2)[which]
        values = tuple(complex(v) for v in fn(complex(z), k))
        return values[:k + 1]

    def check_domain(self, z: complex) -> None:
        """Raise DomainError when z is outside the declared domain."""
        z = complex(z)
        if not (cmath.isfinite(z)):
            raise DomainError(f"Point {z} is not finite")
        if self.in_domain is not None and not self.in_domain(z):
            raise DomainError(
                f"Point {z} is outside the domain of the {self.name} potential",
                details=f"Cuts: {self.cuts}",
                suggestions=["Move the point off the branch cut", "Pass a contour hint"]
            )

    def f0_value(self, z: complex) -> complex:
        value = self.jet(0, z, 0)[0]
        if abs(value) < self.f0_floor:
            raise SingularityHit(f"f0 vanishes at z={z}", details=f"|f0|={abs(value):.3e}")
        return value


def _on_cut(z: complex, right_end: float = 1.0) -> bool:
    """True on the cut (-inf, right_end] of the real axis."""
    return abs(z.imag) <= 1e-14 * max(1.0, abs(z)) and z.real <= right_end


def _power_jet(a: complex, power: int, z: complex, k: int) -> Tuple[complex, ...]:
    """Jet of a * z^power for a negative integer power."""
    out = []
    coeff = complex(a)
    for j in range(k + 1):
        out.append(coeff * z ** (power - j))
        coeff *= (power - j)
    return tuple(out)


def bessel_potential(kappa: complex = 0) -> PotentialTriple:
    """
    Potential of w'' = nu^2((1-z^2)/z^2 + 2 kappa/(z^2 nu) + (4kappa^2-1)/(4 z^2 nu^2)) w.

    The cut runs along (-inf, 1]; z0 = 1.
    """
    kappa_c = complex(kappa)

    def f0(z, k):
        jet = list(_power_jet(1.0, -2, z, k))
        jet[0] -= 1.0
        return tuple(jet)

    def f1(z, k):
        return _power_jet(2.0 * kappa_c, -2, z, k)

    def f2(z, k):
        return _power_jet((4.0 * kappa_c ** 2 - 1.0) / 4.0, -2, z, k)

    def sqrt_f0(z):
        s = cmath.sqrt(z - 1.0) * cmath.sqrt(z + 1.0)
        return 1j * s / z

    def xi_closed(z):
        s = cmath.sqrt(z - 1.0) * cmath.sqrt(z + 1.0)
        return 1j * s - cmath.log((1.0 + 1j * s) / z)

    def in_domain(z):
        return not _on_cut(z) and abs(z) > 0

    return PotentialTriple(
        f0=f0, f1=f1, f2=f2, z0=1.0 + 0j, name="bessel",
        params={"kappa": kappa_c}, cuts="(-inf, 1] on the real axis",
        sqrt_f0=sqrt_f0, xi_closed=xi_closed, in_domain=in_domain,
        phi_identically_zero=(kappa_c == 0),
        xi_singularities=(0j, -1j * math.pi), z_singularities=(0j, 1.0 + 0j, -1.0 + 0j),
        ray_power=1,
    )


def oscillator_potential(lam: complex = 0, ell: int = 0) -> PotentialTriple:
    """
    Potential of the rotating harmonic oscillator
    w'' = u^2((z-1)^2/4 - (lambda+1/2)/u + l(l+1)/(z^2 u^2)) w.
    """
    if int(ell) != ell or ell < 0:
        raise ValidationError(f"ell must be a non-negative integer, got {ell}")
    mu = complex(lam) + 0.5
    ll = float(ell * (ell + 1))

    def f0(z, k):
        jet = [(z - 1.0) ** 2 / 4.0, (z - 1.0) / 2.0, 0.5, 0.0, 0.0]
        return tuple(jet[:k + 1])

    def f1(z, k):
        return tuple([-mu] + [0j] * k)

    def f2(z, k):
        return _power_jet(ll, -2, z, k)

    def sqrt_f0(z):
        return (z - 1.0) / 2.0

    def xi_closed(z):
        return (z - 1.0) ** 2 / 4.0

    def in_domain(z):
        return not _on_cut(z) and abs(z) > 0

    return PotentialTriple(
        f0=f0, f1=f1, f2=f2, z0=1.0 + 0j, name="oscillator",
        params={"lambda": complex(lam), "ell": int(ell)}, cuts="(-inf, 1] on the real axis",
        sqrt_f0=sqrt_f0, xi_closed=xi_closed, in_domain=in_domain,
        phi_identically_zero=(mu == 0),
        xi_singularities=(0j,), z_singularities=(0j, 1.0 + 0j), ray_power=2,
    )


def xi_space_potential(phi: Callable[[complex], complex],
                       psi: Callable[[complex], complex],
                       dphi: Optional[Callable[[complex], complex]] = None,
                       name: str = "xi-space",
                       phi_identically_zero: bool = False) -> PotentialTriple:
    """
    Wrap phi(xi), psi(xi) as a potential with f0 = 1, so that z = xi.

    ``dphi`` is the derivative of phi; without it a fourth-order central
    difference is used.
    """
    def derivative(fn, z, h=1e-4):
        return (-fn(z + 2 * h) + 8 * fn(z + h) - 8 * fn(z - h) + fn(z - 2 * h)) / (12 * h)

    def f0(z, k):
        return tuple([1.0 + 0j] + [0j] * k)

    def f1(z, k):
        if k == 0:
            return (phi(z),)
        slope = dphi(z) if dphi is not None else derivative(phi, z)
        return tuple([phi(z), slope] + [0j] * (k - 1))

    def f2(z, k):
        return tuple([psi(z)] + [0j] * k)

    return PotentialTriple(
        f0=f0, f1=f1, f2=f2, z0=0j, name=name, cuts="none",
        sqrt_f0=lambda z: 1.0 + 0j, xi_closed=lambda z: complex(z),
        phi_identically_zero=phi_identically_zero,
    )


def build_potential(app: str, **params) -> PotentialTriple:
    """Construct a built-in potential by name ("bessel" or "oscillator")."""
    if app == "bessel":
        return bessel_potential(kappa=params.get("kappa", 0))
    if app == "oscillator":
        return oscillator_potential(lam=params.get("lambda", 0), ell=params.get("ell", 0))
    raise ValidationError(f"Unknown application: {app}", suggestions=["Use 'bessel' or 'oscillator'"])


def _central_difference(values: Sequence[complex], h: float, k: int) -> complex:
    """Central difference of order k from samples at z + j h, j = -2..2."""
    fm2, fm1, f00, fp1, fp2 = values
    if k == 1:
        return (fp1 - fm1) / (2 * h)
    if k == 2:
        return (fp1 - 2 * f00 + fm1) / h ** 2
    if k == 3:
        return (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * h ** 3)
    return (fp2 - 4 * fp1 + 6 * f00 - 4 * fm1 + fm2) / h ** 4


def check_jets(pot: PotentialTriple, points: Sequence[complex], max_order: int = 2,
               rtol: float = 1e-6) -> float:
    """
    Compare analytic jets with Richardson-extrapolated central differences.

    Returns the largest relative discrepancy and raises ValidationError when
    it exceeds ``rtol``.
    """
    worst = 0.0
    for z in points:
        z = complex(z)
        scale = max(1.0, abs(z))
        for which in range(3):
            jet = pot.jet(which, z, max_order)
            for k in range(1, max_order + 1):
                h = (1e-2 if k <= 2 else 4e-2) * scale
                estimates = []
                for step in (h, h / 2):
                    samples = [pot.jet(which, z + j * step, 0)[0] for j in (-2, -1, 0, 1, 2)]
                    estimates.append(_central_difference(samples, step, k))
                extrapolated = (4 * estimates[1] - estimates[0]) / 3
                denom = max(abs(jet[k]), max(abs(v) for v in jet), 1e-300)
                err = abs(extrapolated - jet[k]) / denom
                worst = max(worst, err)
    logger.debug(f"Jet self-test on {len(points)} points: worst relative error {worst:.3e}")
    if worst > rtol:
        raise ValidationError(
            f"Jet evaluation disagrees with finite differences (relative error {worst:.3e})",
            suggestions=["Check the derivative formulas of the jet callbacks"]
        )
    return worst


def random_points(center: complex, radius: float, count: int, seed: int = 0) -> np.ndarray:
    """Seeded random sample points in a disc, used by jet self-tests."""
    rng = np.random.default_rng(seed)
    radii = radius * np.sqrt(rng.random(count))
    angles = 2 * math.pi * rng.random(count)
    return complex(center) + radii * np.exp(1j * angles)


@dataclass(frozen=True)
class EquationSpec:
    """
    An equation instance: potential, WKB branch and domain constants.

    ``d`` is the clearance of the domain Gamma(d), ``epsilon`` the excluded
    radius around singular points and ``rho`` the decay exponent of the
    declared condition.
    """

    potential: PotentialTriple
    sign: Sign
    d: float
    epsilon: float = 0.05
    rho: float = 1.0
    condition: Condition = Condition.COND1

    def __post_init__(self):
        if not self.d > 0:
            raise ValidationError(f"Domain constant d must be positive, got {self.d}")
        if not self.rho > 0:
            raise ValidationError(f"Decay exponent rho must be positive, got {self.rho}")
        if self.epsilon < 0:
            raise ValidationError(f"epsilon must be non-negative, got {self.epsilon}")

    @property
    def phi_zero(self) -> bool:
        return self.potential.phi_identically_zero
