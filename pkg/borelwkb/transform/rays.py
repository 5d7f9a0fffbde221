"""Horizontal xi-rays and their z-space pre-images."""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from ..utils.errors import DomainError, SingularityHit, StepFailure, ValidationError
from .liouville import XiPoint, z_of_xi
from .potential import PotentialTriple, Sign

logger = logging.getLogger(__name__)

IM_TOLERANCE = 1e-9
MIN_SAMPLES = 8


@dataclass(frozen=True)
class RayMap:
    """
    Map from x in [-1, 1) to the ray parameter s = scale * y (1 + y)^(power - 1),
    y = (1 + x)/(1 - x).

    power = 1 suits coefficients decaying like powers of 1/xi, power = 2
    those decaying like powers of xi^(-1/2).
    """

    scale: float = 1.0
    power: int = 1

    def __post_init__(self):
        if self.scale <= 0 or self.power not in (1, 2):
            raise ValidationError(f"Invalid ray map (scale={self.scale}, power={self.power})")

    def s_of_x(self, x):
        x = np.asarray(x, dtype=float)
        y = (1.0 + x) / (1.0 - x)
        return self.scale * y * (1.0 + y) ** (self.power - 1)

    def x_of_s(self, s):
        s = np.asarray(s, dtype=float) / self.scale
        if self.power == 1:
            y = s
        else:
            y = (-1.0 + np.sqrt(1.0 + 4.0 * s)) / 2.0
        return (y - 1.0) / (y + 1.0)

    def dx_ds(self, x):
        """Derivative of x with respect to s, finite at x = 1."""
        x = np.asarray(x, dtype=float)
        if self.power == 1:
            return (1.0 - x) ** 2 / (2.0 * self.scale)
        return (1.0 - x) ** 3 / (2.0 * self.scale * (3.0 + x))

    def to_dict(self):
        return {'scale': self.scale, 'power': self.power}


@dataclass(frozen=True)
class RayPath:
    """Samples along the half-line from an anchor towards the -inf (plus) or +inf (minus) end."""

    sign: Sign
    anchor: XiPoint
    samples: List[XiPoint]
    truncation_abscissa: float
    s: np.ndarray = field(default_factory=lambda: np.zeros(0))
    xs: Optional[np.ndarray] = None
    ray_map: Optional[RayMap] = None

    @property
    def xi(self) -> np.ndarray:
        return np.array([pt.xi for pt in self.samples])

    @property
    def z(self) -> np.ndarray:
        return np.array([pt.z for pt in self.samples])

    def __len__(self) -> int:
        return len(self.samples)

    def to_dict(self):
        return {
            'sign': self.sign.value,
            'anchor': self.anchor,
            'truncation_abscissa': self.truncation_abscissa,
            'map': self.ray_map,
            'z': list(self.z),
            'xi': list(self.xi),
        }


def _rk_guesses(pot: PotentialTriple, start: XiPoint, sign: Sign, s_values: np.ndarray,
                log_time: bool) -> np.ndarray:
    """Integrate dz/ds = direction / f0^{1/2}(z) with an embedded Runge-Kutta pair."""
    direction = sign.direction
    state = {'root': start.sqrt_f0}

    def sqrt_f0(z):
        f0 = pot.jet(0, z, 0)[0]
        if abs(f0) < pot.f0_floor:
            raise SingularityHit(f"Ray runs into a zero of f0 near z={z}")
        if pot.sqrt_f0 is not None:
            return pot.sqrt_f0(z)
        root = np.sqrt(complex(f0))
        if abs(root + state['root']) < abs(root - state['root']):
            root = -root
        state['root'] = root
        return root

    def rhs(tau, y):
        z = complex(y[0], y[1])
        scale = math.exp(tau) if log_time else 1.0
        dz = direction * scale / sqrt_f0(z)
        return [dz.real, dz.imag]

    times = np.log1p(s_values) if log_time else s_values
    result = solve_ivp(rhs, (0.0, float(times[-1])), [start.z.real, start.z.imag],
                       method='RK45', t_eval=times, rtol=1e-10, atol=1e-12)
    if not result.success:
        raise StepFailure(f"Ray integration failed: {result.message}")
    return result.y[0] + 1j * result.y[1]


def _polish(pot: PotentialTriple, start: XiPoint, sign: Sign, s_values: np.ndarray,
            guesses: np.ndarray) -> List[XiPoint]:
    samples = []
    previous = start
    for s, guess in zip(s_values, guesses):
        target = start.xi + sign.direction * s
        if s == 0:
            point = start
        else:
            point = z_of_xi(pot, previous, target, guess=guess)
        if point.z != start.z:
            pot.check_domain(point.z)
        if abs(point.xi.imag - start.xi.imag) > IM_TOLERANCE * max(1.0, abs(start.xi)):
            raise StepFailure(f"Ray drifted off Im xi = {start.xi.imag} at z={point.z}")
        samples.append(point)
        previous = point
    return samples


def trace_ray(pot: PotentialTriple, start: XiPoint, sign: Sign, length: float,
              n_samples: int = 64) -> RayPath:
    """
    Trace the pre-image of the ray xi = xi(start) + direction * s, 0 <= s <= length.

    Samples are uniform in s.
    """
    sign = Sign.parse(sign)
    if length < 0:
        raise ValidationError(f"Ray length must be non-negative, got {length}")
    if length == 0:
        return RayPath(sign=sign, anchor=start, samples=[start],
                       truncation_abscissa=start.xi.real, s=np.zeros(1))
    if n_samples < MIN_SAMPLES:
        raise ValidationError(f"A ray needs at least {MIN_SAMPLES} samples, got {n_samples}")

    s_values = np.linspace(0.0, float(length), n_samples)
    guesses = _rk_guesses(pot, start, sign, s_values, log_time=False)
    samples = _polish(pot, start, sign, s_values, guesses)
    logger.debug(f"Traced {sign.value} ray of length {length} from z={start.z}: end z={samples[-1].z}")
    return RayPath(sign=sign, anchor=start, samples=samples,
                   truncation_abscissa=start.xi.real + sign.direction * length, s=s_values)


def chebyshev_nodes(n: int) -> np.ndarray:
    """Chebyshev-Gauss nodes in increasing order."""
    return -np.cos(np.pi * (np.arange(n) + 0.5) / n)


def trace_mapped_ray(pot: PotentialTriple, start: XiPoint, sign: Sign, n_nodes: int,
                     ray_map: RayMap) -> RayPath:
    """Trace the full half-line, sampled at Chebyshev nodes of the mapped variable x."""
    sign = Sign.parse(sign)
    if n_nodes < MIN_SAMPLES:
        raise ValidationError(f"A ray needs at least {MIN_SAMPLES} nodes, got {n_nodes}")
    xs = chebyshev_nodes(n_nodes)
    s_values = ray_map.s_of_x(xs)
    guesses = _rk_guesses(pot, start, sign, s_values, log_time=True)
    samples = _polish(pot, start, sign, s_values, guesses)
    far = start.xi.real + sign.direction * float(s_values[-1])
    logger.debug(f"Mapped {sign.value} ray with {n_nodes} nodes, truncated at Re xi = {far:.3e}")
    return RayPath(sign=sign, anchor=start, samples=samples, truncation_abscissa=far,
                   s=s_values, xs=xs, ray_map=ray_map)


def ray_clearance(xi0: complex, sign: Sign, epsilon: float,
                  singularities: Sequence[complex]) -> float:
    """
    Largest d such that the ray from xi0 lies in the domain Gamma(d).

    Each singular point xi_k carries a disc of radius d + epsilon and a
    horizontal half-strip of half-width d + epsilon extending towards the
    end of the ray opposite to the ray's direction of travel.
    """
    sign = Sign.parse(sign)
    xi0 = complex(xi0)
    best = math.inf
    for xk in singularities:
        diff = xi0 - complex(xk)
        # The ray leaves xi0 in sign.direction; it passes beside xi_k when xi_k lies ahead.
        ahead = (diff.real * sign.direction) <= 0
        distance = abs(diff.imag) if ahead else abs(diff)
        best = min(best, distance - epsilon)
    return best


def default_d(xi0: complex, sign: Sign, epsilon: float, singularities: Sequence[complex],
              fraction: float = 0.95) -> float:
    """Domain constant d = fraction * clearance; DomainError when the domain is empty."""
    d_max = ray_clearance(xi0, sign, epsilon, singularities)
    if not d_max > 0:
        raise DomainError(
            f"No admissible domain constant at xi={xi0} for the {Sign.parse(sign).value} branch",
            details=f"Clearance {d_max:.3e} with epsilon={epsilon}",
            suggestions=["Move the point away from the singular points", "Decrease epsilon"]
        )
    return fraction * d_max if math.isfinite(d_max) else 1.0
