"""Liouville transformation: xi(z), f0^{-1/4} and the transformed coefficients phi, psi."""

import cmath
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ..utils.errors import BranchAmbiguity, DomainError, SingularityHit, StepFailure
from ..utils.quadrature import adaptive_gauss
from .potential import PotentialTriple

logger = logging.getLogger(__name__)

WALK_SAMPLES = 256
NEWTON_STEPS = 30


@dataclass(frozen=True)
class XiPoint:
    """A point z together with xi(z) and the branch of f0^{1/2} used there."""

    z: complex
    xi: complex
    sqrt_f0: complex
    weight: complex

    @classmethod
    def build(cls, z: complex, xi: complex, sqrt_f0: complex) -> 'XiPoint':
        sqrt_f0 = complex(sqrt_f0)
        weight = 1.0 / cmath.sqrt(sqrt_f0) if sqrt_f0 != 0 else complex(cmath.inf, 0)
        return cls(z=complex(z), xi=complex(xi), sqrt_f0=sqrt_f0, weight=weight)

    def to_dict(self):
        return {'z': self.z, 'xi': self.xi, 'sqrt_f0': self.sqrt_f0, 'weight': self.weight}


class BranchTracker:
    """
    Continues f0^{1/2} along a polygon by picking, at each sample, the square
    root nearest to the previous value.
    """

    def __init__(self, pot: PotentialTriple, vertices: Sequence[complex],
                 initial: Optional[complex] = None, samples_per_segment: int = WALK_SAMPLES):
        self.pot = pot
        self.vertices = [complex(v) for v in vertices]
        self.samples = samples_per_segment
        self.references = []
        self._walk(initial)

    def _walk(self, initial: Optional[complex]) -> None:
        previous = initial
        for k in range(len(self.vertices) - 1):
            a, b = self.vertices[k], self.vertices[k + 1]
            refs = []
            for j in range(self.samples + 1):
                v = j / self.samples
                t = a + (b - a) * v
                f0 = self.pot.jet(0, t, 0)[0]
                at_start = (k == 0 and j == 0)
                if abs(f0) < self.pot.f0_floor:
                    if at_start:
                        refs.append(0j)
                        continue
                    raise BranchAmbiguity(
                        f"f0 vanishes on the contour near t={t}",
                        suggestions=["Pass a contour hint that avoids the zeros of f0"]
                    )
                root = cmath.sqrt(f0)
                if previous is None or previous == 0:
                    chosen = root
                else:
                    near, far = (root, -root) if abs(root - previous) <= abs(root + previous) else (-root, root)
                    if abs(near - previous) > 0.9 * abs(far - previous):
                        raise BranchAmbiguity(
                            f"Cannot continue f0^(1/2) past t={t}",
                            details="Consecutive samples do not determine the branch",
                        )
                    chosen = near
                refs.append(chosen)
                previous = chosen
            self.references.append(np.array(refs))

    def value(self, segment: int, v: float) -> complex:
        """Branch of f0^{1/2} at parameter v in [0, 1] of the given segment."""
        a, b = self.vertices[segment], self.vertices[segment + 1]
        t = a + (b - a) * v
        root = cmath.sqrt(self.pot.jet(0, t, 0)[0])
        refs = self.references[segment]
        position = min(max(v, 0.0), 1.0) * self.samples
        j = int(position)
        if j >= self.samples:
            reference = refs[-1]
        else:
            w = position - j
            reference = (1 - w) * refs[j] + w * refs[j + 1]
        return root if abs(root - reference) <= abs(root + reference) else -root

    @property
    def end_value(self) -> complex:
        return complex(self.references[-1][-1])


def _sqrt_f0_along(pot: PotentialTriple, tracker: Optional[BranchTracker], segment: int,
                   a: complex, b: complex, v: float) -> complex:
    if tracker is None:
        return pot.sqrt_f0(a + (b - a) * v)
    return tracker.value(segment, v)


def _segment_integral(pot: PotentialTriple, tracker: Optional[BranchTracker], segment: int,
                      a: complex, b: complex, from_turning_point: bool) -> complex:
    delta = b - a

    if from_turning_point:
        # t = a + delta v^2 removes the square-root behaviour at a simple zero of f0.
        def integrand(vs):
            return np.array([
                _sqrt_f0_along(pot, tracker, segment, a, b, float(v) ** 2) * 2.0 * delta * v
                for v in vs
            ])
    else:
        def integrand(vs):
            return np.array([_sqrt_f0_along(pot, tracker, segment, a, b, float(v)) * delta for v in vs])

    value, error = adaptive_gauss(integrand, 0.0, 1.0, abs_tol=1e-15, rel_tol=1e-13)
    logger.debug(f"xi segment {a} -> {b}: {value} (error estimate {error:.2e})")
    return value


def _check_contour(pot: PotentialTriple, vertices: Sequence[complex], samples: int = WALK_SAMPLES) -> None:
    if pot.in_domain is None:
        return
    for k in range(len(vertices) - 1):
        a, b = vertices[k], vertices[k + 1]
        for j in range(1, samples + 1):
            t = a + (b - a) * (j / samples)
            if not pot.in_domain(t):
                raise DomainError(
                    f"Contour segment {a} -> {b} leaves the domain near t={t}",
                    details=f"Cuts: {pot.cuts}",
                    suggestions=["Pass a contour hint that goes around the cut"]
                )


def compute_xi(pot: PotentialTriple, z: complex,
               contour_hint: Optional[Sequence[complex]] = None) -> XiPoint:
    """
    Compute xi(z) = integral of f0^{1/2} from z0 to z.

    The contour is the polygon z0 -> hints -> z. Built-in potentials use
    their closed-form branch of f0^{1/2}; custom ones are branch-tracked.
    """
    z = complex(z)
    if z != pot.z0:
        pot.check_domain(z)
    vertices = [pot.z0] + [complex(h) for h in (contour_hint or [])] + [z]

    if z == pot.z0 and not contour_hint:
        f0 = pot.jet(0, z, 0)[0]
        root = 0j if abs(f0) < pot.f0_floor else (pot.sqrt_f0(z) if pot.sqrt_f0 else cmath.sqrt(f0))
        return XiPoint.build(z, 0j, root)

    for hint in vertices[1:-1]:
        pot.check_domain(hint)
    _check_contour(pot, vertices)

    tracker = None if pot.sqrt_f0 is not None else BranchTracker(pot, vertices)
    start_is_turning = abs(pot.jet(0, pot.z0, 0)[0]) < pot.f0_floor

    xi = 0j
    for k in range(len(vertices) - 1):
        xi += _segment_integral(pot, tracker, k, vertices[k], vertices[k + 1],
                                from_turning_point=(k == 0 and start_is_turning))

    root = pot.sqrt_f0(z) if tracker is None else tracker.end_value
    if abs(root) ** 2 < pot.f0_floor:
        raise SingularityHit(f"f0 vanishes at z={z}")
    return XiPoint.build(z, xi, root)


def xi_increment(pot: PotentialTriple, start: XiPoint, z: complex) -> XiPoint:
    """Continue xi from a known point along the straight segment start.z -> z."""
    z = complex(z)
    if z == start.z:
        return start
    vertices = [start.z, z]
    _check_contour(pot, vertices, samples=8)
    tracker = None if pot.sqrt_f0 is not None else BranchTracker(pot, vertices, initial=start.sqrt_f0)
    xi = start.xi + _segment_integral(pot, tracker, 0, start.z, z, from_turning_point=False)
    root = pot.sqrt_f0(z) if tracker is None else tracker.end_value
    return XiPoint.build(z, xi, root)


def z_of_xi(pot: PotentialTriple, anchor: XiPoint, target: complex, guess: Optional[complex] = None,
            tol: float = 1e-13) -> XiPoint:
    """Solve xi(z) = target by Newton's method started from ``guess`` (default: anchor.z)."""
    target = complex(target)
    z = complex(guess) if guess is not None else anchor.z
    point = xi_increment(pot, anchor, z)
    for _ in range(NEWTON_STEPS):
        residual = point.xi - target
        if abs(residual) <= tol * max(1.0, abs(target)):
            return point
        z = z - residual / point.sqrt_f0
        point = xi_increment(pot, anchor, z)
    if abs(point.xi - target) <= 1e3 * tol * max(1.0, abs(target)):
        return point
    raise StepFailure(
        f"Newton iteration for xi(z) = {target} did not converge",
        details=f"Last residual {abs(point.xi - target):.3e} at z={z}"
    )


def _phi_psi_dphi_dz(pot: PotentialTriple, z: complex) -> Tuple[complex, complex, complex, complex]:
    f0, df0, d2f0 = pot.jet(0, z, 2)
    f1, df1 = pot.jet(1, z, 1)
    (f2,) = pot.jet(2, z, 0)
    if abs(f0) < pot.f0_floor:
        raise SingularityHit(f"f0 vanishes at z={z}", details=f"|f0|={abs(f0):.3e}")
    phi = f1 / f0
    psi = f2 / f0 + (4.0 * f0 * d2f0 - 5.0 * df0 ** 2) / (16.0 * f0 ** 3)
    dphi_dz = (df1 * f0 - f1 * df0) / f0 ** 2
    return phi, psi, dphi_dz, f0


def phi_psi_values(pot: PotentialTriple, z: complex) -> Tuple[complex, complex, complex]:
    """
    phi, psi and f0 at any z where f0 does not vanish, cuts ignored.

    psi = f2/f0 + (4 f0 f0'' - 5 f0'^2)/(16 f0^3).
    """
    phi, psi, _, f0 = _phi_psi_dphi_dz(pot, complex(z))
    return phi, psi, f0


def phi_psi_jet(pot: PotentialTriple, pt: XiPoint) -> Tuple[complex, complex, complex]:
    """Return phi, psi and d phi / d xi at a transformed point."""
    pot.check_domain(pt.z)
    phi, psi, dphi_dz, _ = _phi_psi_dphi_dz(pot, pt.z)
    return phi, psi, dphi_dz / pt.sqrt_f0


def phi_psi_at(pot: PotentialTriple, pt: XiPoint) -> Tuple[complex, complex]:
    """Return phi(xi) = f1/f0 and psi(xi) at a transformed point."""
    phi, psi, _ = phi_psi_jet(pot, pt)
    return phi, psi
