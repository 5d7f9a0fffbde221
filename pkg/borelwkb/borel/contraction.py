"""
Finite-iteration check of the integral equation satisfied by the Borel transform.

With t = x (x >= 0), ray parameter s and F(0, s) = A_1(s), the Borel
transform solves

    F(x, s) = A_1(s + x/2)
              - 1/2 int_0^x phi(s + (x - tau)/2) F(tau, s + (x - tau)/2) dtau
              + 1/2 int_s^inf int_0^x Qt(r + (x - tau)/2) F(tau, r + (x - tau)/2) dtau dr

with Qt = -phi^2/4 +- phi'/2 + psi. The iteration F <- G + L F is run on a
grid uniform in x and Chebyshev in the mapped ray parameter.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from numpy.polynomial import chebyshev as C

from ..coeffs.chebyshev import chebyshev_coefficients
from ..coeffs.collocation import RayCoefficients, coeffs_collocation
from ..transform.potential import EquationSpec
from ..transform.rays import RayPath, chebyshev_nodes
from ..utils.errors import GridTooCoarse, ValidationError

logger = logging.getLogger(__name__)

MAX_GRID = 64
MAX_ITERATIONS = 20
STALL_LIMIT = 3
NOISE_FLOOR = 1e-13


@dataclass(frozen=True)
class ContractionGrid:
    n_x: int = 48
    n_s: int = 48
    t_max: Optional[float] = None

    def __post_init__(self):
        if not (2 <= self.n_x <= MAX_GRID and 8 <= self.n_s <= MAX_GRID):
            raise ValidationError(f"Contraction grid must be at most {MAX_GRID}x{MAX_GRID}, "
                                  f"got {self.n_x}x{self.n_s}")


@dataclass
class ContractionReport:
    """Successive sup-norm differences and the final iterate on the (x, s) grid."""

    deltas: List[float]
    x: np.ndarray
    s: np.ndarray
    final: np.ndarray
    seed: np.ndarray
    ratios: List[float] = field(default_factory=list)

    def __post_init__(self):
        self.ratios = [b / a for a, b in zip(self.deltas, self.deltas[1:]) if a > 0]

    @property
    def iterations(self) -> int:
        return len(self.deltas)

    def to_dict(self):
        return {'deltas': self.deltas, 'ratios': self.ratios, 'x': list(self.x), 's': list(self.s)}


def _values_to_coefficients(n: int) -> np.ndarray:
    return np.array([chebyshev_coefficients(column) for column in np.eye(n)]).T


def contraction_check(eq: EquationSpec, ray: RayPath, grid: Optional[ContractionGrid] = None,
                      K: int = 12) -> ContractionReport:
    """Iterate the integral equation K times and report the successive differences."""
    grid = grid or ContractionGrid()
    if not 1 <= K <= MAX_ITERATIONS:
        raise ValidationError(f"Iteration count must lie in 1..{MAX_ITERATIONS}, got {K}")
    if ray.ray_map is None:
        raise ValidationError("The contraction check needs a ray traced at Chebyshev nodes")
    ray_map = ray.ray_map

    coefficients = RayCoefficients.sample(eq, ray)
    a1 = coeffs_collocation(eq, ray, 1)[1]

    t_max = grid.t_max if grid.t_max is not None else eq.d
    x = np.linspace(0.0, t_max, grid.n_x)
    hx = x[1] - x[0]
    nodes = chebyshev_nodes(grid.n_s)
    s = ray_map.s_of_x(nodes)
    to_coeffs = _values_to_coefficients(grid.n_s)

    # Row values at s nodes -> values at s + d hx/2, one matrix per shift d.
    shifts = []
    phi_shift = np.empty((grid.n_x, grid.n_s), dtype=complex)
    qt_shift = np.empty((grid.n_x, grid.n_s), dtype=complex)
    for d in range(grid.n_x):
        shifted = s + d * hx / 2.0
        xs = ray_map.x_of_s(shifted)
        shifts.append(C.chebvander(xs, grid.n_s - 1) @ to_coeffs)
        phi_shift[d] = coefficients.phi.at_s(shifted)
        qt_shift[d] = -coefficients.q.at_s(shifted)
    seed = np.array([a1.at_s(s + xi / 2.0) for xi in x])

    # Tail integral from s_j to infinity of a function given at the s nodes.
    dx_ds = ray_map.dx_ds(nodes)
    tail = np.empty((grid.n_s, grid.n_s))
    for m, column in enumerate(np.eye(grid.n_s)):
        icheb = C.chebint(chebyshev_coefficients(column / dx_ds))
        tail[:, m] = (C.chebval(1.0, icheb) - C.chebval(nodes, icheb)).real

    def apply(F: np.ndarray) -> np.ndarray:
        out = np.zeros_like(F)
        for i in range(1, grid.n_x):
            weights = np.full(i + 1, hx)
            weights[0] = weights[-1] = hx / 2.0
            local = np.zeros(grid.n_s, dtype=complex)
            source = np.zeros(grid.n_s, dtype=complex)
            for k in range(i + 1):
                shifted = shifts[i - k] @ F[k]
                local += weights[k] * phi_shift[i - k] * shifted
                source += weights[k] * qt_shift[i - k] * shifted
            out[i] = -0.5 * local + 0.5 * (tail @ source)
        return out

    F = seed.copy()
    floor = NOISE_FLOOR * max(float(np.max(np.abs(seed))), 1e-300)
    deltas: List[float] = []
    stalls = 0
    for k in range(K):
        nxt = seed + apply(F)
        delta = float(np.max(np.abs(nxt - F)))
        deltas.append(delta)
        logger.debug(f"Contraction iteration {k + 1}: delta {delta:.3e}")
        F = nxt
        if delta <= floor:
            break
        if len(deltas) >= 2 and deltas[-1] >= deltas[-2]:
            stalls += 1
            if stalls >= STALL_LIMIT:
                raise GridTooCoarse(
                    f"Iteration stopped contracting after {k + 1} steps",
                    details=f"Differences {', '.join(f'{v:.2e}' for v in deltas[-4:])}",
                    suggestions=["Refine the grid", "Shorten the t range"]
                )
        else:
            stalls = 0
    logger.info(f"Contraction check: {len(deltas)} iterations, last difference {deltas[-1]:.3e}")
    return ContractionReport(deltas=deltas, x=x, s=s, final=F, seed=seed)
