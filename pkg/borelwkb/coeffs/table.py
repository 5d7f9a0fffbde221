"""Coefficient tables A_0..A_N with provenance."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from ..transform.potential import Sign
from ..transform.rays import RayPath
from ..utils.errors import DomainError, ValidationError
from .bessel import bessel_coeff_polys, bessel_p_of_z, exact_kappa
from .chebyshev import RayFunction
from .poly import PolyC, PolyVar

logger = logging.getLogger(__name__)

Entry = Union[PolyC, RayFunction]

# d/dxi of a polynomial in p: dp/dxi = p^4 - p^2.
DP_DXI = PolyC([0, 0, -1, 0, 1], PolyVar.P)


class Backend(str, Enum):
    """Where the coefficients of a table came from."""

    BESSEL_POLY = "bessel_poly"
    OSCILLATOR = "oscillator"
    COLLOCATION = "collocation"
    APPENDIX = "appendix"


@dataclass(frozen=True)
class CoeffTable:
    """
    Coefficients A_0, ..., A_N of one WKB branch.

    Entries are polynomials in p (bessel_poly) or ray functions sampled at
    the Chebyshev nodes of ``path`` (every other backend). Ray tables may
    carry ``slopes``, the xi-derivatives of the entries at the nodes.
    """

    sign: Sign
    backend: Backend
    entries: Tuple[Entry, ...]
    params: Dict[str, Any] = field(default_factory=dict)
    path: Optional[RayPath] = None
    quantity: str = "A"
    slopes: Optional[Tuple[RayFunction, ...]] = None

    def __post_init__(self):
        if not self.entries:
            raise ValidationError("A coefficient table needs at least one entry")
        if self.quantity != "A":
            return
        first = self.entries[0]
        if isinstance(first, PolyC):
            if first != 1:
                raise ValidationError("A_0 must be the constant 1")
        elif np.max(np.abs(first.values - 1.0)) > 1e-12:
            raise ValidationError("A_0 must be the constant 1")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, n: int) -> Entry:
        return self.entries[n]

    @property
    def N(self) -> int:
        return len(self.entries) - 1

    @property
    def is_polynomial(self) -> bool:
        return isinstance(self.entries[0], PolyC)

    def require(self, n_max: int) -> None:
        if n_max > self.N:
            raise ValidationError(f"Table holds A_0..A_{self.N}, A_{n_max} was requested",
                                  suggestions=["Build the table with a larger N"])

    def values_at(self, point: complex, n_max: Optional[int] = None) -> np.ndarray:
        """
        A_0..A_{n_max} at one point: the value of p for polynomial tables,
        the ray parameter s for ray tables.
        """
        n_max = self.N if n_max is None else n_max
        self.require(n_max)
        if self.is_polynomial:
            return np.array([complex(poly(complex(point))) for poly in self.entries[:n_max + 1]])
        s = float(np.real(point))
        if s < 0:
            raise DomainError(f"Ray parameter must be non-negative, got {s}")
        return np.array([complex(fn.at_s(s)) for fn in self.entries[:n_max + 1]])

    def sample_matrix(self, path: Optional[RayPath] = None, n_max: Optional[int] = None) -> np.ndarray:
        """Array of shape (n_max + 1, samples) with A_n at every sample of a ray."""
        n_max = self.N if n_max is None else n_max
        self.require(n_max)
        if self.is_polynomial:
            path = path or self.path
            if path is None:
                raise ValidationError("Sampling a polynomial table needs a ray")
            ps = np.array([bessel_p_of_z(pt.z) for pt in path.samples])
            return np.array([poly(ps) for poly in self.entries[:n_max + 1]])
        return np.array([fn.values for fn in self.entries[:n_max + 1]])

    def derivative_matrix(self, path: Optional[RayPath] = None, n_max: Optional[int] = None) -> np.ndarray:
        """d A_n / d xi at every sample of a ray."""
        n_max = self.N if n_max is None else n_max
        self.require(n_max)
        if self.is_polynomial:
            path = path or self.path
            if path is None:
                raise ValidationError("Sampling a polynomial table needs a ray")
            ps = np.array([bessel_p_of_z(pt.z) for pt in path.samples])
            return np.array([(DP_DXI * poly.derivative())(ps) for poly in self.entries[:n_max + 1]])
        if self.slopes is not None:
            return np.array([fn.values for fn in self.slopes[:n_max + 1]])
        return np.array([fn.derivative_xi().values for fn in self.entries[:n_max + 1]])

    def with_path(self, path: RayPath) -> 'CoeffTable':
        return CoeffTable(sign=self.sign, backend=self.backend, entries=self.entries,
                          params=self.params, path=path, quantity=self.quantity, slopes=self.slopes)

    def to_dict(self):
        return {
            'sign': self.sign.value,
            'backend': self.backend.value,
            'quantity': self.quantity,
            'params': self.params,
            'entries': [entry.to_dict() for entry in self.entries],
        }


def table_from_polys(polys: Sequence[PolyC], sign: Sign, params: Dict[str, Any]) -> CoeffTable:
    return CoeffTable(sign=Sign.parse(sign), backend=Backend.BESSEL_POLY, entries=tuple(polys),
                      params=dict(params))


def bessel_table(N: int, kappa, sign=Sign.PLUS) -> CoeffTable:
    """Polynomial table A_0..A_N in p for the Bessel equation."""
    sign = Sign.parse(sign)
    kappa = exact_kappa(kappa)
    return table_from_polys(bessel_coeff_polys(N, kappa, sign), sign, {'kappa': kappa})
