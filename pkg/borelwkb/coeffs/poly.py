"""Dense univariate polynomials with exact rational or complex coefficients."""

from enum import Enum
from fractions import Fraction
from numbers import Number
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np

Scalar = Union[Fraction, complex]


class PolyVar(str, Enum):
    """Independent variable of a polynomial."""

    P = "p"
    INVZM1 = "invzm1"
    XI = "xi"
    T = "t"
    OMEGA = "omega"


def _coerce(value) -> Scalar:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    return complex(value)


def _is_zero(value: Scalar) -> bool:
    return value == 0


class PolyC:
    """
    Polynomial sum_k coeffs[k] * var^k.

    Coefficients stay Fractions as long as every operand is rational; any
    complex operand promotes the result to complex floats.
    """

    __slots__ = ('coeffs', 'var')

    def __init__(self, coeffs: Iterable = (), var: Union[PolyVar, str] = PolyVar.P):
        values = [_coerce(c) for c in coeffs]
        while values and _is_zero(values[-1]):
            values.pop()
        self.coeffs: Tuple[Scalar, ...] = tuple(values)
        self.var = PolyVar(var)

    @classmethod
    def constant(cls, value, var=PolyVar.P) -> 'PolyC':
        return cls([value], var)

    @classmethod
    def monomial(cls, degree: int, value=1, var=PolyVar.P) -> 'PolyC':
        return cls([0] * degree + [value], var)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    @property
    def exact_rational(self) -> Optional[List[Tuple[int, int]]]:
        """Coefficients as (numerator, denominator) pairs, or None for complex polynomials."""
        if not self.is_exact:
            return None
        return [(c.numerator, c.denominator) for c in self.coeffs]

    def coefficient(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def to_complex(self) -> 'PolyC':
        return PolyC([complex(c) for c in self.coeffs], self.var)

    def as_array(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def __call__(self, x):
        """Horner evaluation; works for scalars and numpy arrays."""
        if isinstance(x, np.ndarray):
            result = np.zeros_like(x, dtype=complex)
            for c in reversed(self.coeffs):
                result = result * x + complex(c)
            return result
        result = Fraction(0) if isinstance(x, (int, Fraction)) and self.is_exact else 0j
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def _check_var(self, other: 'PolyC') -> None:
        if other.var != self.var:
            raise ValueError(f"Cannot combine polynomials in {self.var.value} and {other.var.value}")

    def __add__(self, other) -> 'PolyC':
        if isinstance(other, PolyC):
            self._check_var(other)
            n = max(len(self.coeffs), len(other.coeffs))
            return PolyC([self.coefficient(k) + other.coefficient(k) for k in range(n)], self.var)
        if isinstance(other, Number):
            return self + PolyC.constant(other, self.var)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> 'PolyC':
        return PolyC([-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> 'PolyC':
        return self + (-other)

    def __rsub__(self, other) -> 'PolyC':
        return (-self) + other

    def __mul__(self, other) -> 'PolyC':
        if isinstance(other, PolyC):
            self._check_var(other)
            if self.is_zero or other.is_zero:
                return PolyC([], self.var)
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if _is_zero(a):
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return PolyC(out, self.var)
        if isinstance(other, Number):
            scalar = _coerce(other)
            return PolyC([c * scalar for c in self.coeffs], self.var)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyC):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, Number):
            return self.coeffs == PolyC.constant(other, self.var).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def derivative(self) -> 'PolyC':
        return PolyC([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def integral(self) -> 'PolyC':
        """Antiderivative vanishing at 0."""
        return PolyC([Fraction(0)] + [c / (k + 1) for k, c in enumerate(self.coeffs)], self.var)

    def reflect(self) -> 'PolyC':
        """The polynomial in -var."""
        return PolyC([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)], self.var)

    def shift_degree(self, k: int) -> 'PolyC':
        """Multiply by var^k."""
        return PolyC([0] * k + list(self.coeffs), self.var)

    def close_to(self, other: 'PolyC', tol: float = 1e-15) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        return all(abs(complex(self.coefficient(k)) - complex(other.coefficient(k))) <= tol for k in range(n))

    def to_dict(self):
        payload = {
            'kind': 'poly',
            'var': self.var.value,
            'coeffs': [complex(c) for c in self.coeffs],
        }
        if self.is_exact:
            payload['exact'] = [f"{c.numerator}/{c.denominator}" for c in self.coeffs]
        return payload

    @classmethod
    def from_dict(cls, data) -> 'PolyC':
        if 'exact' in data:
            return cls([Fraction(text) for text in data['exact']], data['var'])
        return cls([complex(float(re), float(im)) for re, im in data['coeffs']], data['var'])

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            power = '' if k == 0 else (self.var.value if k == 1 else f"{self.var.value}^{k}")
            terms.append(f"({c})" + (f"*{power}" if power else ''))
        return ' + '.join(terms) if terms else '0'
