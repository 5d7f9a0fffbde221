"""Reference values of Bessel and Hankel functions from mpmath."""

import logging
from dataclasses import dataclass

import mpmath

from ..utils.errors import PrecisionLoss, ValidationError

logger = logging.getLogger(__name__)

MAX_ARGUMENT = 500.0
MAX_ORDER = 200.0
WORKING_DIGITS = (40, 60)
AGREEMENT = 1e-9
UNDERFLOW = 1e-290


@dataclass(frozen=True)
class OracleValues:
    J: complex
    Y: complex
    H1: complex
    H2: complex

    def hankel(self, branch: str) -> complex:
        """H1 or H2; PrecisionLoss when it underflows double precision."""
        if branch not in ("H1", "H2"):
            raise ValidationError(f"Unknown Hankel branch: {branch}", suggestions=["Use 'H1' or 'H2'"])
        value = self.H1 if branch == "H1" else self.H2
        if abs(value) < UNDERFLOW:
            raise PrecisionLoss(f"Reference {branch} underflows double precision",
                                details=f"|{branch}| = {abs(value):.3e}")
        return value

    def to_dict(self):
        return {'J': self.J, 'Y': self.Y, 'H1': self.H1, 'H2': self.H2}


def _check_inputs(order: complex, arg: complex) -> None:
    if abs(arg) > MAX_ARGUMENT:
        raise ValidationError(f"Oracle argument must satisfy |arg| <= {MAX_ARGUMENT}, got {arg}")
    if abs(complex(order).real) > MAX_ORDER:
        raise ValidationError(f"Oracle order must satisfy |Re order| <= {MAX_ORDER}, got {order}")
    if arg == 0:
        raise ValidationError("The oracle needs a non-zero argument")


def _evaluate(order: complex, arg: complex, digits: int, derivative: int) -> tuple:
    """J, Y, H1, H2 on a private context; H1 and H2 are formed before rounding to double."""
    ctx = mpmath.MPContext()
    ctx.dps = digits
    v = ctx.convert(order.real if order.imag == 0 else order)
    x = ctx.convert(arg.real if arg.imag == 0 else arg)
    J = ctx.besselj(v, x, derivative=derivative)
    Y = ctx.bessely(v, x, derivative=derivative)
    return complex(J), complex(Y), complex(J + ctx.j * Y), complex(J - ctx.j * Y)


def _relative_gap(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def oracle_bessel(order: complex, arg: complex, derivative: int = 0) -> OracleValues:
    """
    J, Y, H1 = J + iY and H2 = J - iY of the given order (or their
    ``derivative``-th derivatives), evaluated at two working precisions.

    PrecisionLoss when the two evaluations disagree by more than 1e-9.
    H1 and H2 are formed at working precision, so complex orders where J
    and Y nearly cancel keep their digits.
    """
    order, arg = complex(order), complex(arg)
    _check_inputs(order, arg)
    low = _evaluate(order, arg, WORKING_DIGITS[0], derivative)
    high = _evaluate(order, arg, WORKING_DIGITS[1], derivative)
    gap = max(_relative_gap(a, b) for a, b in zip(low, high))
    if gap > AGREEMENT:
        raise PrecisionLoss(
            f"Reference Bessel values of order {order} at {arg} are unstable",
            details=f"Relative disagreement {gap:.2e} between {WORKING_DIGITS[0]} and {WORKING_DIGITS[1]} digits"
        )
    J, Y, H1, H2 = high
    logger.debug(f"Oracle J_{order}({arg}) = {J}, Y = {Y}")
    return OracleValues(J=J, Y=Y, H1=H1, H2=H2)
