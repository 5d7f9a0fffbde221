"""Signed Stirling numbers of the first kind."""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from ..utils.errors import Overflow, ValidationError

logger = logging.getLogger(__name__)

INT64_MAX = np.iinfo(np.int64).max
FIXED_WIDTH_LIMIT = 30


@dataclass(frozen=True)
class StirlingTable:
    """
    Triangle s(n, k), 0 <= k <= n <= n_max, with
    sum_k s(n, k) x^k = x (x - 1) ... (x - n + 1).

    Entries are Python integers and never wrap.
    """

    n_max: int
    rows: Tuple[Tuple[int, ...], ...]

    def __call__(self, n: int, k: int) -> int:
        if not 0 <= n <= self.n_max:
            raise ValidationError(f"Stirling table holds n <= {self.n_max}, got n={n}")
        if k < 0 or k > n:
            return 0
        return self.rows[n][k]

    def row(self, n: int) -> Tuple[int, ...]:
        return self.rows[n]

    def falling_factorial(self, n: int, x: int) -> int:
        """x (x - 1) ... (x - n + 1) from row n."""
        return sum(c * x ** k for k, c in enumerate(self.rows[n]))

    def to_int64(self) -> np.ndarray:
        """Lower-triangular int64 matrix; Overflow when an entry does not fit."""
        largest = max(abs(c) for row in self.rows for c in row)
        if largest > INT64_MAX:
            raise Overflow(
                f"Stirling numbers up to n={self.n_max} exceed 64-bit integers",
                details=f"Largest magnitude {largest}",
                suggestions=["Use the table entries directly, they are arbitrary precision"]
            )
        out = np.zeros((self.n_max + 1, self.n_max + 1), dtype=np.int64)
        for n, row in enumerate(self.rows):
            out[n, :n + 1] = row
        return out

    def to_dict(self):
        return {'n_max': self.n_max, 'rows': [[str(c) for c in row] for row in self.rows]}


@lru_cache(maxsize=16)
def stirling(n_max: int) -> StirlingTable:
    """Table up to n_max by s(n + 1, k) = s(n, k - 1) - n s(n, k)."""
    if n_max < 0:
        raise ValidationError(f"n_max must be non-negative, got {n_max}")
    rows = [(1,)]
    for n in range(n_max):
        prev = rows[-1]
        row = [0] * (n + 2)
        for k in range(1, n + 2):
            row[k] = (prev[k - 1] if k - 1 <= n else 0) - n * (prev[k] if k <= n else 0)
        rows.append(tuple(row))
    if n_max > FIXED_WIDTH_LIMIT:
        logger.debug(f"Stirling table up to n={n_max} uses arbitrary-precision integers")
    return StirlingTable(n_max=n_max, rows=tuple(rows))
