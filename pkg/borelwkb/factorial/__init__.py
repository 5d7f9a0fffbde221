"""Factorial-series expansions of the WKB corrections."""

from .expansion import (B_coefficient_bound, B_from_A, B_recursive, B_recursive_bessel, B_symbolic,
                        FactorialSeriesExpansion, TailInputs, default_omega, default_sigma,
                        eval_factorial_series, factorial_denominator_bound, factorial_expansion,
                        factorial_tail_bound, log_denominator, omega_degree)
from .stirling import StirlingTable, stirling

__all__ = [
    'B_coefficient_bound', 'B_from_A', 'B_recursive', 'B_recursive_bessel', 'B_symbolic',
    'FactorialSeriesExpansion', 'StirlingTable', 'TailInputs', 'default_omega', 'default_sigma',
    'eval_factorial_series', 'factorial_denominator_bound', 'factorial_expansion',
    'factorial_tail_bound', 'log_denominator', 'omega_degree', 'stirling',
]
