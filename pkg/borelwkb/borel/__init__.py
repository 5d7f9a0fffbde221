"""Borel-Pade-Laplace summation and the integral-equation check."""

from .contraction import ContractionGrid, ContractionReport, contraction_check
from .laplace import (BorelSummation, K_surrogate, borel_sum, check_poles, evaluate, laplace_eval,
                      laplace_integral, ode_residual, remainder_formula, truncation_point)
from .pade import PadeApproximant, default_degrees, pade
from .series import BorelSeries, borel_radius, borel_series

__all__ = [
    'BorelSeries', 'BorelSummation', 'ContractionGrid', 'ContractionReport', 'K_surrogate',
    'PadeApproximant', 'borel_radius', 'borel_series', 'borel_sum', 'check_poles',
    'contraction_check', 'default_degrees', 'evaluate', 'laplace_eval', 'laplace_integral',
    'ode_residual', 'pade', 'remainder_formula', 'truncation_point',
]
