"""WKB coefficient backends."""

from .appendix import coeffs_appendixA, coeffs_from_exponential, exp_to_series
from .bessel import (bessel_arcsec, bessel_coeff_p, bessel_coeff_polys, bessel_operator, bessel_p_of_z,
                     exact_kappa)
from .chebyshev import RayFunction
from .collocation import build_ray_table, coeffs_collocation, gevrey_ratio, recursion_sequence, recursion_step
from .jets import RayJets
from .oscillator import oscillator_A1, oscillator_A2_zrec
from .poly import PolyC, PolyVar
from .table import Backend, CoeffTable, bessel_table

__all__ = [
    'Backend', 'CoeffTable', 'PolyC', 'PolyVar', 'RayFunction', 'RayJets',
    'bessel_arcsec', 'bessel_coeff_p', 'bessel_coeff_polys', 'bessel_operator', 'bessel_p_of_z',
    'bessel_table', 'build_ray_table', 'coeffs_appendixA', 'coeffs_collocation',
    'coeffs_from_exponential', 'exact_kappa', 'exp_to_series', 'gevrey_ratio',
    'oscillator_A1', 'oscillator_A2_zrec', 'recursion_sequence', 'recursion_step',
]
