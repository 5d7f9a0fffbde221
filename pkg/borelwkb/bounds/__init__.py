"""Explicit constants and error bounds."""

from .conditions import ConditionCert, anchor_cloud, certify_any, certify_conditions
from .constants import (ConstantsChain, CSequence, C_n_sequence, C_upper, constants_chain,
                        factorial_convolution_identity)
from .gevrey import GevreyReport, gevrey_bound_check
from .remainder import (BoundContext, BoundInputs, BoundReport, C_converged, C_sampled, bound_context,
                        optimal_truncation, relative_bound, remainder_bound, sigma_scan)
from .weights import V_integrand, V_profile, V_weight, weight_factor

__all__ = [
    'BoundContext', 'BoundInputs', 'BoundReport', 'CSequence', 'C_converged', 'C_n_sequence', 'C_sampled', 'C_upper',
    'ConditionCert', 'ConstantsChain', 'GevreyReport', 'V_integrand', 'V_profile', 'V_weight',
    'anchor_cloud', 'bound_context', 'certify_any', 'certify_conditions', 'constants_chain',
    'gevrey_bound_check', 'factorial_convolution_identity', 'optimal_truncation', 'relative_bound',
    'remainder_bound', 'sigma_scan', 'weight_factor',
]
