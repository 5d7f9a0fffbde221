"""Bessel functions and the rotating harmonic oscillator from WKB solutions."""

from .bessel import (BesselComparison, BesselInstance, BesselPair, bessel_bound_context, bessel_equation,
                     bessel_eta, bessel_jy_wkb, bessel_prefactor, bessel_true_eta, bessel_w, compare_hankel,
                     hankel_wkb, wkb_wronskian)
from .oracle import OracleValues, oracle_bessel
from .oscillator import (OscillatorInstance, OscillatorValue, oscillator_bound_context, oscillator_equation,
                         oscillator_residual, oscillator_solution, oscillator_table)
from .summation import EtaValue, Method, asymptotic_sum, eta_value

__all__ = [
    'BesselComparison', 'BesselInstance', 'BesselPair', 'EtaValue', 'Method', 'OracleValues',
    'OscillatorInstance', 'OscillatorValue', 'asymptotic_sum', 'bessel_bound_context', 'bessel_equation',
    'bessel_eta', 'bessel_jy_wkb', 'bessel_prefactor', 'bessel_true_eta', 'bessel_w', 'compare_hankel',
    'eta_value', 'hankel_wkb', 'oracle_bessel', 'oscillator_bound_context', 'oscillator_equation',
    'oscillator_residual', 'oscillator_solution', 'oscillator_table', 'wkb_wronskian',
]
