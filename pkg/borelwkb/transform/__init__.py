"""Liouville transformation, potentials and xi-rays."""

from .liouville import (BranchTracker, XiPoint, compute_xi, phi_psi_at, phi_psi_jet, phi_psi_values, xi_increment,
                        z_of_xi)
from .potential import (Condition, EquationSpec, PotentialTriple, Sign, bessel_potential, build_potential,
                        check_jets, oscillator_potential, xi_space_potential)
from .rays import RayMap, RayPath, default_d, ray_clearance, trace_mapped_ray, trace_ray

__all__ = [
    'BranchTracker', 'Condition', 'EquationSpec', 'PotentialTriple', 'RayMap', 'RayPath', 'Sign', 'XiPoint',
    'bessel_potential', 'build_potential', 'check_jets', 'compute_xi', 'default_d',
    'oscillator_potential', 'phi_psi_at', 'phi_psi_jet', 'phi_psi_values', 'ray_clearance', 'trace_mapped_ray',
    'trace_ray', 'xi_increment', 'xi_space_potential', 'z_of_xi',
]
