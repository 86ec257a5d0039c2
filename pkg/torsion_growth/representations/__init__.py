"""
Highest weights, Weyl dimensions and integral lattices in representations.
"""
from .lattices import dual_sym_power_lattice, schur_module_lattice, sym_power_lattice
from .weights import HighestWeight, RootSystemData, is_theta_fixed, so_module_rank, theta_twist, weyl_dim

__all__ = [
    'RootSystemData',
    'HighestWeight',
    'weyl_dim',
    'theta_twist',
    'is_theta_fixed',
    'so_module_rank',
    'sym_power_lattice',
    'dual_sym_power_lattice',
    'schur_module_lattice',
]
