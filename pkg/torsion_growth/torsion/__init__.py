"""
Reidemeister torsion and the check against cohomology orders.
"""
from .torsion_engine import (
    TorsionIdentityReport, TorsionValue, random_acyclic, reidemeister_torsion, verify_cochain_identity,
    verify_torsion_identity,
)

__all__ = [
    'TorsionValue',
    'TorsionIdentityReport',
    'reidemeister_torsion',
    'verify_torsion_identity',
    'verify_cochain_identity',
    'random_acyclic',
]
