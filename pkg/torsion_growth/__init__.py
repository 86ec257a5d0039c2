"""
Torsion Growth - exact torsion in the cohomology of arithmetic groups

This package computes integral cohomology and Reidemeister torsion of
cochain complexes built from group-ring complexes and integral
representations, and compares their growth with closed-form predictions.

Main Components:
- core: exact linear algebra, group-ring complexes and cohomology
- torsion: Reidemeister torsion and the identity check
- representations: weights, Weyl dimensions and invariant lattices
- asymptotics: growth predictions and fits
- interface: command line and job management
- utils: logging
"""

__version__ = "0.1.0"

from .core import *  # noqa: E402,F401,F403
from .torsion import *  # noqa: E402,F401,F403
from .representations import *  # noqa: E402,F401,F403
from .asymptotics import *  # noqa: E402,F401,F403
from .utils import *  # noqa: E402,F401,F403
from .interface import JobManager, JobSpec, ResultRecord  # noqa: E402

__all__ = [
    # Core
    "EngineConfig", "SparseIntMatrix", "snf", "GroupRingComplex", "CoeffModule", "CochainComplex", "cohomology",
    "TorsionGrowthError",
    # Torsion
    "TorsionValue", "reidemeister_torsion", "verify_torsion_identity",
    # Representations
    "HighestWeight", "weyl_dim", "sym_power_lattice", "schur_module_lattice",
    # Asymptotics
    "GeometryInput", "predict_so_torsion_growth", "predict_sl3_torsion_growth", "fit_growth",
    # Interface
    "JobManager", "JobSpec", "ResultRecord",
    # Utils
    "PipelineLogger",
]
