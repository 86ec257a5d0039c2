"""
Exact foundations: configuration, errors, sparse integer linear algebra and
group-ring complexes with their cohomology.
"""
from .config import DEFAULT_CONFIG, EngineConfig
from .errors import (
    AcyclicityError, CapacityError, ConsistencyError, IllConditionedFitError, InternalError, ParseError,
    TorsionGrowthError, ValidationError,
)
from .exact_linalg import (
    SnfResult, SparseIntMatrix, certified_rank, hermite_normal_form, integer_kernel, saturate, snf,
)
from .group_complex import (
    CochainComplex, CoeffModule, CohomologyResult, DegreeCohomology, GroupPresentationData, GroupRingComplex,
    GroupRingElement, GroupRingMatrix, bar_complex, check_boundaries, cochain_cohomology, cohomology,
    is_rationally_acyclic, lens_complex, periodic_complex, specialize,
)

__all__ = [
    'DEFAULT_CONFIG',
    'EngineConfig',
    'TorsionGrowthError',
    'ParseError',
    'ValidationError',
    'ConsistencyError',
    'CapacityError',
    'AcyclicityError',
    'IllConditionedFitError',
    'InternalError',
    'SparseIntMatrix',
    'SnfResult',
    'snf',
    'certified_rank',
    'hermite_normal_form',
    'integer_kernel',
    'saturate',
    'GroupPresentationData',
    'GroupRingElement',
    'GroupRingMatrix',
    'GroupRingComplex',
    'CoeffModule',
    'CochainComplex',
    'DegreeCohomology',
    'CohomologyResult',
    'specialize',
    'cochain_cohomology',
    'cohomology',
    'is_rationally_acyclic',
    'check_boundaries',
    'bar_complex',
    'periodic_complex',
    'lens_complex',
]
