"""
Closed-form growth predictions and empirical fits.
"""
from .fitting import GrowthSeries, fit_growth, growth_exponent, leading_coefficient_report
from .predictions import (
    GeometryInput, Prediction, predict_liminf_bound, predict_sl3_torsion_growth, predict_so_torsion_growth,
    so_torsion_constant,
)

__all__ = [
    'GeometryInput',
    'Prediction',
    'so_torsion_constant',
    'predict_so_torsion_growth',
    'predict_sl3_torsion_growth',
    'predict_liminf_bound',
    'GrowthSeries',
    'fit_growth',
    'growth_exponent',
    'leading_coefficient_report',
]
