# asymptotics/fitting.py
"""
Empirical growth fits: least-squares leading coefficients at high precision,
extrapolated log-log growth exponents, and the SL3 leading-coefficient
report that contrasts fitted and closed-form values.
"""

# Standard Imports
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union
# Third-party Imports
import mpmath
import numpy as np
# Local Imports
from ..core.config import DEFAULT_CONFIG, EngineConfig
from ..core.errors import IllConditionedFitError, ValidationError
from ..representations.weights import (
    HighestWeight, sl3_printed_coefficient, sl3_rank_leading_coefficient,
)

LOGGER = logging.getLogger(__name__)

Value = Union[int, str, Fraction, float, mpmath.mpf]


def _mpf(value: Value) -> mpmath.mpf:
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


@dataclass(frozen=True)
class GrowthSeries:
    """Points (m, value) with m strictly increasing."""
    points: Tuple[Tuple[int, Value], ...]
    model_degree: int = 1

    def __post_init__(self) -> None:
        points = tuple((int(m), v) for m, v in self.points)
        object.__setattr__(self, "points", points)
        ms = [m for m, _ in points]
        if any(a >= b for a, b in zip(ms, ms[1:])):
            raise ValidationError("Series abscissae must be strictly increasing")
        if len(points) < 3:
            raise ValidationError(f"A growth series needs at least 3 points, got {len(points)}")

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def from_function(cls, fn, ms: Sequence[int], model_degree: int = 1) -> "GrowthSeries":
        return cls(tuple((m, fn(m)) for m in ms), model_degree)


@dataclass(frozen=True)
class FitResult:
    leading_coefficient: mpmath.mpf
    residual: mpmath.mpf
    coefficients: Tuple[mpmath.mpf, ...]
    degree: int
    condition: mpmath.mpf

    def __str__(self) -> str:
        return (f"a={mpmath.nstr(self.leading_coefficient, 15)} (degree {self.degree}, "
                f"residual {mpmath.nstr(self.residual, 5)})")


def fit_growth(series: GrowthSeries, degree: Optional[int] = None, terms: int = 2,
               config: EngineConfig = DEFAULT_CONFIG) -> FitResult:
    """
    Least squares for value ≈ a m^p + b m^(p-1) + ... with `terms` monomials.
    Returns a and the residual relative to the data norm.
    """
    degree = series.model_degree if degree is None else degree
    if terms < 1:
        raise ValidationError("A fit needs at least one term")
    needed = max(degree + 1, terms)
    if len(series) < needed:
        raise ValidationError(f"Fitting degree {degree} with {terms} terms needs {needed} points, "
                              f"got {len(series)}")
    with mpmath.workdps(config.precision_digits):
        ms = [mpmath.mpf(m) for m, _ in series.points]
        values = mpmath.matrix([_mpf(v) for _, v in series.points])
        exponents = [degree - j for j in range(terms)]
        columns = [[m ** e for m in ms] for e in exponents]
        scales = [max(abs(x) for x in col) or mpmath.mpf(1) for col in columns]
        design = mpmath.matrix(len(ms), terms)
        for j, col in enumerate(columns):
            for i, x in enumerate(col):
                design[i, j] = x / scales[j]
        normal = design.T * design
        try:
            condition = mpmath.cond(normal)
        except ZeroDivisionError:
            raise IllConditionedFitError("Fit design matrix is singular")
        if condition > mpmath.mpf(10) ** (config.precision_digits - 10):
            raise IllConditionedFitError(f"Fit is ill-conditioned (condition number {mpmath.nstr(condition, 5)})")
        solution, _ = mpmath.qr_solve(design, values)
        coefficients = tuple(solution[j] / scales[j] for j in range(terms))
        residual_vec = design * solution - values
        norm = mpmath.norm(values)
        residual = mpmath.norm(residual_vec) / norm if norm else mpmath.norm(residual_vec)
        LOGGER.debug("Fit degree %d with %d terms: condition %s", degree, terms, mpmath.nstr(condition, 5))
        return FitResult(coefficients[0], residual, coefficients, degree, condition)


def growth_exponent(series: GrowthSeries, order: int = 2) -> float:
    """
    Growth exponent D of value ~ C m^D: local log-log slopes between
    consecutive points, extrapolated to 1/m -> 0 by a polynomial in 1/m.
    """
    ms = np.array([float(m) for m, _ in series.points])
    logs = np.array([float(mpmath.log(_mpf(v))) for _, v in series.points])
    if np.any(ms <= 0):
        raise ValidationError("Growth exponents need positive abscissae")
    slopes = np.diff(logs) / np.diff(np.log(ms))
    midpoints = np.sqrt(ms[1:] * ms[:-1])
    order = min(order, len(slopes) - 1)
    coeffs = np.polyfit(1.0 / midpoints, slopes, order)
    return float(coeffs[-1])


@dataclass(frozen=True)
class LeadingCoefficientReport:
    """Fitted vs closed-form leading coefficient of m -> dim V(τ1 m ω1 + τ2 m ω2)."""
    tau: Tuple[int, int]
    degree: int
    fitted: mpmath.mpf
    formula: Fraction
    printed: Fraction
    relative_error: mpmath.mpf

    @property
    def printed_agrees(self) -> bool:
        return self.printed == self.formula

    def to_dict(self) -> dict:
        return {
            "tau": list(self.tau),
            "degree": self.degree,
            "fitted": mpmath.nstr(self.fitted, 30),
            "formula": str(self.formula),
            "printed": str(self.printed),
            "relative_error": mpmath.nstr(self.relative_error, 5),
            "printed_agrees": self.printed_agrees,
        }


def leading_coefficient_report(tau1: int, tau2: int, m_values: Sequence[int],
                               config: EngineConfig = DEFAULT_CONFIG) -> LeadingCoefficientReport:
    degree, formula = sl3_rank_leading_coefficient(tau1, tau2)
    points: List[Tuple[int, int]] = [(m, HighestWeight("A2", (tau1 * m, tau2 * m)).dimension()) for m in m_values]
    fit = fit_growth(GrowthSeries(tuple(points), degree), degree, terms=degree + 1, config=config)
    with mpmath.workdps(config.precision_digits):
        error = abs(fit.leading_coefficient - _mpf(formula)) / _mpf(formula)
    printed = sl3_printed_coefficient(tau1, tau2) if degree == 3 else formula
    if printed != formula:
        LOGGER.info("Cubic coefficient for (%d, %d): Weyl formula gives %s, alternative reading gives %s",
                    tau1, tau2, formula, printed)
    return LeadingCoefficientReport((tau1, tau2), degree, fit.leading_coefficient, formula, printed, error)
