from fractions import Fraction

import mpmath
import pytest

from torsion_growth.core.config import EngineConfig
from torsion_growth.core.errors import AcyclicityError, IllConditionedFitError, ValidationError
from torsion_growth.core.group_complex import cohomology, lens_complex
from torsion_growth.asymptotics.fitting import (
    GrowthSeries, fit_growth, growth_exponent, leading_coefficient_report,
)
from torsion_growth.asymptotics.predictions import (
    GeometryInput, PredictionStatus, compare_to_target, predict_liminf_bound, predict_sl3_torsion_growth,
    predict_so_torsion_growth, sl2_benchmark_prediction, sl3_degree3_target, so_constant_rational_factor,
    so_dominant_parity, so_torsion_constant,
)
from torsion_growth.representations.weights import (
    HighestWeight, a2_fundamental, so_module_rank, so_rank_degree,
)

UNIT = GeometryInput(1, 1)


def as_mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def close(a, b, digits=30):
    with mpmath.workdps(60):
        a, b = as_mpf(a), as_mpf(b)
        return abs(a - b) <= mpmath.mpf(10) ** (-digits) * max(1, abs(b))


# SO(p, q)

def test_so_constants():
    with mpmath.workdps(50):
        assert close(so_torsion_constant(3, 1, 1), -mpmath.pi)
        assert so_constant_rational_factor(3, 3) == 4
        assert close(so_torsion_constant(3, 3, 1), 4 * mpmath.pi)
        assert close(so_torsion_constant(3, 1, "1/2"), -2 * mpmath.pi)
        assert close(so_torsion_constant(5, 1, 2), mpmath.pi / 2)


@pytest.mark.parametrize("p, q", [(p, q) for p in range(3, 16, 2) for q in range(1, p + 1, 2)])
def test_so_sign_law(p, q):
    factor = so_constant_rational_factor(p, q)
    expected = -1 if ((p * q - 1) // 2) % 2 else 1
    assert factor * expected > 0
    assert so_dominant_parity(p, q) == ((p * q + 1) // 2) % 2


@pytest.mark.parametrize("p, q", [(2, 1), (3, 2), (1, 1), (3, 5), (0, 1)])
def test_invalid_signatures(p, q):
    with pytest.raises(ValidationError):
        so_constant_rational_factor(p, q)
    with pytest.raises(ValidationError):
        GeometryInput(1, 1, p, q)


def test_geometry_validation():
    with pytest.raises(ValidationError):
        GeometryInput(0, 1)
    with pytest.raises(ValidationError):
        GeometryInput(1, "x")
    with pytest.raises(ValidationError):
        GeometryInput(1, 1, 3, None)
    with pytest.raises(ValidationError):
        UNIT.n
    geom = GeometryInput("3/2", "0.5", 5, 3)
    assert geom.vol_x == Fraction(3, 2) and geom.vol_xd == Fraction(1, 2)
    assert geom.n == 3


def test_so_prediction_is_linear_in_volume_and_uses_the_rank():
    small = GeometryInput(1, 1, 3, 1)
    large = GeometryInput(2, 1, 3, 1)
    with mpmath.workdps(50):
        a = predict_so_torsion_growth(small, 2, 4)
        b = predict_so_torsion_growth(large, 2, 4)
        assert close(b, 2 * a)
        assert close(a, mpmath.pi * 4 * so_module_rank(1, 2, 4))
    with pytest.raises(ValidationError):
        predict_so_torsion_growth(small, 1, 1, n=2)
    with pytest.raises(ValidationError):
        predict_so_torsion_growth(UNIT, 1, 1)


@pytest.mark.parametrize("n, d", [(n, d) for n in (1, 2, 3) for d in (1, 2, 3)])
def test_so_rank_growth_exponent(n, d):
    series = GrowthSeries.from_function(lambda m: so_module_rank(n, d, m), range(10, 51))
    exponent = growth_exponent(series, order=3)
    degree = so_rank_degree(n, d)
    assert abs(exponent - degree) / degree < 0.01


# SL3

def test_sl3_prediction_for_fundamental_weights():
    with mpmath.workdps(50):
        first = predict_sl3_torsion_growth(UNIT, a2_fundamental(1), 1)
        assert first.status is PredictionStatus.OK
        assert first.constant == Fraction(4, 9)
        assert close(first.value, -4 * mpmath.pi / 3)
        for m in range(1, 11):
            one = predict_sl3_torsion_growth(UNIT, a2_fundamental(1), m)
            two = predict_sl3_torsion_growth(UNIT, a2_fundamental(2), m)
            assert close(one.value, two.value)
        doubled = predict_sl3_torsion_growth(GeometryInput(2, 1), a2_fundamental(1), 3)
        assert close(doubled.value, 2 * predict_sl3_torsion_growth(UNIT, a2_fundamental(1), 3).value)


def test_sl3_prediction_edge_cases():
    unsupported = predict_sl3_torsion_growth(UNIT, HighestWeight("A2", (1, 2)), 1)
    assert unsupported.status is PredictionStatus.UNSUPPORTED_CONSTANT
    assert unsupported.value is None
    assert not unsupported.is_supported
    with pytest.raises(AcyclicityError):
        predict_sl3_torsion_growth(UNIT, HighestWeight("A2", (2, 2)), 1)
    with pytest.raises(ValidationError):
        predict_sl3_torsion_growth(UNIT, HighestWeight("A1", (1,)), 1)
    with pytest.raises(ValidationError):
        predict_sl3_torsion_growth(UNIT, a2_fundamental(1), 0)


def test_liminf_bounds():
    with mpmath.workdps(50):
        sl3 = predict_liminf_bound("SL3", UNIT)
        assert close(sl3.value, 2 * mpmath.pi / 9)
        assert close(predict_liminf_bound("sl3", GeometryInput(2, 1)).value, 4 * mpmath.pi / 9)
        assert close(sl3.value, sl3_degree3_target(UNIT))
        so = predict_liminf_bound("SO", GeometryInput(1, 1, 3, 1))
        assert so.constant == 4
        assert close(so.value, 4 * mpmath.pi)
        assert so.value > 0
    assert predict_liminf_bound("SL3", UNIT, weight=HighestWeight("A2", (3, 1))).status is \
        PredictionStatus.UNSUPPORTED_CONSTANT
    with pytest.raises(ValidationError):
        predict_liminf_bound("SP4", UNIT)
    with pytest.raises(ValidationError):
        predict_liminf_bound("SO", UNIT)


def test_sl2_benchmark():
    with mpmath.workdps(50):
        assert close(sl2_benchmark_prediction(1, 3), 18 / mpmath.pi)
        assert close(sl2_benchmark_prediction("1/2", 2), 4 / mpmath.pi)
    with pytest.raises(ValidationError):
        sl2_benchmark_prediction(-1, 1)


def test_compare_to_target():
    comparison = compare_to_target(mpmath.mpf("1.01"), mpmath.mpf(1))
    assert comparison.within(0.02)
    assert not comparison.within(0.001)
    with pytest.raises(ValidationError):
        compare_to_target(mpmath.mpf(1), mpmath.mpf(0))


# Fits

def test_fit_recovers_quadratic_leading_coefficient():
    series = GrowthSeries.from_function(lambda m: 2 * m * m + 3 * m, range(1, 11), model_degree=2)
    result = fit_growth(series, terms=2)
    assert close(result.leading_coefficient, 2, digits=35)
    assert close(result.coefficients[1], 3, digits=35)
    assert result.residual < mpmath.mpf(10) ** -35


def test_fit_pure_monomial():
    series = GrowthSeries.from_function(lambda m: Fraction(7, 3) * m ** 3, range(1, 8), model_degree=3)
    result = fit_growth(series, 3, terms=1)
    assert close(result.leading_coefficient, Fraction(7, 3), digits=35)


def test_fit_with_noise_has_a_residual():
    values = [(m, 5 * m + (1 if m % 2 else -1)) for m in range(1, 21)]
    result = fit_growth(GrowthSeries(tuple(values)), 1, terms=2)
    assert abs(result.leading_coefficient - 5) < mpmath.mpf("0.05")
    assert result.residual > 0


def test_fit_ill_conditioned():
    series = GrowthSeries.from_function(lambda m: m ** 8, range(1, 11), model_degree=8)
    with pytest.raises(IllConditionedFitError):
        fit_growth(series, 8, terms=8, config=EngineConfig(precision_digits=15))


def test_fit_validation():
    with pytest.raises(ValidationError):
        GrowthSeries(((1, 1), (2, 2)))
    with pytest.raises(ValidationError):
        GrowthSeries(((1, 1), (3, 2), (2, 3)))
    series = GrowthSeries.from_function(lambda m: m, range(1, 4))
    with pytest.raises(ValidationError):
        fit_growth(series, 4, terms=2)
    with pytest.raises(ValidationError):
        fit_growth(series, 1, terms=0)


def test_growth_exponent_of_a_power():
    series = GrowthSeries.from_function(lambda m: 3 * m ** 2 + m, range(5, 40))
    assert abs(growth_exponent(series) - 2) < 1e-3


@pytest.mark.parametrize("tau", [(1, 1), (2, 1), (3, 2), (1, 0)])
def test_leading_coefficient_report(tau):
    report = leading_coefficient_report(*tau, range(1, 31))
    assert report.relative_error < 1e-6
    data = report.to_dict()
    assert data["tau"] == list(tau)
    assert data["formula"] == str(report.formula)


def test_printed_coefficient_disagrees_for_unequal_tau():
    assert leading_coefficient_report(1, 1, range(1, 31)).printed_agrees
    report = leading_coefficient_report(2, 1, range(1, 31))
    assert not report.printed_agrees
    assert report.formula == 3 and report.printed == 5


def test_lens_family_growth():
    points = []
    for p in range(3, 14):
        result = cohomology(*lens_complex(p, 1))
        points.append((p, result.alternating_product()))
    fit = fit_growth(GrowthSeries(tuple(points), 2), 2, terms=1)
    assert close(fit.leading_coefficient, 1, digits=30)
    assert fit.residual < mpmath.mpf(10) ** -30
