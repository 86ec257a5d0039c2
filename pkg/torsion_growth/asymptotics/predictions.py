# asymptotics/predictions.py
"""
Closed-form growth predictions for torsion in the cohomology of arithmetic
groups: the SO(p, q) constant and leading term, the SL3 leading term with
its weight constant, lower bounds on the liminf of torsion sums, and the
SL2 benchmark.

Volumes are user inputs; real outputs are mpmath numbers at the configured
precision, and every rational ingredient (binomials, ranks) stays exact.
"""

# Standard Imports
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Optional, Union
# Third-party Imports
import mpmath
# Local Imports
from ..core.config import DEFAULT_CONFIG, EngineConfig
from ..core.errors import AcyclicityError, ValidationError
from ..representations.weights import (
    HighestWeight, a2_fundamental, is_theta_fixed, so_module_rank, so_rank_leading_coefficient, weyl_dim,
    RootSystemData,
)

Real = Union[int, str, Fraction, float]

# C(Λ) is only known for the two fundamental weights.
FUNDAMENTAL_WEIGHT_CONSTANT = Fraction(4, 9)


def _to_fraction(value: Real, name: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ValidationError(f"{name} must be a real number, got {value!r}")


def _mpf(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / value.denominator


@dataclass(frozen=True)
class GeometryInput:
    """Volumes of the locally symmetric space and of the compact dual, plus the SO(p, q) signature."""
    vol_x: Fraction
    vol_xd: Fraction
    p: Optional[int] = None
    q: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "vol_x", _to_fraction(self.vol_x, "vol_x"))
        object.__setattr__(self, "vol_xd", _to_fraction(self.vol_xd, "vol_xd"))
        if self.vol_x <= 0 or self.vol_xd <= 0:
            raise ValidationError("Volumes must be positive")
        if (self.p is None) != (self.q is None):
            raise ValidationError("Give both p and q or neither")
        if self.p is not None:
            _check_signature(self.p, self.q)

    def __str__(self) -> str:
        sig = f", (p,q)=({self.p},{self.q})" if self.p is not None else ""
        return f"vol(X)={self.vol_x}, vol(Xd)={self.vol_xd}{sig}"

    @property
    def n(self) -> int:
        """The n with p + q = 2n + 2."""
        if self.p is None:
            raise ValidationError("No SO(p, q) signature given")
        return (self.p + self.q) // 2 - 1


def _check_signature(p: int, q: int) -> None:
    if p % 2 == 0 or q % 2 == 0:
        raise ValidationError(f"p and q must be odd, got ({p}, {q})")
    if not (p >= q >= 1 and p > 1):
        raise ValidationError(f"Need p >= q >= 1 and p > 1, got ({p}, {q})")


class PredictionStatus(str, Enum):
    OK = "ok"
    UNSUPPORTED_CONSTANT = "unsupported_constant"


@dataclass(frozen=True)
class Prediction:
    """A predicted value, or the typed statement that no closed-form constant is known."""
    status: PredictionStatus
    value: Optional[mpmath.mpf] = None
    constant: Optional[Fraction] = None
    detail: str = ""

    @property
    def is_supported(self) -> bool:
        return self.status is PredictionStatus.OK

    def __str__(self) -> str:
        if not self.is_supported:
            return f"{self.status.value}: {self.detail}"
        return mpmath.nstr(self.value, 20)


def so_constant_rational_factor(p: int, q: int) -> int:
    """(-1)^((pq-1)/2) · 2^ε(q) · binom(n, (p-1)/2), the factor of π / vol(Xd)."""
    _check_signature(p, q)
    n = (p + q) // 2 - 1
    epsilon = 0 if q == 1 else 1
    sign = -1 if ((p * q - 1) // 2) % 2 else 1
    return sign * 2 ** epsilon * comb(n, (p - 1) // 2)


def so_torsion_constant(p: int, q: int, vol_xd: Real, config: EngineConfig = DEFAULT_CONFIG) -> mpmath.mpf:
    vol = _to_fraction(vol_xd, "vol_xd")
    if vol <= 0:
        raise ValidationError("vol_xd must be positive")
    factor = so_constant_rational_factor(p, q)
    with mpmath.workdps(config.precision_digits):
        return +(factor * mpmath.pi / _mpf(vol))


def so_dominant_parity(p: int, q: int) -> int:
    """Parity of the degrees whose torsion sums are bounded below: (pq + 1)/2 mod 2."""
    _check_signature(p, q)
    return ((p * q + 1) // 2) % 2


def predict_so_torsion_growth(geom: GeometryInput, d: int, m: int, n: Optional[int] = None,
                              config: EngineConfig = DEFAULT_CONFIG) -> mpmath.mpf:
    """Leading term -C_{p,q} · vol(X) · m · rk(M_m) of the alternating sum of log |H^j|."""
    if geom.p is None:
        raise ValidationError("SO predictions need the signature (p, q)")
    if n is not None and n != geom.n:
        raise ValidationError(f"n={n} does not match p + q = {geom.p + geom.q}")
    rank = so_module_rank(geom.n, d, m)
    with mpmath.workdps(config.precision_digits):
        c = so_torsion_constant(geom.p, geom.q, geom.vol_xd, config)
        return +(-c * _mpf(geom.vol_x) * m * rank)


def _sl3_constant(weight: HighestWeight) -> Optional[Fraction]:
    if weight in (a2_fundamental(1), a2_fundamental(2)):
        return FUNDAMENTAL_WEIGHT_CONSTANT
    return None


def _check_sl3_weight(weight: HighestWeight) -> None:
    if weight.root_system != "A2":
        raise ValidationError(f"SL3 predictions need an A2 weight, got {weight}")
    if is_theta_fixed(weight):
        raise AcyclicityError(f"{weight} is fixed by the Cartan involution; the modules are not acyclic")


def predict_sl3_torsion_growth(geom: GeometryInput, weight: HighestWeight, m: int,
                               config: EngineConfig = DEFAULT_CONFIG) -> Prediction:
    """-π · vol(X)/vol(Xd) · C(Λ) · m · dim V(mΛ), with C(Λ) known for ω1 and ω2 only."""
    _check_sl3_weight(weight)
    if m < 1:
        raise ValidationError(f"m must be >= 1, got {m}")
    constant = _sl3_constant(weight)
    if constant is None:
        return Prediction(PredictionStatus.UNSUPPORTED_CONSTANT,
                          detail=f"no closed form for C({weight}); only the fundamental weights have one")
    dim = weyl_dim(RootSystemData.a2(), weight.scaled(m))
    with mpmath.workdps(config.precision_digits):
        value = -mpmath.pi * _mpf(geom.vol_x / geom.vol_xd * constant) * m * dim
        return Prediction(PredictionStatus.OK, +value, constant)


def predict_liminf_bound(kind: str, geom: GeometryInput, d: int = 1, weight: Optional[HighestWeight] = None,
                         config: EngineConfig = DEFAULT_CONFIG) -> Prediction:
    """
    Lower bound for the liminf of the normalized torsion sum over the dominant degrees.

    SL3: half the leading constant, π C(Λ) vol(X) / (2 vol(Xd)), i.e. 2π vol(X)/(9 vol(Xd)) for
    fundamental weights, normalized by m · dim V(mΛ).
    SO: |C_{p,q}| · vol(X) · d · (2L)^d, normalized by m^(d n(n+1)/2 + 1), where d (2L)^d is the
    exact leading coefficient of the rank polynomial.
    """
    match kind.upper():
        case "SL3":
            weight = weight or a2_fundamental(1)
            _check_sl3_weight(weight)
            constant = _sl3_constant(weight)
            if constant is None:
                return Prediction(PredictionStatus.UNSUPPORTED_CONSTANT,
                                  detail=f"no closed form for C({weight})")
            with mpmath.workdps(config.precision_digits):
                value = mpmath.pi * _mpf(constant * geom.vol_x / geom.vol_xd) / 2
                return Prediction(PredictionStatus.OK, +value, constant)
        case "SO":
            if geom.p is None:
                raise ValidationError("SO bounds need the signature (p, q)")
            leading = so_rank_leading_coefficient(geom.n, d)
            with mpmath.workdps(config.precision_digits):
                c = abs(so_torsion_constant(geom.p, geom.q, geom.vol_xd, config))
                return Prediction(PredictionStatus.OK, +(c * _mpf(geom.vol_x * leading)), Fraction(leading))
        case _:
            raise ValidationError(f"Unknown bound kind {kind!r}; use SO or SL3")


def sl2_benchmark_prediction(vol_x: Real, k: int, config: EngineConfig = DEFAULT_CONFIG) -> mpmath.mpf:
    """(2/π) · vol(X) · k², the growth of log |H^2| for hyperbolic 3-manifolds with Sym^(2k) coefficients."""
    vol = _to_fraction(vol_x, "vol_x")
    if vol <= 0:
        raise ValidationError("vol_x must be positive")
    with mpmath.workdps(config.precision_digits):
        return +(2 * _mpf(vol) * k * k / mpmath.pi)


def sl3_degree3_target(geom: GeometryInput, config: EngineConfig = DEFAULT_CONFIG) -> mpmath.mpf:
    """Target 2π vol(X) / (9 vol(Xd)) for the degree-3 torsion of fundamental-weight modules."""
    with mpmath.workdps(config.precision_digits):
        return +(2 * mpmath.pi * _mpf(geom.vol_x / geom.vol_xd) / 9)


@dataclass(frozen=True)
class TargetComparison:
    fitted: mpmath.mpf
    target: mpmath.mpf
    relative_error: mpmath.mpf

    def within(self, tolerance: float) -> bool:
        return self.relative_error <= tolerance


def compare_to_target(fitted: mpmath.mpf, target: mpmath.mpf,
                      config: EngineConfig = DEFAULT_CONFIG) -> TargetComparison:
    with mpmath.workdps(config.precision_digits):
        fitted, target = mpmath.mpf(fitted), mpmath.mpf(target)
        if target == 0:
            raise ValidationError("Cannot compare against a zero target")
        return TargetComparison(fitted, target, abs(fitted - target) / abs(target))
