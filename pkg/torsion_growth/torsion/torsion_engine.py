# torsion/torsion_engine.py
"""
Reidemeister torsion of a based cochain complex that is exact over Q, by
combinatorial Laplacians:

    T^2 = Π_q det'(Δ_q)^((-1)^(q+1) q),   Δ_q = D_q^T D_q + D_{q-1} D_{q-1}^T

where det' is the determinant on the image of Δ_q. Nothing here calls the
Smith form, so comparing T with the alternating product of cohomology orders
is a genuine two-route check.
"""

# Standard Imports
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple
# Third-party Imports
import mpmath
import numpy as np
# Local Imports
from ..core.config import DEFAULT_CONFIG, EngineConfig
from ..core.errors import AcyclicityError, InternalError, ValidationError
from ..core.exact_linalg import (
    DenseMatrix, SparseIntMatrix, det_integer, det_rational, independent_columns, inverse_unimodular,
)
from ..core.group_complex import (
    CochainComplex, CoeffModule, CohomologyResult, GroupRingComplex, cochain_cohomology, is_exact_over_q,
    specialize,
)

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class TorsionValue:
    """Torsion T > 0 stored exactly as T^2."""
    squared: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "squared", Fraction(self.squared))
        if self.squared <= 0:
            raise ValidationError(f"Torsion squared must be positive, got {self.squared}")

    def __str__(self) -> str:
        exact = self.exact_value()
        return f"T={exact}" if exact is not None else f"T^2={self.squared}"

    def __mul__(self, other: "TorsionValue") -> "TorsionValue":
        return TorsionValue(self.squared * other.squared)

    def exact_value(self) -> Optional[Fraction]:
        """T itself when T^2 is the square of a rational, else None."""
        num, den = self.squared.numerator, self.squared.denominator
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
        return None

    def log_value(self, digits: int = DEFAULT_CONFIG.precision_digits) -> mpmath.mpf:
        with mpmath.workdps(digits + 10):
            return (mpmath.log(self.squared.numerator) - mpmath.log(self.squared.denominator)) / 2

    def log_decimal(self, digits: int = DEFAULT_CONFIG.precision_digits) -> str:
        """log T to `digits` significant digits."""
        with mpmath.workdps(digits + 10):
            return mpmath.nstr(self.log_value(digits), digits)


def _add_gram(delta: DenseMatrix, rows: Dict[int, Dict[int, int]]) -> None:
    """delta += Σ_r outer(row_r, row_r)."""
    for row in rows.values():
        items = list(row.items())
        for c1, v1 in items:
            target = delta[c1]
            for c2, v2 in items:
                target[c2] += v1 * v2


def laplacians(cc: CochainComplex) -> List[DenseMatrix]:
    """Δ_q for every degree, as dense integer matrices."""
    out = []
    for q, n in enumerate(cc.dims):
        delta = [[0] * n for _ in range(n)]
        if q < len(cc.coboundaries):
            _add_gram(delta, cc.coboundaries[q].row_dicts())
        if q > 0:
            _add_gram(delta, cc.coboundaries[q - 1].transpose().row_dicts())
        out.append(delta)
    return out


def nonzero_part_determinant(delta: DenseMatrix) -> Fraction:
    """
    det of a symmetric matrix restricted to its image: det(B^T Δ B) / det(B^T B)
    for the columns B of Δ picked by left-to-right pivoting.
    """
    n = len(delta)
    if n == 0:
        return Fraction(1)
    pivots = independent_columns(delta, n)
    if not pivots:
        return Fraction(1)
    if len(pivots) == n:
        return Fraction(det_integer(delta))
    basis = np.array([[delta[r][c] for c in pivots] for r in range(n)], dtype=object)
    sym = np.array(delta, dtype=object)
    restricted = basis.T.dot(sym).dot(basis)
    gram = basis.T.dot(basis)
    return det_rational(restricted.tolist()) / det_rational(gram.tolist())


def reidemeister_torsion(cc: CochainComplex, config: EngineConfig = DEFAULT_CONFIG) -> TorsionValue:
    if not is_exact_over_q(cc):
        raise AcyclicityError(f"{cc} is not exact over Q; torsion is undefined")
    squared = Fraction(1)
    for q, delta in enumerate(laplacians(cc)):
        if q == 0:
            continue
        det = nonzero_part_determinant(delta)
        if det <= 0:
            raise InternalError(f"Laplacian determinant {det} in degree {q} is not positive")
        exponent = q if q % 2 else -q
        squared *= det ** exponent
        LOGGER.debug("Degree %d: det'(Δ) has %d bits", q, det.numerator.bit_length())
    return TorsionValue(squared)


@dataclass(frozen=True)
class TorsionIdentityReport:
    """Both sides of T = Π |H^q|^((-1)^(q+1)) for one complex."""
    cohomology: CohomologyResult
    torsion: TorsionValue
    cohomology_side: Fraction

    @property
    def holds(self) -> bool:
        return self.torsion.squared == self.cohomology_side ** 2

    def raise_on_mismatch(self) -> None:
        if not self.holds:
            raise InternalError(f"Torsion {self.torsion} differs from the cohomology product "
                                f"{self.cohomology_side}")

    def __str__(self) -> str:
        verdict = "holds" if self.holds else "FAILS"
        return f"{self.torsion} vs {self.cohomology_side}: {verdict}"


def verify_cochain_identity(cc: CochainComplex, config: EngineConfig = DEFAULT_CONFIG) -> TorsionIdentityReport:
    torsion = reidemeister_torsion(cc, config)
    result = cochain_cohomology(cc, config)
    report = TorsionIdentityReport(result, torsion, result.alternating_product())
    if not report.holds:
        LOGGER.error("Torsion identity mismatch on %s: %s", cc, report)
    return report


def verify_torsion_identity(cx: GroupRingComplex, m: CoeffModule,
                            config: EngineConfig = DEFAULT_CONFIG) -> TorsionIdentityReport:
    return verify_cochain_identity(specialize(cx, m, config), config)


# Generators and invariance moves

def random_unimodular(n: int, rng: np.random.Generator, steps: Optional[int] = None,
                      bound: int = 2) -> Tuple[DenseMatrix, DenseMatrix]:
    """A random n x n unimodular matrix with its inverse, as a product of elementary moves."""
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    u_inv = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return u, u_inv
    for _ in range(2 * n if steps is None else steps):
        move = int(rng.integers(0, 4))
        i, j = (int(x) for x in rng.integers(0, n, size=2))
        if move == 0 or i == j:
            # negate row i
            u[i] = [-x for x in u[i]]
            for row in u_inv:
                row[i] = -row[i]
            continue
        if move == 1:
            u[i], u[j] = u[j], u[i]
            for row in u_inv:
                row[i], row[j] = row[j], row[i]
            continue
        c = int(rng.integers(1, bound + 1)) * (1 if rng.integers(0, 2) else -1)
        # row_i += c row_j on u; column_j -= c column_i on the inverse
        u[i] = [a + c * b for a, b in zip(u[i], u[j])]
        for row in u_inv:
            row[j] -= c * row[i]
    return u, u_inv


def _dense_mul(a: DenseMatrix, b: DenseMatrix, cols: int) -> DenseMatrix:
    return [[sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols)] for row in a]


def _conjugate(d: SparseIntMatrix, left: DenseMatrix, right: DenseMatrix) -> SparseIntMatrix:
    middle = _dense_mul(d.to_dense(), right, d.cols)
    return SparseIntMatrix.from_dense(_dense_mul(left, middle, d.cols), d.cols)


def random_acyclic(shape: Sequence[int], seed: int = 0, max_diagonal: int = 6) -> CochainComplex:
    """
    Split exact model C^q = Z^(k_{q-1}) + Z^(k_q), D_q mapping the second
    summand onto the first summand of C^(q+1) by a random nonzero diagonal,
    then conjugated degreewise by random unimodular matrices. The empty shape
    gives the empty complex.
    """
    dims = [int(r) for r in shape]
    if not dims:
        return CochainComplex((), ())
    ranks = []
    previous = 0
    for r in dims:
        k = r - previous
        if k < 0:
            raise ValidationError(f"Shape {dims} admits no exact complex")
        ranks.append(k)
        previous = k
    if ranks[-1] != 0:
        raise ValidationError(f"Shape {dims} has nonzero alternating sum; no exact complex exists")
    rng = np.random.default_rng(seed)
    bases = [random_unimodular(n, rng) for n in dims]
    coboundaries = []
    for q in range(len(dims) - 1):
        offset = ranks[q - 1] if q > 0 else 0
        entries = {}
        for i in range(ranks[q]):
            value = int(rng.integers(1, max_diagonal + 1)) * (1 if rng.integers(0, 2) else -1)
            entries[(i, offset + i)] = value
        model = SparseIntMatrix(dims[q + 1], dims[q], entries)
        coboundaries.append(_conjugate(model, bases[q + 1][0], bases[q][1]))
    return CochainComplex(tuple(dims), tuple(coboundaries))


def change_basis(cc: CochainComplex, degree: int, u: Sequence[Sequence[int]]) -> CochainComplex:
    """Replace the preferred basis of C^degree by its image under a unimodular u."""
    n = cc.dims[degree]
    u = [list(map(int, row)) for row in u]
    if len(u) != n:
        raise ValidationError(f"Basis change of size {len(u)} in a degree of dimension {n}")
    u_inv = inverse_unimodular(u)
    coboundaries = list(cc.coboundaries)
    if degree < len(coboundaries):
        d = coboundaries[degree]
        identity_left = [[int(i == j) for j in range(d.rows)] for i in range(d.rows)]
        coboundaries[degree] = _conjugate(d, identity_left, u)
    if degree > 0:
        d = coboundaries[degree - 1]
        identity_right = [[int(i == j) for j in range(d.cols)] for i in range(d.cols)]
        coboundaries[degree - 1] = _conjugate(d, u_inv, identity_right)
    return CochainComplex(cc.dims, tuple(coboundaries))


def elementary_expansion(cc: CochainComplex, degree: int, sign: int = 1) -> CochainComplex:
    """Add x in C^degree and y in C^(degree+1) with D x = sign * y."""
    if abs(sign) != 1:
        raise ValidationError("Elementary expansions use a unit pivot")
    if not 0 <= degree < cc.top_degree:
        raise ValidationError(f"Expansion degree {degree} outside 0..{cc.top_degree - 1}")
    dims = list(cc.dims)
    dims[degree] += 1
    dims[degree + 1] += 1
    coboundaries = []
    for q, d in enumerate(cc.coboundaries):
        entries: Dict[Tuple[int, int], int] = dict(d.entries)
        if q == degree:
            entries[(d.rows, d.cols)] = sign
        coboundaries.append(SparseIntMatrix(dims[q + 1], dims[q], entries))
    return CochainComplex(tuple(dims), tuple(coboundaries))


def direct_sum_cochain(first: CochainComplex, second: CochainComplex) -> CochainComplex:
    length = max(len(first.dims), len(second.dims))
    a_dims = list(first.dims) + [0] * (length - len(first.dims))
    b_dims = list(second.dims) + [0] * (length - len(second.dims))
    coboundaries = []
    for q in range(length - 1):
        a = first.coboundary(q) if q + 1 < len(first.dims) else SparseIntMatrix.zeros(a_dims[q + 1], a_dims[q])
        b = second.coboundary(q) if q + 1 < len(second.dims) else SparseIntMatrix.zeros(b_dims[q + 1], b_dims[q])
        coboundaries.append(a.direct_sum(b))
    return CochainComplex(tuple(x + y for x, y in zip(a_dims, b_dims)), tuple(coboundaries))
