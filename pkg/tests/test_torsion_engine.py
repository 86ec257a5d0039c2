from fractions import Fraction
from math import gcd

import numpy as np
import pytest

from torsion_growth.core.errors import AcyclicityError, InternalError, ValidationError
from torsion_growth.core.exact_linalg import SparseIntMatrix
from torsion_growth.core.group_complex import (
    CochainComplex, cochain_cohomology, lens_complex, specialize,
)
from torsion_growth.torsion.torsion_engine import (
    TorsionIdentityReport, TorsionValue, change_basis, direct_sum_cochain, elementary_expansion, laplacians,
    nonzero_part_determinant, random_acyclic, random_unimodular, reidemeister_torsion, verify_cochain_identity,
    verify_torsion_identity,
)


def single_map(n):
    return CochainComplex((1, 1), (SparseIntMatrix(1, 1, {(0, 0): n}),))


@pytest.mark.parametrize("n", [1, 2, 7, -6, 12])
def test_torsion_of_a_single_map(n):
    torsion = reidemeister_torsion(single_map(n))
    assert torsion.squared == n * n
    assert torsion.exact_value() == abs(n)
    assert verify_cochain_identity(single_map(n)).holds


def test_lens_space_torsion():
    cx, module = lens_complex(5, 1)
    report = verify_torsion_identity(cx, module)
    assert report.holds
    assert report.torsion.squared == 625
    assert str(report.torsion) == "T=25"


@pytest.mark.parametrize("p, q", [(p, q) for p in range(2, 14) for q in range(1, p) if gcd(p, q) == 1])
def test_lens_space_torsion_identity(p, q):
    cx, module = lens_complex(p, q)
    report = verify_torsion_identity(cx, module)
    assert report.holds
    assert report.cohomology_side == p * p
    assert report.torsion.exact_value() == p * p


def test_torsion_identity_on_random_acyclic_complexes(shape_factory):
    rng = np.random.default_rng(99)
    for seed in range(200):
        shape = shape_factory(rng)
        assert sum(shape) <= 40
        cc = random_acyclic(shape, seed)
        report = verify_cochain_identity(cc)
        assert report.holds, (shape, seed, str(report))
        report.raise_on_mismatch()


def test_random_acyclic_is_deterministic_and_exact():
    first = random_acyclic([2, 3, 1], seed=7)
    assert first == random_acyclic([2, 3, 1], seed=7)
    first.check_dd()
    result = cochain_cohomology(first)
    assert result.is_finite()
    assert random_acyclic([1, 1], seed=3).coboundary(0).nnz == 1


@pytest.mark.parametrize("shape", [[2, 1], [1, 2], [1, 2, 2], [3]])
def test_random_acyclic_rejects_infeasible_shapes(shape):
    with pytest.raises(ValidationError):
        random_acyclic(shape)


def test_random_acyclic_of_the_empty_shape():
    empty = random_acyclic([], seed=5)
    assert empty == CochainComplex((), ())
    assert reidemeister_torsion(empty).squared == 1


def test_torsion_needs_exactness_over_q():
    with pytest.raises(AcyclicityError):
        reidemeister_torsion(CochainComplex((1,), ()))
    with pytest.raises(AcyclicityError):
        reidemeister_torsion(CochainComplex((1, 1), (SparseIntMatrix.zeros(1, 1),)))


def test_empty_complex_has_unit_torsion():
    assert reidemeister_torsion(CochainComplex((), ())).squared == 1
    assert reidemeister_torsion(CochainComplex((0, 0), (SparseIntMatrix.zeros(0, 0),))).squared == 1


# Invariance

def test_torsion_invariant_under_basis_change(shape_factory):
    rng = np.random.default_rng(5)
    for seed in range(100):
        cc = random_acyclic(shape_factory(rng), seed)
        degree = int(rng.integers(0, len(cc.dims)))
        u, _ = random_unimodular(cc.dims[degree], rng)
        assert reidemeister_torsion(change_basis(cc, degree, u)) == reidemeister_torsion(cc)


def test_torsion_invariant_under_elementary_expansion(shape_factory):
    rng = np.random.default_rng(6)
    for seed in range(100):
        cc = random_acyclic(shape_factory(rng), seed)
        degree = int(rng.integers(0, cc.top_degree))
        sign = 1 if seed % 2 else -1
        expanded = elementary_expansion(cc, degree, sign)
        assert reidemeister_torsion(expanded) == reidemeister_torsion(cc)
        assert verify_cochain_identity(expanded).holds


def test_torsion_multiplicative_under_direct_sum(shape_factory):
    rng = np.random.default_rng(8)
    for seed in range(100):
        a = random_acyclic(shape_factory(rng), seed)
        b = random_acyclic(shape_factory(rng), seed + 1000)
        assert reidemeister_torsion(direct_sum_cochain(a, b)) == reidemeister_torsion(a) * reidemeister_torsion(b)


def test_expansion_degree_is_checked():
    with pytest.raises(ValidationError):
        elementary_expansion(single_map(2), 1)
    with pytest.raises(ValidationError):
        elementary_expansion(single_map(2), 0, sign=2)


def test_random_unimodular_inverse(rng):
    for n in range(0, 6):
        u, u_inv = random_unimodular(n, rng)
        product = [[sum(u[i][k] * u_inv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        assert product == [[int(i == j) for j in range(n)] for i in range(n)]


# Laplacians and values

def test_laplacians_of_lens_space():
    cx, module = lens_complex(3, 1)
    deltas = laplacians(specialize(cx, module))
    assert len(deltas) == 4
    assert all(len(delta) == 2 for delta in deltas)
    assert all(delta[i][j] == delta[j][i] for delta in deltas for i in range(2) for j in range(2))


@pytest.mark.parametrize("delta, det", [
    ([[2, 0], [0, 0]], Fraction(2)),
    ([[1, 1], [1, 1]], Fraction(2)),
    ([[0, 0], [0, 0]], Fraction(1)),
    ([[2, 1], [1, 2]], Fraction(3)),
    ([], Fraction(1)),
])
def test_nonzero_part_determinant(delta, det):
    assert nonzero_part_determinant(delta) == det


def test_torsion_value():
    assert TorsionValue(Fraction(4, 9)).exact_value() == Fraction(2, 3)
    assert TorsionValue(2).exact_value() is None
    assert str(TorsionValue(2)) == "T^2=2"
    assert TorsionValue(4).log_decimal(15).startswith("0.69314718055994")
    assert TorsionValue(2) * TorsionValue(8) == TorsionValue(16)
    with pytest.raises(ValidationError):
        TorsionValue(0)


def test_identity_report_raises_on_mismatch():
    cc = single_map(3)
    report = TorsionIdentityReport(cochain_cohomology(cc), TorsionValue(4), Fraction(3))
    assert not report.holds
    assert "FAILS" in str(report)
    with pytest.raises(InternalError):
        report.raise_on_mismatch()
