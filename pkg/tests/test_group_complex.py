import dataclasses
from math import gcd

import numpy as np
import pytest

from torsion_growth.core.config import EngineConfig
from torsion_growth.core.errors import CapacityError, ConsistencyError, ValidationError
from torsion_growth.core.exact_linalg import SparseIntMatrix, det_integer, inverse_unimodular
from torsion_growth.core.group_complex import (
    CochainComplex, CoeffModule, GroupPresentationData, GroupRingComplex, GroupRingElement, GroupRingMatrix,
    bar_complex, check_boundaries, cochain_cohomology, cohomology, cyclic_presentation, cyclotomic_module,
    direct_sum_module, invert_word, is_exact_over_q, is_rationally_acyclic, lens_complex, periodic_complex,
    reduce_word, regular_module, specialize, trivial_module,
)
from torsion_growth.torsion.torsion_engine import (
    change_basis, direct_sum_cochain, random_acyclic, random_unimodular,
)

ONE = GroupRingElement.one()
T = GroupRingElement.from_word((1,))


def summary(result, degrees=None):
    chosen = result.degrees if degrees is None else result.degrees[:degrees]
    return [(d.free_rank, d.elementary_divisors) for d in chosen]


# Words and group-ring arithmetic

def test_word_helpers():
    assert reduce_word((1, -1, 2, 3, -3)) == (2,)
    assert reduce_word((1, 2, -2, -1)) == ()
    assert invert_word((1, -2)) == (2, -1)
    with pytest.raises(ValidationError):
        reduce_word((1, 0))


def test_group_ring_arithmetic():
    norm = GroupRingElement.power_sum(1, range(5))
    assert (T - ONE) * norm == GroupRingElement({(1,) * 5: 1, (): -1})
    assert norm.augmentation() == 5
    assert (T - ONE).augmentation() == 0
    assert (T * GroupRingElement.from_word((-1,))) == ONE
    assert (T - T).is_zero()
    assert norm.scale(2).augmentation() == 10
    assert GroupRingElement.from_word((2, -3)).max_generator() == 3


# Presentations and modules

def test_cyclic_presentation_enumerates_its_elements(cyclic_5):
    elements = cyclic_5.enumerate_elements(12)
    assert len(elements) == 5
    assert elements[0][0] == ()
    assert [len(word) for word, _ in elements] == [0, 1, 2, 3, 4]
    with pytest.raises(CapacityError):
        cyclic_5.enumerate_elements(3)


def test_presentation_validation():
    with pytest.raises(ValidationError):
        GroupPresentationData((((2,),),))
    with pytest.raises(ValidationError):
        GroupPresentationData((((1, 1), (0, 1)), ((1,),)))
    with pytest.raises(ValidationError):
        GroupPresentationData((cyclic_presentation(5).generator_matrices[0],), relators=((1, 1, 1),))
    with pytest.raises(ValidationError):
        cyclic_presentation(5).evaluate((2,))


def test_module_validation():
    with pytest.raises(ValidationError):
        CoeffModule(2, (((1, 0), (0, 2)),))
    with pytest.raises(ValidationError):
        CoeffModule(1, (((-1,),),), relators=((1,),))
    with pytest.raises(ValidationError):
        direct_sum_module(trivial_module(1), trivial_module(2))


def test_coefficient_modules_hold_no_mutable_state():
    module = cyclotomic_module(5)
    assert [f.name for f in dataclasses.fields(module)] == ["rank", "action", "relators", "label"]
    block = module.contragredient(T - ONE)
    block[0, 0] = 99
    assert module.contragredient(T - ONE)[0, 0] != 99
    assert module == cyclotomic_module(5)
    assert hash(module) == hash(cyclotomic_module(5))


def test_regular_module_is_a_permutation_lattice():
    module = regular_module(cyclic_presentation(3))
    assert module.rank == 3
    (perm,) = module.action
    assert sorted(sum(row) for row in perm) == [1, 1, 1]
    result = cohomology(periodic_complex(3, 3), module)
    assert summary(result, 3) == [(1, ()), (0, ()), (0, ())]


# Specialization

def test_lens_coboundary_is_the_contragredient_of_t_minus_one(lens_5_1):
    cx, module = lens_5_1
    cc = specialize(cx, module)
    assert cc.dims == (4, 4, 4, 4)
    companion = [list(row) for row in cyclic_presentation(5).generator_matrices[0]]
    inverse = inverse_unimodular(companion)
    expected = [[inverse[j][i] - int(i == j) for j in range(4)] for i in range(4)]
    assert cc.coboundary(0).to_dense() == expected
    assert abs(det_integer(expected)) == 5
    assert cc.coboundary(1).is_zero()


def test_trivial_module_specializes_to_augmentations():
    cx = bar_complex(cyclic_presentation(3), 2)
    cc = specialize(cx, trivial_module(1))
    for q in (1, 2):
        d = cc.coboundary(q - 1)
        for j, row in enumerate(cx.boundary(q)):
            for k, element in enumerate(row):
                assert d.get(k, j) == element.augmentation()


def test_bar_complex_of_order_two():
    cx = bar_complex(cyclic_presentation(2), 2)
    assert cx.basis_sizes == (1, 1, 1)
    assert cx.boundary(1)[0][0] == T - ONE
    assert cx.boundary(2)[0][0] == T + ONE
    assert check_boundaries(cx, cyclic_presentation(2))


def test_bar_complex_caps():
    with pytest.raises(CapacityError):
        bar_complex(cyclic_presentation(3), 5)
    with pytest.raises(CapacityError):
        bar_complex(cyclic_presentation(13), 2)
    assert bar_complex(cyclic_presentation(13), 1, EngineConfig(max_group_order=13)).basis_sizes == (1, 12)


def test_inconsistent_complex_is_rejected():
    cx = GroupRingComplex((1, 1, 1), (((T - ONE,),), ((ONE,),)))
    with pytest.raises(ConsistencyError):
        specialize(cx, cyclotomic_module(3))
    with pytest.raises(ConsistencyError):
        check_boundaries(cx, cyclic_presentation(3))
    assert specialize(cx, cyclotomic_module(3), EngineConfig(check_dd=False)).dims == (2, 2, 2)


def test_boundary_checks_need_the_group_relations(lens_5_1):
    cx, _ = lens_5_1
    assert check_boundaries(cx, cyclic_presentation(5))
    with pytest.raises(ConsistencyError):
        check_boundaries(cx)


def test_shape_errors():
    with pytest.raises(ConsistencyError):
        GroupRingComplex((1, 2), (((T - ONE,),),))
    with pytest.raises(ConsistencyError):
        GroupRingComplex((1, 1), ())
    with pytest.raises(ConsistencyError):
        CochainComplex((1, 2), (SparseIntMatrix.zeros(1, 1),))
    with pytest.raises(ValidationError):
        specialize(lens_complex(5, 1)[0], trivial_module(0))


def test_boundaries_are_stored_sparsely():
    cx = GroupRingComplex((1, 2), ({(0, 1): T - ONE},))
    assert cx.boundary(1) == ((GroupRingElement.zero(), T - ONE),)
    assert cx.boundary_entries(1) == {(0, 1): T - ONE}
    assert cx.boundaries[0] == GroupRingMatrix.from_rows(((ONE - ONE, T - ONE),), 1, 2)
    with pytest.raises(ConsistencyError):
        GroupRingComplex((1, 2), ({(1, 0): T},))
    bar = bar_complex(cyclic_presentation(12), 4)
    assert bar.basis_sizes == (1, 11, 121, 1331, 14641)
    assert len(bar.boundary_entries(4)) <= 5 * 14641


def test_bar_complex_of_order_four_composes_to_zero():
    assert check_boundaries(bar_complex(cyclic_presentation(4), 3), cyclic_presentation(4))


# Cohomology

@pytest.mark.parametrize("p, q", [(p, q) for p in range(2, 14) for q in range(1, p) if gcd(p, q) == 1])
def test_lens_space_cohomology(p, q):
    cx, module = lens_complex(p, q)
    result = cohomology(cx, module)
    assert summary(result) == [(0, ()), (0, (p,)), (0, ()), (0, (p,))]
    assert result.alternating_product() == p * p
    assert is_rationally_acyclic(cx, module)


@pytest.mark.parametrize("p, q", [(1, 1), (4, 2), (6, 3)])
def test_lens_parameters_are_validated(p, q):
    with pytest.raises(ValidationError):
        lens_complex(p, q)


def test_lens_space_with_a_doubled_module():
    cx, module = lens_complex(5, 2)
    result = cohomology(cx, direct_sum_module(module, module))
    assert summary(result) == [(0, ()), (0, (5, 5)), (0, ()), (0, (5, 5))]


@pytest.mark.parametrize("p", [2, 3, 4, 5, 6])
def test_cyclic_group_with_integer_coefficients(p):
    result = cohomology(periodic_complex(p, 4), trivial_module(1))
    assert summary(result, 3) == [(1, ()), (0, ()), (0, (p,))]
    assert not is_rationally_acyclic(periodic_complex(p, 4), trivial_module(1))


@pytest.mark.parametrize("p", [2, 3, 4, 5, 6])
def test_bar_and_periodic_resolutions_agree_with_trivial_coefficients(p):
    gp = cyclic_presentation(p)
    bar = cohomology(bar_complex(gp, 3), trivial_module(1))
    periodic = cohomology(periodic_complex(p, 3), trivial_module(1))
    assert summary(bar, 3) == summary(periodic, 3)


@pytest.mark.parametrize("p", [2, 3, 4])
def test_bar_and_periodic_resolutions_agree_with_cyclotomic_coefficients(p):
    gp = cyclic_presentation(p)
    module = cyclotomic_module(p)
    bar = cohomology(bar_complex(gp, 3), module)
    periodic = cohomology(periodic_complex(p, 3), module)
    assert summary(bar, 3) == summary(periodic, 3)


def test_bar_complex_of_order_three_with_integer_coefficients():
    result = cohomology(bar_complex(cyclic_presentation(3), 3), trivial_module(1))
    assert summary(result, 3) == [(1, ()), (0, ()), (0, (3,))]


@pytest.mark.parametrize("p", range(7, 13))
def test_bar_and_periodic_resolutions_agree_to_degree_three(p):
    bar = cohomology(bar_complex(cyclic_presentation(p), 4), trivial_module(1), max_degree=3)
    periodic = cohomology(periodic_complex(p, 4), trivial_module(1), max_degree=3)
    assert summary(periodic) == [(1, ()), (0, ()), (0, (p,)), (0, ())]
    assert summary(bar) == summary(periodic)


def test_cohomology_up_to_a_degree():
    full = cohomology(periodic_complex(5, 4), trivial_module(1))
    capped = cohomology(periodic_complex(5, 4), trivial_module(1), max_degree=2)
    assert capped.degrees == full.degrees[:3]
    assert cohomology(periodic_complex(5, 2), trivial_module(1), max_degree=9).degrees == \
        cohomology(periodic_complex(5, 2), trivial_module(1)).degrees
    with pytest.raises(ValidationError):
        cohomology(periodic_complex(5, 2), trivial_module(1), max_degree=-1)


def test_cohomology_rejects_a_non_complex():
    d = SparseIntMatrix(1, 1, {(0, 0): 1})
    with pytest.raises(ConsistencyError):
        cochain_cohomology(CochainComplex((1, 1, 1), (d, d)))


def test_order_three_to_degree_three():
    gp = cyclic_presentation(3)
    module = cyclotomic_module(3)
    bar = cohomology(bar_complex(gp, 4), module)
    periodic = cohomology(periodic_complex(3, 4), module)
    assert summary(periodic, 4) == [(0, ()), (0, (3,)), (0, ()), (0, (3,))]
    assert summary(bar, 4) == summary(periodic, 4)


def test_single_cell_and_empty_complexes():
    point = GroupRingComplex((1,), ())
    result = cohomology(point, trivial_module(0))
    assert summary(result) == [(1, ())]
    assert str(result) == "H^0 = Z^1"
    assert not is_rationally_acyclic(point, trivial_module(0))
    empty = CochainComplex((), ())
    assert cochain_cohomology(empty).degrees == ()
    assert is_exact_over_q(empty)


def test_euler_characteristic_is_conserved(shape_factory):
    rng = np.random.default_rng(7)
    for seed in range(30):
        cc = direct_sum_cochain(random_acyclic(shape_factory(rng), seed),
                                CochainComplex((2, 1, 1), (SparseIntMatrix.zeros(1, 2), SparseIntMatrix.zeros(1, 1))))
        result = cochain_cohomology(cc)
        assert result.euler_characteristic() == cc.euler_characteristic() == 2
        assert result.free_ranks == [2, 1, 1] + [0] * (len(cc.dims) - 3)
    bar = specialize(bar_complex(cyclic_presentation(3), 3), trivial_module(1))
    assert cochain_cohomology(bar).euler_characteristic() == bar.euler_characteristic()


def test_cohomology_invariant_under_basis_change(rng, shape_factory):
    free_part = CochainComplex((1, 1), (SparseIntMatrix.zeros(1, 1),))
    for seed in range(100):
        cc = direct_sum_cochain(random_acyclic(shape_factory(rng), seed), free_part)
        degree = int(rng.integers(0, len(cc.dims)))
        u, _ = random_unimodular(cc.dims[degree], rng)
        moved = change_basis(cc, degree, u)
        moved.check_dd()
        assert cochain_cohomology(moved).degrees == cochain_cohomology(cc).degrees


def test_cohomology_printing():
    cx, module = lens_complex(7, 2)
    assert str(cohomology(cx, module)) == "H^0 = 0; H^1 = Z/7; H^2 = 0; H^3 = Z/7"
