"""Tests for binomials, fibers, Graver bases and Gröbner bases of code matrices."""

import random
from fractions import Fraction

import pytest

from app.core.codes import disjoint_curves_code, nested_curves_code, pair_code, star_code
from app.core.exactgeom import IntMatrix
from app.core.toric import (
    Binomial,
    MonomialIdeal,
    WeightOrder,
    claimed_ugb_pair,
    claimed_ugb_star,
    code_matrix,
    default_degree_bound,
    degree_census,
    fiber,
    generated_in_degree,
    graver,
    graver_equals_ugb,
    graver_with_certificate,
    has_consecutive_ones,
    initial_ideal,
    inversions,
    is_homogeneous,
    is_lawrence,
    is_totally_unimodular,
    is_unimodular,
    lawrence,
    monomials_of_degree,
    permutation_weight,
    reduce,
    reduced_gb,
    row_transform_star,
    satisfies_buchberger_criterion,
    toric_ideal_is_zero,
    ugb,
    weighted_grevlex_degree_check,
)
from app.exceptions import DeskScaleError, InhomogeneousMatrixError

STAR_2 = Binomial((1, -1, -1, 1))


def unit_vector(size, *indices):
    vector = [0] * size
    for i in indices:
        vector[i - 1] += 1
    return tuple(vector)


def test_binomial_parts_and_text():
    b = Binomial.from_terms(4, (1, 4), (2, 3))
    assert b == STAR_2
    assert b.plus == (1, 0, 0, 1)
    assert b.minus == (0, 1, 1, 0)
    assert b.degree == 2
    assert str(b) == "t1*t4 - t2*t3"
    assert (-b).canonical() == b
    with pytest.raises(ValueError):
        Binomial((0, 0))


def test_grevlex_tiebreak():
    order = WeightOrder()
    assert order.greater((0, 1, 1, 0), (1, 0, 0, 1))
    assert order.greater((2, 0), (0, 1))
    assert STAR_2.oriented(order) == -STAR_2
    assert STAR_2.oriented(WeightOrder.of((2, 1, 1, 2))) == STAR_2


def test_monomial_ideal_minimalizes():
    ideal = MonomialIdeal.from_generators([(1, 1), (1, 0), (2, 0)])
    assert ideal.generators == {(1, 0)}
    assert ideal.contains((3, 2))
    assert not ideal.contains((0, 5))
    assert ideal.degree_part_sum(2, 2) == (3, 1)


def test_monomials_of_degree():
    assert sorted(monomials_of_degree(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(monomials_of_degree(0, 0)) == [()]


def test_code_matrix_columns():
    matrix = code_matrix(star_code(2))
    assert matrix.entries == ((1, 1, 0, 0), (1, 0, 1, 0), (1, 1, 1, 1))
    assert code_matrix(pair_code(1)).entries == ((1, 1, 0, 0), (0, 1, 1, 0), (1, 1, 1, 1))


def test_homogeneity_witness():
    assert is_homogeneous(code_matrix(star_code(2))) == (Fraction(0), Fraction(0), Fraction(1))
    assert is_homogeneous(IntMatrix.from_rows([[1, 2]])) is None


def test_lawrence_lifting():
    lifted = lawrence(IntMatrix.from_rows([[1, 1]]))
    assert lifted.entries == ((1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1))
    assert is_lawrence(lifted)
    assert not is_lawrence(code_matrix(star_code(2)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_row_transform_star_is_lawrence(n):
    transformed = row_transform_star(code_matrix(star_code(n)))
    assert transformed == lawrence(IntMatrix.from_rows([[1] * n]))


def test_row_transform_star_rejects_other_matrices():
    with pytest.raises(ValueError):
        row_transform_star(code_matrix(pair_code(1)))
    with pytest.raises(ValueError):
        row_transform_star(IntMatrix.from_rows([[1, 1, 1]]))


def test_consecutive_ones():
    assert has_consecutive_ones(code_matrix(pair_code(3)))
    assert not has_consecutive_ones(code_matrix(star_code(3)))
    with pytest.raises(ValueError):
        has_consecutive_ones(IntMatrix.from_rows([[2, 0]]))


def test_total_unimodularity():
    cycle = IntMatrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert not is_totally_unimodular(cycle)
    assert not is_totally_unimodular(IntMatrix.from_rows([[1, 1], [1, -1]]))
    assert is_totally_unimodular(IntMatrix.identity(3))
    assert is_totally_unimodular(code_matrix(pair_code(2)), brute_force=True)


def test_total_unimodularity_guard(guard):
    guard("tu_bruteforce_max_cols", 3)
    with pytest.raises(DeskScaleError):
        is_totally_unimodular(code_matrix(star_code(2)))


def test_unimodularity():
    assert is_unimodular(code_matrix(pair_code(2)))
    assert is_unimodular(code_matrix(star_code(3)))
    assert not is_unimodular(IntMatrix.from_rows([[1, 1, 1], [0, 1, 2]]))


def test_zero_toric_ideal():
    assert toric_ideal_is_zero(code_matrix(disjoint_curves_code(3)))
    assert toric_ideal_is_zero(code_matrix(nested_curves_code(3)))
    assert not toric_ideal_is_zero(code_matrix(star_code(2)))


def test_fiber():
    matrix = code_matrix(star_code(2))
    assert fiber(matrix, (1, 1, 2)) == {(1, 0, 0, 1), (0, 1, 1, 0)}
    assert fiber(matrix, (1, 0, 1)) == {(0, 1, 0, 0)}
    assert fiber(matrix, (0, 0, 0)) == {(0, 0, 0, 0)}


def test_fiber_rejects_inhomogeneous_matrix():
    with pytest.raises(InhomogeneousMatrixError):
        fiber(IntMatrix.from_rows([[1, 2]]), (2,))
    with pytest.raises(InhomogeneousMatrixError):
        graver(IntMatrix.from_rows([[1, 2]]), 3)


def test_graver_of_small_codes():
    elements, certified = graver_with_certificate(code_matrix(star_code(2)), 4)
    assert elements == {STAR_2}
    assert certified
    assert graver(code_matrix(pair_code(1)), 4) == claimed_ugb_pair(1)


def test_graver_at_low_bound_is_not_certified():
    elements, certified = graver_with_certificate(code_matrix(star_code(2)), 2)
    assert elements == {STAR_2}
    assert not certified


def test_graver_of_twisted_cubic():
    matrix = IntMatrix.from_rows([[3, 2, 1, 0], [0, 1, 2, 3]])
    elements = graver(matrix, 4)
    assert degree_census(elements)[2] == 3
    assert Binomial.from_terms(4, (1, 3), (2, 2)).canonical() in elements


def test_claimed_bases():
    assert len(claimed_ugb_star(3)) == 3
    assert len(claimed_ugb_star(4)) == 6
    assert degree_census(claimed_ugb_pair(3)) == {2: 3, 3: 3}
    assert default_degree_bound(claimed_ugb_pair(2)) == 8
    assert Binomial.from_terms(6, (1, 6), (3, 4)).canonical() in claimed_ugb_star(3)


def test_inversions_and_weights():
    assert inversions((2, 3, 1)) == {(1, 3), (2, 3)}
    assert inversions((1, 2, 3)) == set()
    assert permutation_weight((2, 3, 1)) == (2, 3, 1, 2, 1, 3)


def test_reduce():
    order = WeightOrder()
    assert reduce(STAR_2, [STAR_2], order) is None
    assert reduce(Binomial.from_terms(4, (1,), (2,)), [STAR_2], order) == Binomial((1, -1, 0, 0))
    # t2*t3*t1 - t1*t1*t4 cancels to a multiple of the generator
    assert reduce(Binomial.from_monomials((1, 1, 1, 0), (2, 0, 0, 1)), [STAR_2], order) is None


def test_reduced_gb_under_weight():
    basis = reduced_gb([STAR_2], WeightOrder.of((2, 1, 1, 2)))
    assert basis.binomials == (STAR_2,)
    assert basis.leading_terms() == [(1, 0, 0, 1)]
    assert basis.reduced


@pytest.mark.parametrize("permutation,leads", [
    ((3, 2, 1), [(1, 5), (1, 6), (2, 6)]),
    ((1, 2, 3), [(2, 4), (3, 4), (3, 5)]),
])
def test_initial_ideal_of_star_code(permutation, leads):
    order = WeightOrder.of(permutation_weight(permutation))
    ideal = initial_ideal(reduced_gb(claimed_ugb_star(3), order))
    assert ideal.generators == {unit_vector(6, *pair) for pair in leads}


def test_buchberger_criterion():
    order = WeightOrder.of(permutation_weight((2, 3, 1)))
    assert satisfies_buchberger_criterion(claimed_ugb_star(3), order)
    assert satisfies_buchberger_criterion(reduced_gb(claimed_ugb_star(3), order).binomials, order)


def test_generated_in_degree():
    generators = claimed_ugb_star(3)
    product = Binomial.from_monomials((1, 0, 0, 0, 1, 1), (0, 1, 0, 1, 0, 1))
    assert generated_in_degree([product], generators)
    assert not generated_in_degree([Binomial.from_terms(6, (1,), (2,))], generators)


def test_ugb_of_star_code():
    assert ugb(code_matrix(star_code(3)), 4) == claimed_ugb_star(3)


def test_ugb_of_pair_code():
    matrix = code_matrix(pair_code(2))
    assert ugb(matrix, default_degree_bound(claimed_ugb_pair(2))) == claimed_ugb_pair(2)


def test_ugb_without_graver_shortcut_contains_every_reduced_basis():
    matrix = IntMatrix.from_rows([[4, 3, 1, 0], [0, 1, 3, 4]])
    assert not graver_equals_ugb(matrix)
    elements = graver(matrix, 6)
    universal = ugb(matrix, 6)
    assert Binomial((1, -1, -1, 1)) in universal
    assert {b.canonical() for b in universal} <= {b.canonical() for b in elements}
    rng = random.Random(7)
    for _ in range(12):
        weight = [rng.randint(1, 20) for _ in range(4)]
        basis = reduced_gb(elements, WeightOrder.of(weight))
        assert basis.canonical_set() <= universal, weight


@pytest.mark.parametrize("n", [2, 3])
def test_pair_cubics_follow_from_quadratics(n):
    claimed = claimed_ugb_pair(n)
    quadratics = [b for b in claimed if b.degree == 2]
    cubics = [b for b in claimed if b.degree == 3]
    assert len(cubics) == n * (n - 1) // 2
    assert generated_in_degree(cubics, quadratics)
    assert not generated_in_degree(quadratics, cubics)


def test_weighted_grevlex_check():
    assert weighted_grevlex_degree_check(nested_curves_code(3))
    with pytest.raises(ValueError):
        weighted_grevlex_degree_check(star_code(3))
