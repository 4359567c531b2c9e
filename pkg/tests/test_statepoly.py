"""Tests for Newton polytopes, state polytopes and the explicit polytopes they match."""

from fractions import Fraction
from itertools import permutations

import pytest

from app.core.codes import pair_code, star_code
from app.core.exactgeom import Halfspace, edge_directions, extreme_points, face_lattice, lattice_isomorphic
from app.core.statepoly import (
    apply_star_state_map,
    grobner_fibers,
    initial_ideals_distinct,
    is_simple,
    minkowski,
    newton,
    normal_cone_weight,
    normal_fans_agree,
    pair_state_polytope,
    permutohedron,
    qbar,
    qbar_halfspaces,
    qbar_projection,
    qbar_vertices_formula,
    shifted_permutohedron,
    star_state_map,
    star_vertex_weights,
    star_weights_match_lp,
    state_polytope_alg35,
    state_polytope_fibers,
    stellohedron,
    tau,
    weyl_chamber_check,
    weyl_chamber_directions,
)
from app.core.toric import claimed_ugb_pair, claimed_ugb_star, code_matrix
from app.exceptions import DimensionMismatchError, NotExtremeError

PENTAGON = {(1, 2, 0), (2, 1, 0), (0, 2, 1), (2, 0, 1), (0, 0, 3)}


def test_minkowski_of_segments_is_a_square():
    first = extreme_points([(0, 0), (1, 0)])
    second = extreme_points([(0, 0), (0, 1)])
    assert minkowski([first, second]).vertices == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_minkowski_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        minkowski([extreme_points([(0, 0)]), extreme_points([(0, 0, 0)])])


def test_newton_polytope_of_star_basis():
    polytope = newton(claimed_ugb_star(3))
    assert polytope.vertex_count == 6
    assert set(polytope.integer_vertices()) == {
        tuple(x - 1 for x in w) for w in star_vertex_weights(3)
    }


def test_normal_cone_weight_selects_vertex():
    square = extreme_points([(0, 0), (1, 0), (0, 1), (1, 1)])
    weight = normal_cone_weight(square, (1, 1))
    assert weight[0] > 0 and weight[1] > 0
    with pytest.raises(NotExtremeError):
        normal_cone_weight(extreme_points([(0, 0), (2, 0)]), (1, 0))


def test_star_state_polytope_is_hexagon():
    matrix = code_matrix(star_code(3))
    result = state_polytope_alg35(matrix, claimed_ugb_star(3))
    assert result.polytope.vertex_count == 6
    assert result.polytope.dim == 2
    assert initial_ideals_distinct(result)


def test_star_state_polytope_with_permutation_weights():
    matrix = code_matrix(star_code(3))
    result = state_polytope_alg35(matrix, claimed_ugb_star(3), weights=star_vertex_weights(3))
    assert set(result.polytope.integer_vertices()) == {
        tuple(x - 1 for x in w) for w in star_vertex_weights(3)
    }
    ideal = result.ideal_at((2, 1, 0, 0, 1, 2))
    assert ideal is not None
    assert ideal.generators == {(1, 0, 0, 0, 1, 0), (1, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 1)}


def test_star_weights_match_lp():
    assert star_weights_match_lp(2)
    assert star_weights_match_lp(3)


def test_grobner_fibers_of_pair_code():
    matrix = code_matrix(pair_code(1))
    fibers = grobner_fibers(matrix, claimed_ugb_pair(1))
    assert len(fibers) == 1
    assert fibers[0].vertices == ((0, 1, 0, 1), (1, 0, 1, 0))

    matrix = code_matrix(pair_code(2))
    triangles = [f for f in grobner_fibers(matrix, claimed_ugb_pair(2)) if f.vertex_count == 3]
    assert len(triangles) == 1


@pytest.mark.parametrize("family,n", [("star", 2), ("star", 3), ("pair", 1), ("pair", 2)])
def test_state_polytope_methods_agree(family, n):
    if family == "star":
        matrix, basis = code_matrix(star_code(n)), claimed_ugb_star(n)
    else:
        matrix, basis = code_matrix(pair_code(n)), claimed_ugb_pair(n)
    first = state_polytope_alg35(matrix, basis).polytope
    second = state_polytope_fibers(matrix, basis)
    assert normal_fans_agree(first, second, samples=200)


def test_normal_fans_disagree():
    square = extreme_points([(0, 0), (1, 0), (0, 1), (1, 1)])
    triangle = extreme_points([(0, 0), (1, 0), (0, 1)])
    skew = extreme_points([(0, 0), (2, 0), (3, 1), (1, 1)])
    assert not normal_fans_agree(square, triangle)
    assert not normal_fans_agree(square, skew, samples=200)
    assert normal_fans_agree(square, extreme_points([(0, 0), (3, 0), (0, 3), (3, 3)]), samples=200)


def test_normal_fans_compare_cones_without_sampling():
    square = extreme_points([(0, 0), (1, 0), (0, 1), (1, 1)])
    skew = extreme_points([(0, 0), (2, 0), (3, 1), (1, 1)])
    assert not normal_fans_agree(square, skew, samples=0)
    assert normal_fans_agree(square, extreme_points([(1, 1), (3, 1), (1, 3), (3, 3)]), samples=0)


def test_permutohedron():
    assert permutohedron(3).vertex_count == 6
    assert is_simple(permutohedron(4))
    assert face_lattice(permutohedron(4)).f_vector == (24, 36, 14)


@pytest.mark.parametrize("n,count", [(1, 2), (2, 5), (3, 16)])
def test_qbar_vertex_count(n, count):
    polytope = qbar(n)
    assert polytope.vertex_count == count
    assert polytope.dim == n
    assert set(polytope.integer_vertices()) == qbar_vertices_formula(n)


def test_qbar_two_is_the_pentagon():
    assert set(qbar(2).integer_vertices()) == PENTAGON


def test_tau():
    assert tau(0, (2, 1)) == (2, 1, 0)
    assert tau(1, (2, 1)) == (2, 0, 1)
    assert tau(2, (2, 1)) == (0, 0, 3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_qbar_halfspaces_match_hull(n):
    polytope = qbar(n)
    facets, equality = qbar_halfspaces(n)
    assert set(polytope.facets) == set(facets)
    assert polytope.equalities == (equality,)
    assert len(facets) == 2 ** n + n - 1


def test_qbar_halfspaces_two():
    facets, equality = qbar_halfspaces(2)
    assert equality == Halfspace((1, 1, 1), Fraction(3))
    assert Halfspace((1, 0, 1), Fraction(1)) in facets
    assert Halfspace((0, 0, 1), Fraction(0)) in facets


@pytest.mark.parametrize("n", [1, 2, 3])
def test_qbar_is_simple(n):
    assert is_simple(qbar(n))


def test_square_pyramid_is_not_simple():
    pyramid = extreme_points([(0, 0, 0), (2, 0, 0), (0, 2, 0), (2, 2, 0), (1, 1, 1)])
    assert not is_simple(pyramid)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_stellohedron_matches_qbar(n):
    assert lattice_isomorphic(face_lattice(qbar(n)), face_lattice(stellohedron(n)))


@pytest.mark.parametrize("n", [1, 2])
def test_pair_state_polytope_projects_to_qbar(n):
    assert qbar_projection(n).vertex_set() == qbar(n).vertex_set()
    assert pair_state_polytope(n).dim == n


def test_star_state_map_two():
    matrix, shift = star_state_map(2)
    assert matrix.entries == ((1, 0, 0, 0), (0, 1, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1))
    assert matrix.determinant() == 1
    assert shift == (0, 0, 1, 1)
    assert set(apply_star_state_map(2).integer_vertices()) == {(0, 1, 0, 0), (1, 0, 0, 0)}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_star_state_map_onto_permutohedron(n):
    assert apply_star_state_map(n).vertex_set() == shifted_permutohedron(n).vertex_set()


@pytest.mark.parametrize("permutation", list(permutations((1, 2, 3))))
def test_weyl_chamber(permutation):
    assert weyl_chamber_check(permutation)


def test_weyl_chamber_rejects_non_permutation():
    with pytest.raises(ValueError):
        weyl_chamber_check((1, 1, 2))


def test_weyl_chamber_directions():
    assert weyl_chamber_directions((2, 3, 1)) == {(-1, 0, 1), (1, -1, 0)}
    assert weyl_chamber_directions((1,)) == frozenset()


@pytest.mark.parametrize("permutation", list(permutations((1, 2, 3, 4))))
def test_permutohedron_normal_cone_is_weyl_chamber(permutation):
    cones = edge_directions(permutohedron(4))
    assert cones[tuple(Fraction(x) for x in permutation)] == weyl_chamber_directions(permutation)


def test_normal_cone_of_another_vertex_is_not_the_chamber():
    cones = edge_directions(permutohedron(3))
    assert cones[(1, 2, 3)] != weyl_chamber_directions((2, 3, 1))
