"""Tests for exact linear algebra, LPs, hulls and face lattices."""

from fractions import Fraction

import pytest

from app.core.exactgeom import (
    Halfspace,
    IntMatrix,
    LinearConstraint,
    affine_hull,
    apply_affine,
    argmax_vertices,
    edge_directions,
    extreme_points,
    face_lattice,
    is_extreme,
    lattice_isomorphic,
    lp_feasible,
    ppl_inequalities,
    ppl_polyhedron,
    ppl_vertices,
    primitive_integer_vector,
    project,
    separating_weight,
    standard_simplex,
    translate,
)
from app.exceptions import DimensionMismatchError

SQUARE = [(0, 0), (2, 0), (0, 2), (2, 2)]
CUBE = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
PYRAMID = [(0, 0, 0), (2, 0, 0), (0, 2, 0), (2, 2, 0), (1, 1, 1)]


def test_int_matrix_basics():
    matrix = IntMatrix.from_rows([[2, 1], [1, 1]])
    assert matrix.determinant() == 1
    assert matrix.rank() == 2
    assert matrix.transpose() == IntMatrix.from_rows([[2, 1], [1, 1]])
    assert matrix.apply((1, -1)) == (1, 0)


def test_int_matrix_rejects_ragged_rows():
    with pytest.raises(DimensionMismatchError):
        IntMatrix.from_rows([[1, 2], [3]])


def test_kernel_basis_spans_kernel():
    matrix = IntMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
    kernel = matrix.kernel_basis()
    assert len(kernel) == 1
    assert matrix.apply(kernel[0]) == (0, 0)
    assert sorted(abs(x) for x in kernel[0]) == [1, 1, 1]


def test_primitive_integer_vector():
    assert primitive_integer_vector([Fraction(1, 2), Fraction(-3, 4)]) == (2, -3)
    assert primitive_integer_vector([0, 0]) == (0, 0)
    assert primitive_integer_vector([4, 6, 0]) == (2, 3, 0)


def test_lp_feasible_weak_and_strict():
    weak = [LinearConstraint.build((1,), ">=", 1), LinearConstraint.build((1,), "<=", 2)]
    result = lp_feasible(weak, 1)
    assert result.feasible
    assert 1 <= result.point[0] <= 2

    empty = [LinearConstraint.build((1,), ">=", 2), LinearConstraint.build((1,), "<=", 1)]
    assert not lp_feasible(empty, 1)

    strict = [LinearConstraint.build((1,), ">", 1), LinearConstraint.build((1,), "<", 1)]
    assert not lp_feasible(strict, 1)


def test_separating_weight_is_strict():
    others = [(1, 0), (0, 1)]
    weight = separating_weight((0, 0), others)
    assert weight is not None
    assert all(0 > weight[0] * u[0] + weight[1] * u[1] for u in others)


def test_interior_point_is_not_extreme():
    assert separating_weight((1, 1), SQUARE) is None
    assert is_extreme((0, 0), SQUARE[1:])


def test_extreme_points_drops_interior_and_duplicates():
    polytope = extreme_points(SQUARE + [(1, 1), (1, 0), (0, 0)])
    assert polytope.vertices == ((0, 0), (0, 2), (2, 0), (2, 2))
    assert polytope.dim == 2
    assert polytope.equalities == ()
    assert set(polytope.facets) == {
        Halfspace((1, 0), Fraction(0)),
        Halfspace((0, 1), Fraction(0)),
        Halfspace((-1, 0), Fraction(-2)),
        Halfspace((0, -1), Fraction(-2)),
    }


def test_extreme_points_errors():
    with pytest.raises(ValueError):
        extreme_points([])
    with pytest.raises(DimensionMismatchError):
        extreme_points([(0, 0), (1, 0, 0)])


def test_rational_vertices_are_exact():
    half = Fraction(1, 2)
    polytope = extreme_points([(0, 0), (half, 0), (0, half), (Fraction(1, 8), Fraction(1, 8))])
    assert polytope.vertices == ((0, 0), (0, half), (half, 0))
    assert Halfspace((-1, -1), Fraction(-1, 2)) in polytope.facets


def test_ppl_polyhedron_of_square():
    exact = [tuple(Fraction(x) for x in p) for p in SQUARE + [(1, 1)]]
    polyhedron = ppl_polyhedron(exact, 2)
    assert ppl_vertices(polyhedron, 2) == sorted(exact[:4])
    inequalities = ppl_inequalities(polyhedron, 2)
    assert len(inequalities) == 4
    for normal, offset in inequalities:
        assert all(sum(a * x for a, x in zip(normal, p)) >= offset for p in exact)
        assert sum(1 for p in exact if sum(a * x for a, x in zip(normal, p)) == offset) == 2


def test_segment_facets_are_canonical():
    polytope = extreme_points([(1, 2), (2, 1)])
    assert polytope.dim == 1
    assert polytope.equalities == (Halfspace((1, 1), Fraction(3)),)
    assert set(polytope.facets) == {Halfspace((1, 0), Fraction(1)), Halfspace((0, 1), Fraction(1))}


def test_hexagon_in_a_plane():
    points = [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1), (2, 2, 2)]
    polytope = extreme_points(points)
    assert polytope.vertex_count == 6
    assert polytope.dim == 2
    assert len(polytope.facets) == 6


def test_affine_hull_of_collinear_points():
    hull = affine_hull([(0, 1), (1, 0), (2, -1)])
    assert hull.dim == 1
    assert hull.equalities == (Halfspace((1, 1), Fraction(1)),)


def test_standard_simplex_is_one_based():
    simplex = standard_simplex({1, 3}, 3)
    assert simplex.vertices == ((0, 0, 1), (1, 0, 0))
    with pytest.raises(DimensionMismatchError):
        standard_simplex({4}, 3)


def test_apply_affine_and_translate():
    segment = extreme_points([(0, 0), (1, 0)])
    image = apply_affine(segment, IntMatrix.from_rows([[1, 1], [0, 1]]), (1, 1))
    assert image.vertices == ((1, 1), (2, 1))
    assert translate(segment, (0, 5)).vertices == ((0, 5), (1, 5))
    with pytest.raises(DimensionMismatchError):
        apply_affine(segment, IntMatrix.identity(3), (0, 0, 0))


def test_project_and_argmax():
    square = extreme_points(SQUARE)
    assert project(square, [0]).vertices == ((0,), (2,))
    assert argmax_vertices(square, (1, 1)) == [(2, 2)]
    assert len(argmax_vertices(square, (1, 0))) == 2


@pytest.mark.parametrize("points,f_vector", [
    ([(0, 0), (1, 0), (0, 1)], (3, 3)),
    (SQUARE, (4, 4)),
    (CUBE, (8, 12, 6)),
    (PYRAMID, (5, 8, 5)),
    ([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], (4, 6, 4)),
])
def test_face_lattice_f_vectors(points, f_vector):
    assert face_lattice(extreme_points(points)).f_vector == f_vector


def test_lattice_isomorphism():
    square = face_lattice(extreme_points(SQUARE))
    parallelogram = face_lattice(extreme_points([(0, 0), (2, 0), (3, 1), (1, 1)]))
    triangle = face_lattice(extreme_points([(0, 0), (1, 0), (0, 1)]))
    assert lattice_isomorphic(square, parallelogram)
    assert not lattice_isomorphic(square, triangle)


def test_edge_directions():
    directions = edge_directions(extreme_points(SQUARE))
    assert directions[(0, 0)] == {(1, 0), (0, 1)}
    assert directions[(2, 2)] == {(-1, 0), (0, -1)}
    assert edge_directions(extreme_points([(1, 2), (3, 6)]))[(1, 2)] == {(1, 2)}
    assert edge_directions(extreme_points([(5, 5)])) == {(5, 5): frozenset()}
