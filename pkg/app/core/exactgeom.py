"""
Exact Geometry Module
Exact rational linear algebra, LP feasibility, convex hulls and face lattices.
Vertex and facet enumeration runs on exact closed polyhedra from pplpy (the
Parma Polyhedra Library); LPs run over fractions.Fraction, and sympy is used
for the small dense matrix kernels (rref, nullspace, inverse, det).
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Literal, Optional, Sequence, Tuple

import networkx as nx
import sympy
from networkx.algorithms.isomorphism import categorical_node_match
from ppl import C_Polyhedron, Linear_Expression, point

from app.exceptions import DimensionMismatchError

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, ...]
Relation = Literal["<=", ">=", "==", "<", ">"]


# ---------------------------------------------------------------------------
# Scalars and vectors
# ---------------------------------------------------------------------------

def as_point(values: Iterable) -> Point:
    """Convert ints, strings like "3/4", or fractions into an exact point."""
    return tuple(Fraction(value) for value in values)


def from_sympy(value) -> Fraction:
    """Convert a sympy rational into a Fraction."""
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def to_sympy_matrix(rows: Sequence[Sequence[Fraction]], cols: Optional[int] = None) -> sympy.Matrix:
    width = cols if cols is not None else (len(rows[0]) if rows else 0)
    flat = [sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else sympy.Integer(x)
            for row in rows for x in row]
    return sympy.Matrix(len(rows), width, flat)


def dot(left: Sequence, right: Sequence):
    return sum(a * b for a, b in zip(left, right))


def primitive_integer_vector(values: Sequence[Fraction]) -> Tuple[int, ...]:
    """
    Scale a rational vector by a positive factor into a primitive integer vector.

    Args:
        values: Rational entries

    Returns:
        Integer vector with gcd 1 pointing in the same direction (zeros stay zeros)
    """
    fractions = [Fraction(v) for v in values]
    denominator = 1
    for value in fractions:
        denominator = denominator * value.denominator // math.gcd(denominator, value.denominator)
    integers = [int(value * denominator) for value in fractions]
    divisor = 0
    for value in integers:
        divisor = math.gcd(divisor, abs(value))
    if divisor == 0:
        return tuple(integers)
    return tuple(value // divisor for value in integers)


def format_rational(value: Fraction) -> str:
    """Render as "num/den" (or "num" when integral)."""
    return str(Fraction(value))


def _independent_rows(rows: Sequence[Sequence], width: int) -> List[int]:
    """Greedily pick indices of linearly independent rows (at most width of them)."""
    basis: List[Tuple[int, List[Fraction]]] = []
    chosen: List[int] = []
    for index, row in enumerate(rows):
        vector = [Fraction(x) for x in row]
        for pivot, basis_row in basis:
            if vector[pivot] != 0:
                factor = vector[pivot] / basis_row[pivot]
                vector = [a - factor * b for a, b in zip(vector, basis_row)]
        lead = next((j for j, x in enumerate(vector) if x != 0), None)
        if lead is not None:
            basis.append((lead, vector))
            chosen.append(index)
            if len(chosen) == width:
                break
    return chosen


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    """Exact integer matrix stored row-major."""

    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise DimensionMismatchError(
                f"Matrix entries do not form a {self.rows}x{self.cols} rectangle"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        width = cols if cols is not None else (len(entries[0]) if entries else 0)
        return cls(len(entries), width, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        height = rows if rows is not None else (len(columns[0]) if columns else 0)
        if any(len(column) != height for column in columns):
            raise DimensionMismatchError("Columns have different lengths")
        entries = tuple(tuple(int(column[i]) for column in columns) for i in range(height))
        return cls(height, len(columns), entries)

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(size)] for i in range(size)], size)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], cols)

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(self.columns(), self.rows)

    def apply(self, vector: Sequence) -> tuple:
        """Return M·v (entries of v may be ints or fractions)."""
        if len(vector) != self.cols:
            raise DimensionMismatchError(f"Vector of length {len(vector)} for {self.rows}x{self.cols} matrix")
        return tuple(dot(row, vector) for row in self.entries)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if other.rows != self.rows:
            raise DimensionMismatchError("hstack needs equal row counts")
        return IntMatrix.from_rows([a + b for a, b in zip(self.entries, other.entries)], self.cols + other.cols)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if other.cols != self.cols:
            raise DimensionMismatchError("vstack needs equal column counts")
        return IntMatrix.from_rows(list(self.entries) + list(other.entries), self.cols)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self.entries[i][j] for j in col_indices] for i in row_indices], len(col_indices)
        )

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.rows, self.cols, [x for row in self.entries for x in row])

    def determinant(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatchError("Determinant of a non-square matrix")
        if self.rows == 0:
            return 1
        return int(self.to_sympy().det(method="bareiss"))

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return int(self.to_sympy().rank())

    def kernel_basis(self) -> List[Tuple[int, ...]]:
        """Primitive integer vectors spanning ker M over the rationals."""
        if self.cols == 0:
            return []
        if self.rows == 0:
            return [IntMatrix.identity(self.cols).row(i) for i in range(self.cols)]
        return [
            primitive_integer_vector([from_sympy(x) for x in vector])
            for vector in self.to_sympy().nullspace()
        ]

    def is_binary(self) -> bool:
        return all(x in (0, 1) for row in self.entries for x in row)


# ---------------------------------------------------------------------------
# Exact simplex (Bland's rule)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearConstraint:
    """coefficients · x  (relation)  rhs over free rational variables."""

    coefficients: Tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction

    @classmethod
    def build(cls, coefficients: Iterable, relation: Relation, rhs) -> "LinearConstraint":
        return cls(as_point(coefficients), relation, Fraction(rhs))

    def holds(self, point: Sequence[Fraction]) -> bool:
        value = dot(self.coefficients, point)
        return {
            "<=": value <= self.rhs,
            ">=": value >= self.rhs,
            "==": value == self.rhs,
            "<": value < self.rhs,
            ">": value > self.rhs,
        }[self.relation]


@dataclass(frozen=True)
class LPResult:
    """Outcome of a feasibility query: a point, or Farkas multipliers."""

    feasible: bool
    point: Optional[Point] = None
    certificate: Optional[Tuple[Fraction, ...]] = None

    def __bool__(self) -> bool:
        return self.feasible


class _Tableau:
    """Dense simplex tableau over fractions; entering and leaving by Bland's rule."""

    def __init__(self, rows: List[List[Fraction]], basis: List[int], cost: List[Fraction]):
        self.rows = rows
        self.basis = basis
        self.cost = cost

    def pivot(self, row: int, col: int):
        pivot_row = self.rows[row]
        value = pivot_row[col]
        if value != 1:
            pivot_row = [x / value for x in pivot_row]
            self.rows[row] = pivot_row
        for i, other in enumerate(self.rows):
            factor = other[col]
            if i != row and factor != 0:
                self.rows[i] = [a - factor * b for a, b in zip(other, pivot_row)]
        factor = self.cost[col]
        if factor != 0:
            self.cost = [a - factor * b for a, b in zip(self.cost, pivot_row)]
        self.basis[row] = col

    def run(self, allowed: int) -> bool:
        """Minimize; returns False when the objective is unbounded."""
        while True:
            entering = next((j for j in range(allowed) if self.cost[j] < 0), None)
            if entering is None:
                return True
            leaving = None
            best_ratio = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[leaving])
                    ):
                        best_ratio, leaving = ratio, i
            if leaving is None:
                return False
            self.pivot(leaving, entering)

    def solution(self, size: int) -> List[Fraction]:
        values = [Fraction(0)] * size
        for i, column in enumerate(self.basis):
            if column < size:
                values[column] = self.rows[i][-1]
        return values


@dataclass(frozen=True)
class _StandardFormOutcome:
    feasible: bool
    solution: Optional[List[Fraction]] = None
    certificate: Optional[List[Fraction]] = None
    bounded: bool = True


def solve_standard_form(
    matrix: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
    objective: Optional[Sequence[Fraction]] = None,
) -> _StandardFormOutcome:
    """
    Solve min objective·x subject to matrix·x = rhs, x ≥ 0 with a two-phase simplex.

    Args:
        matrix: Constraint rows
        rhs: Right-hand side
        objective: Optional cost vector; phase 2 is skipped when omitted

    Returns:
        Outcome with an optimal (or merely feasible) basic solution, or Farkas
        multipliers y with yᵀA ≥ 0 and yᵀb < 0 when infeasible
    """
    height = len(matrix)
    width = len(matrix[0]) if height else (len(objective) if objective is not None else 0)
    signs = [(-1 if Fraction(b) < 0 else 1) for b in rhs]

    rows: List[List[Fraction]] = []
    for i in range(height):
        sign = signs[i]
        original = [Fraction(sign * x) for x in matrix[i]]
        artificial = [Fraction(1 if k == i else 0) for k in range(height)]
        rows.append(original + artificial + [Fraction(sign * rhs[i])])
    cost = [-sum((row[j] for row in rows), Fraction(0)) for j in range(width)]
    cost += [Fraction(0)] * height
    cost.append(-sum((row[-1] for row in rows), Fraction(0)))

    tableau = _Tableau(rows, [width + i for i in range(height)], cost)
    tableau.run(width + height)
    if -tableau.cost[-1] > 0:
        multipliers = [Fraction(1) - tableau.cost[width + i] for i in range(height)]
        certificate = [-multipliers[i] * signs[i] for i in range(height)]
        return _StandardFormOutcome(False, certificate=certificate)

    if objective is None:
        return _StandardFormOutcome(True, solution=tableau.solution(width))

    # Drive remaining artificial variables out of the basis, dropping redundant rows.
    i = 0
    while i < len(tableau.rows):
        if tableau.basis[i] >= width:
            column = next((j for j in range(width) if tableau.rows[i][j] != 0), None)
            if column is None:
                del tableau.rows[i]
                del tableau.basis[i]
                continue
            tableau.pivot(i, column)
        i += 1
    tableau.rows = [row[:width] + [row[-1]] for row in tableau.rows]
    costs = [Fraction(c) for c in objective]
    reduced = list(costs) + [Fraction(0)]
    for row, column in zip(tableau.rows, tableau.basis):
        factor = costs[column]
        if factor != 0:
            reduced = [a - factor * b for a, b in zip(reduced, row)]
    tableau.cost = reduced
    bounded = tableau.run(width)
    return _StandardFormOutcome(True, solution=tableau.solution(width), bounded=bounded)


def lp_feasible(constraints: Sequence[LinearConstraint], dim: int) -> LPResult:
    """
    Decide a system of strict/weak inequalities and equalities over free variables.

    Strict rows are handled with a shared margin variable s ∈ [0, 1] that is
    maximized in phase 2; the system is strictly feasible iff the optimum is positive.

    Args:
        constraints: The system
        dim: Number of variables

    Returns:
        LPResult with an exact satisfying point, or Farkas multipliers (one per
        constraint) when the weak relaxation is already infeasible
    """
    for constraint in constraints:
        if len(constraint.coefficients) != dim:
            raise DimensionMismatchError(
                f"Constraint of length {len(constraint.coefficients)} in dimension {dim}"
            )
    strict = any(c.relation in ("<", ">") for c in constraints)
    inequalities = [i for i, c in enumerate(constraints) if c.relation != "=="]
    margin = 2 * dim if strict else None
    slack_start = 2 * dim + (1 if strict else 0)
    width = slack_start + len(inequalities) + (1 if strict else 0)

    matrix: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    slack_of = {index: slack_start + k for k, index in enumerate(inequalities)}
    for index, constraint in enumerate(constraints):
        row = [Fraction(0)] * width
        for j, a in enumerate(constraint.coefficients):
            row[j] = Fraction(a)
            row[dim + j] = -Fraction(a)
        if constraint.relation in (">=", ">"):
            row[slack_of[index]] = Fraction(-1)
        elif constraint.relation in ("<=", "<"):
            row[slack_of[index]] = Fraction(1)
        if constraint.relation == ">":
            row[margin] = Fraction(-1)
        elif constraint.relation == "<":
            row[margin] = Fraction(1)
        matrix.append(row)
        rhs.append(Fraction(constraint.rhs))
    if strict:
        bound = [Fraction(0)] * width
        bound[margin] = Fraction(1)
        bound[width - 1] = Fraction(1)
        matrix.append(bound)
        rhs.append(Fraction(1))

    objective = None
    if strict:
        objective = [Fraction(0)] * width
        objective[margin] = Fraction(-1)
    if not matrix:
        return LPResult(True, point=tuple(Fraction(0) for _ in range(dim)))

    outcome = solve_standard_form(matrix, rhs, objective)
    if not outcome.feasible:
        return LPResult(False, certificate=tuple(outcome.certificate[: len(constraints)]))
    solution = outcome.solution
    if strict and solution[margin] <= 0:
        return LPResult(False)
    point = tuple(solution[j] - solution[dim + j] for j in range(dim))
    if not all(c.holds(point) for c in constraints):
        raise ArithmeticError("Simplex returned a point violating its own constraints")
    return LPResult(True, point=point)


def is_extreme(point: Sequence, others: Sequence[Sequence]) -> bool:
    """A point is extreme iff it is not a convex combination of the other points."""
    return separating_weight(point, others) is not None


def separating_weight(point: Sequence, others: Sequence[Sequence]) -> Optional[Tuple[Fraction, ...]]:
    """
    Find w with w·point > w·u for every u in others, or None when point ∈ conv(others).

    The LP "Σ λ_u u = point, Σ λ_u = 1, λ ≥ 0" is solved; its Farkas
    multipliers (y, y0) give y·u + y0 ≥ 0 > y·point + y0, so w = −y.
    """
    target = as_point(point)
    candidates = [as_point(u) for u in others if as_point(u) != target]
    if not candidates:
        return tuple(Fraction(0) for _ in target)
    size = len(target)
    matrix = [[u[i] for u in candidates] for i in range(size)]
    matrix.append([Fraction(1)] * len(candidates))
    outcome = solve_standard_form(matrix, list(target) + [Fraction(1)])
    if outcome.feasible:
        return None
    return tuple(-y for y in outcome.certificate[:size])


# ---------------------------------------------------------------------------
# Affine hulls and halfspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Halfspace:
    """normal·x ≥ offset for facets, normal·x = offset for equalities."""

    normal: Tuple[int, ...]
    offset: Fraction

    def evaluate(self, point: Sequence) -> Fraction:
        return dot(self.normal, point) - self.offset

    def contains(self, point: Sequence) -> bool:
        return self.evaluate(point) >= 0

    def is_tight(self, point: Sequence) -> bool:
        return self.evaluate(point) == 0


@dataclass(frozen=True)
class AffineHull:
    """Affine hull of a point set: a base point, the coordinates on which
    projection is injective, and a canonical equality system."""

    base: Point
    dim: int
    pivots: Tuple[int, ...]
    equalities: Tuple[Halfspace, ...]


def affine_hull(points: Sequence[Sequence]) -> AffineHull:
    """
    Compute the affine hull of a nonempty point set.

    Args:
        points: Points of a common dimension

    Returns:
        AffineHull with equalities in reduced row echelon form, each scaled
        to a primitive integer normal
    """
    exact = [as_point(p) for p in points]
    if not exact:
        raise ValueError("Affine hull of an empty point set")
    size = len(exact[0])
    base = exact[0]
    differences = [tuple(a - b for a, b in zip(p, base)) for p in exact[1:]]
    chosen = _independent_rows(differences, size)
    if chosen:
        spanning = to_sympy_matrix([differences[i] for i in chosen], size)
        _, pivots = spanning.rref()
        null_vectors = spanning.nullspace()
        normals = [[from_sympy(x) for x in vector] for vector in null_vectors]
    else:
        pivots = ()
        normals = [[Fraction(1 if i == j else 0) for j in range(size)] for i in range(size)]
    equalities: List[Halfspace] = []
    if normals:
        reduced, _ = to_sympy_matrix(normals, size).rref()
        for i in range(reduced.rows):
            normal = primitive_integer_vector([from_sympy(x) for x in reduced.row(i)])
            if any(normal):
                equalities.append(Halfspace(normal, dot(normal, base)))
    return AffineHull(base, len(chosen), tuple(int(p) for p in pivots), tuple(equalities))


class _FacetCanonicalizer:
    """Rewrites facet inequalities modulo the equality span into canonical form."""

    def __init__(self, hull: AffineHull, points: Sequence[Point]):
        self.hull = hull
        self.size = len(hull.base)
        equalities = hull.equalities
        self.projector: List[List[Fraction]] = []
        if equalities:
            normals = to_sympy_matrix([[Fraction(x) for x in e.normal] for e in equalities], self.size)
            solved = (normals * normals.T).inv() * normals
            self.projector = [[from_sympy(x) for x in solved.row(i)] for i in range(solved.rows)]
        total = sum(hull.base)
        self.coordinate_sum: Optional[Fraction] = total if all(sum(p) == total for p in points) else None

    def canonical(self, normal: Sequence[Fraction], offset: Fraction) -> Halfspace:
        vector = [Fraction(x) for x in normal]
        bound = Fraction(offset)
        weights = [dot(coefficients, vector) for coefficients in self.projector]
        for weight, equality in zip(weights, self.hull.equalities):
            if weight != 0:
                vector = [a - weight * b for a, b in zip(vector, equality.normal)]
                bound -= weight * equality.offset
        if self.projector and self.coordinate_sum is not None:
            shift = min(vector)
            vector = [a - shift for a in vector]
            bound -= shift * self.coordinate_sum
        scaled = primitive_integer_vector(vector)
        nonzero = next(j for j, x in enumerate(vector) if x != 0)
        factor = Fraction(scaled[nonzero]) / vector[nonzero]
        return Halfspace(scaled, bound * factor)


# ---------------------------------------------------------------------------
# Exact polyhedra (Parma Polyhedra Library)
# ---------------------------------------------------------------------------

def _ppl_point(coordinates: Point):
    """PPL point generator for a rational point (integer numerators over one divisor)."""
    divisor = 1
    for x in coordinates:
        divisor = divisor * x.denominator // math.gcd(divisor, x.denominator)
    numerators = [int(x * divisor) for x in coordinates]
    return point(Linear_Expression(numerators, 0), divisor)


def _padded(values, size: int) -> List[int]:
    entries = [int(x) for x in values]
    return entries + [0] * (size - len(entries))


def ppl_polyhedron(points: Sequence[Point], size: int) -> C_Polyhedron:
    """Closed polyhedron conv(points) in Q^size."""
    polyhedron = C_Polyhedron(size, "empty")
    for p in points:
        polyhedron.add_generator(_ppl_point(p))
    return polyhedron


def ppl_vertices(polyhedron: C_Polyhedron, size: int) -> List[Point]:
    """Vertices of a polytope from its minimized generator system."""
    vertices = []
    for generator in polyhedron.minimized_generators():
        if not generator.is_point():
            raise ValueError("Polyhedron is unbounded")
        divisor = int(generator.divisor())
        vertices.append(tuple(Fraction(c, divisor) for c in _padded(generator.coefficients(), size)))
    return sorted(vertices)


def ppl_inequalities(polyhedron: C_Polyhedron, size: int) -> List[Tuple[Tuple[int, ...], Fraction]]:
    """Irredundant inequalities a·x ≥ b of a polyhedron (equalities excluded)."""
    result = []
    for constraint in polyhedron.minimized_constraints():
        if constraint.is_inequality():
            normal = tuple(_padded(constraint.coefficients(), size))
            result.append((normal, Fraction(-int(constraint.inhomogeneous_term()))))
    return result


# ---------------------------------------------------------------------------
# Polytopes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticePolytope:
    """Exact V-representation with optional facets and equalities."""

    ambient_dim: int
    vertices: Tuple[Point, ...]
    facets: Optional[Tuple[Halfspace, ...]] = None
    equalities: Optional[Tuple[Halfspace, ...]] = None

    @cached_property
    def dim(self) -> int:
        if self.equalities is not None:
            return self.ambient_dim - len(self.equalities)
        return affine_hull(self.vertices).dim

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def integer_vertices(self) -> List[Tuple[int, ...]]:
        """Vertices as integer tuples (raises if a vertex is not a lattice point)."""
        result = []
        for vertex in self.vertices:
            if any(x.denominator != 1 for x in vertex):
                raise ValueError(f"Vertex {vertex} is not a lattice point")
            result.append(tuple(int(x) for x in vertex))
        return result

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)


def _check_dimensions(points: Sequence[Point]) -> int:
    size = len(points[0])
    for point in points:
        if len(point) != size:
            raise DimensionMismatchError(f"Point {point} does not have dimension {size}")
    return size


def extreme_points(points: Sequence[Sequence]) -> LatticePolytope:
    """
    Compute the vertices (and facets) of conv(points).

    Args:
        points: Nonempty list of rational points of one dimension

    Returns:
        LatticePolytope with lexicographically sorted vertices and canonical facets
    """
    if not points:
        raise ValueError("extreme_points needs at least one point")
    exact = [as_point(p) for p in points]
    size = _check_dimensions(exact)
    candidates = sorted(set(exact))
    hull = affine_hull(candidates)
    if hull.dim == 0:
        return LatticePolytope(size, (candidates[0],), (), hull.equalities)

    polyhedron = ppl_polyhedron(candidates, size)
    vertices = tuple(ppl_vertices(polyhedron, size))
    canonicalizer = _FacetCanonicalizer(hull, vertices)
    facets = {
        canonicalizer.canonical([Fraction(x) for x in normal], offset)
        for normal, offset in ppl_inequalities(polyhedron, size)
    }
    logger.debug(f"Hull of {len(candidates)} candidates: {len(vertices)} vertices, {len(facets)} facets")
    return LatticePolytope(size, vertices, tuple(sorted(facets)), hull.equalities)


def hull_halfspaces(polytope: LatticePolytope) -> LatticePolytope:
    """Return the polytope with facets and equalities populated."""
    if polytope.facets is not None and polytope.equalities is not None:
        return polytope
    return extreme_points(polytope.vertices)


def standard_simplex(support: Iterable[int], ambient_dim: int) -> LatticePolytope:
    """Δ_S = conv{e_i : i ∈ S} for a 1-based support S."""
    points = []
    for i in sorted(support):
        if not 1 <= i <= ambient_dim:
            raise DimensionMismatchError(f"Index {i} outside 1..{ambient_dim}")
        points.append(tuple(1 if j == i - 1 else 0 for j in range(ambient_dim)))
    return extreme_points(points)


def apply_affine(polytope: LatticePolytope, matrix: IntMatrix, shift: Sequence[int]) -> LatticePolytope:
    """
    Image of a polytope under x ↦ Mx + v.

    Raises:
        DimensionMismatchError: If M, v and the polytope disagree in shape
    """
    if matrix.cols != polytope.ambient_dim or len(shift) != matrix.rows:
        raise DimensionMismatchError(
            f"Map {matrix.rows}x{matrix.cols} + vector of length {len(shift)} "
            f"on ambient dimension {polytope.ambient_dim}"
        )
    images = [tuple(a + Fraction(b) for a, b in zip(matrix.apply(v), shift)) for v in polytope.vertices]
    return extreme_points(images)


def translate(polytope: LatticePolytope, shift: Sequence) -> LatticePolytope:
    return apply_affine(polytope, IntMatrix.identity(polytope.ambient_dim), shift)


def project(polytope: LatticePolytope, coordinates: Sequence[int]) -> LatticePolytope:
    """Project onto the given 0-based coordinates and take the hull."""
    return extreme_points([tuple(v[i] for i in coordinates) for v in polytope.vertices])


def argmax_vertices(polytope: LatticePolytope, weight: Sequence) -> List[Point]:
    """All vertices maximizing weight·x."""
    values = [dot(weight, v) for v in polytope.vertices]
    best = max(values)
    return [v for v, value in zip(polytope.vertices, values) if value == best]


# ---------------------------------------------------------------------------
# Face lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FaceLattice:
    """Vertex–facet incidence plus every face as a set of vertex indices."""

    dim: int
    incidence: Tuple[Tuple[bool, ...], ...]
    faces: Tuple[Tuple[frozenset, ...], ...]

    @property
    def f_vector(self) -> Tuple[int, ...]:
        """(f_0, …, f_{dim−1}); the polytope itself is the single face of dimension dim."""
        return tuple(len(level) for level in self.faces)

    @property
    def vertex_count(self) -> int:
        return len(self.incidence)

    @property
    def facet_count(self) -> int:
        return len(self.incidence[0]) if self.incidence else 0


def _mask_to_set(mask: int) -> frozenset:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def face_lattice(polytope: LatticePolytope) -> FaceLattice:
    """
    Enumerate all faces by intersecting facets level by level.

    The facets of a face F are the inclusion-maximal proper intersections
    F ∩ G with facets G of the polytope.
    """
    polytope = hull_halfspaces(polytope)
    vertices = polytope.vertices
    facets = polytope.facets
    incidence = tuple(tuple(f.is_tight(v) for f in facets) for v in vertices)
    dim = polytope.dim
    if dim == 0:
        return FaceLattice(0, incidence, ((frozenset({0}),),))

    facet_masks = []
    for j in range(len(facets)):
        mask = 0
        for i in range(len(vertices)):
            if incidence[i][j]:
                mask |= 1 << i
        facet_masks.append(mask)

    levels = [set(facet_masks)]
    for _ in range(dim - 1):
        lower = set()
        for face in levels[-1]:
            candidates = {face & g for g in facet_masks if face & g != face and face & g}
            for candidate in candidates:
                if not any(candidate != other and candidate & other == candidate for other in candidates):
                    lower.add(candidate)
        levels.append(lower)
    levels.reverse()
    faces = tuple(tuple(sorted((_mask_to_set(m) for m in level), key=sorted)) for level in levels)
    return FaceLattice(dim, incidence, faces)


def edge_directions(polytope: LatticePolytope) -> Dict[Point, FrozenSet[Tuple[int, ...]]]:
    """
    Primitive directions u − v from each vertex v to its neighbours u.

    The normal cone at v is {w : w·d ≤ 0 for every d}, so two polytopes in
    parallel affine spaces have the same normal fan iff their vertices
    correspond with equal direction sets.
    """
    lattice = face_lattice(polytope)
    vertices = hull_halfspaces(polytope).vertices
    if lattice.dim == 0:
        return {vertices[0]: frozenset()}
    edges = [tuple(range(len(vertices)))] if lattice.dim == 1 else [tuple(sorted(e)) for e in lattice.faces[1]]
    directions: Dict[Point, set] = {v: set() for v in vertices}
    for i, j in edges:
        step = [b - a for a, b in zip(vertices[i], vertices[j])]
        directions[vertices[i]].add(primitive_integer_vector(step))
        directions[vertices[j]].add(primitive_integer_vector([-x for x in step]))
    return {v: frozenset(d) for v, d in directions.items()}


def incidence_graph(lattice: FaceLattice) -> nx.Graph:
    """Bipartite vertex/facet incidence graph."""
    graph = nx.Graph()
    for i in range(lattice.vertex_count):
        graph.add_node(("vertex", i), kind="vertex")
    for j in range(lattice.facet_count):
        graph.add_node(("facet", j), kind="facet")
    for i, row in enumerate(lattice.incidence):
        for j, tight in enumerate(row):
            if tight:
                graph.add_edge(("vertex", i), ("facet", j))
    return graph


def lattice_isomorphic(first: FaceLattice, second: FaceLattice) -> bool:
    """True iff the vertex–facet incidence systems are isomorphic."""
    if first.dim != second.dim or first.f_vector != second.f_vector:
        return False
    return nx.is_isomorphic(
        incidence_graph(first),
        incidence_graph(second),
        node_match=categorical_node_match("kind", None),
    )
