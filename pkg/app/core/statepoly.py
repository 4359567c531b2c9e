"""
State Polytope Module
Newton polytopes, Minkowski sums, state polytopes (vertex-by-vertex from
initial ideals, and as Minkowski sums of Gröbner fibers), plus the explicit
polytopes these are compared against: permutohedra, Q̄_n, Q_n and
stellohedra.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from app.config import settings
from app.core.exactgeom import (
    IntMatrix,
    LatticePolytope,
    Halfspace,
    Point,
    apply_affine,
    argmax_vertices,
    as_point,
    dot,
    edge_directions,
    extreme_points,
    hull_halfspaces,
    primitive_integer_vector,
    project,
    separating_weight,
    standard_simplex,
)
from app.core.nestedsets import closure_I, family_I
from app.core.toric import (
    Binomial,
    MonomialIdeal,
    WeightOrder,
    claimed_ugb_star,
    fiber,
    initial_ideal,
    permutation_weight,
    reduced_gb,
)
from app.exceptions import DimensionMismatchError, NotExtremeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VertexWeight:
    """A vertex, an integer weight strictly selecting it, and its initial ideal."""

    vertex: Point
    weight: Tuple[int, ...]
    ideal: Optional[MonomialIdeal] = None


@dataclass(frozen=True)
class StatePolytopeResult:
    polytope: LatticePolytope
    vertices: Tuple[VertexWeight, ...]
    method: str = "alg35"

    def ideal_at(self, vertex: Sequence) -> Optional[MonomialIdeal]:
        target = as_point(vertex)
        for entry in self.vertices:
            if entry.vertex == target:
                return entry.ideal
        return None


# ---------------------------------------------------------------------------
# Minkowski sums and Newton polytopes
# ---------------------------------------------------------------------------

def minkowski(polytopes: Sequence[LatticePolytope]) -> LatticePolytope:
    """
    Minkowski sum by pairwise vertex sums, pruned to extreme points after each summand.

    Raises:
        DimensionMismatchError: If the summands live in different ambient spaces
    """
    if not polytopes:
        raise ValueError("Minkowski sum of an empty list")
    ambient = polytopes[0].ambient_dim
    for polytope in polytopes:
        if polytope.ambient_dim != ambient:
            raise DimensionMismatchError(
                f"Summands in dimensions {ambient} and {polytope.ambient_dim}"
            )
    current: List[Point] = list(polytopes[0].vertices)
    for polytope in polytopes[1:]:
        candidates = {tuple(a + b for a, b in zip(u, v)) for u in current for v in polytope.vertices}
        current = list(extreme_points(list(candidates)).vertices)
    return extreme_points(current)


def newton(binomials: Iterable[Binomial]) -> LatticePolytope:
    """Newt(G) = Σ_g conv{g⁺, g⁻}."""
    segments = [extreme_points([b.plus, b.minus]) for b in binomials]
    if not segments:
        raise ValueError("Newton polytope of an empty binomial set")
    return minkowski(segments)


def normal_cone_weight(polytope: LatticePolytope, vertex: Sequence) -> Tuple[int, ...]:
    """
    Integer weight w with w·v > w·u for every other vertex u.

    Raises:
        NotExtremeError: If v is not a vertex of P
    """
    target = as_point(vertex)
    others = [u for u in polytope.vertices if u != target]
    rational = separating_weight(target, others)
    if rational is None or (others and not any(rational)):
        raise NotExtremeError(f"{vertex} is not a vertex of the polytope")
    weight = primitive_integer_vector(rational) if any(rational) else tuple(0 for _ in target)
    best = dot(weight, target)
    if any(dot(weight, u) >= best for u in others):
        raise NotExtremeError(f"Separating weight for {vertex} is not strict")
    return weight


# ---------------------------------------------------------------------------
# State polytopes
# ---------------------------------------------------------------------------

class StatePolytopeBuilder:
    """
    Builds a state polytope one initial ideal at a time.

    For each vertex of Newt(UGB) a selecting weight is found; its initial
    ideal is generated by the UGB leading terms, and the state vertex is
    Σ_{d=1}^{D} (sum of exponent vectors of degree-d monomials in that ideal).
    """

    def __init__(self, matrix: IntMatrix, universal_basis: Iterable[Binomial],
                 weights: Optional[Sequence[Sequence[int]]] = None):
        self.matrix = matrix
        self.universal_basis = sorted(b.canonical() for b in universal_basis)
        self.weights = weights

    def _ideal(self, weight: Sequence[int]) -> MonomialIdeal:
        order = WeightOrder.of(weight)
        return MonomialIdeal.from_generators(b.oriented(order).plus for b in self.universal_basis)

    def _state_vertex(self, ideal: MonomialIdeal, top_degree: int) -> Tuple[int, ...]:
        total = [0] * self.matrix.cols
        for degree in range(1, top_degree + 1):
            part = ideal.degree_part_sum(degree, self.matrix.cols)
            total = [x + y for x, y in zip(total, part)]
        return tuple(total)

    def build(self) -> StatePolytopeResult:
        if not self.universal_basis:
            origin = tuple([0] * self.matrix.cols)
            polytope = extreme_points([origin])
            entry = VertexWeight(polytope.vertices[0], origin, MonomialIdeal(frozenset()))
            return StatePolytopeResult(polytope, (entry,))

        logger.info("Step 1/4: Reading the top degree of the universal basis")
        top_degree = max(b.degree for b in self.universal_basis)

        logger.info("Step 2/4: Choosing one weight per Gröbner cone")
        if self.weights is None:
            polytope = newton(self.universal_basis)
            weights = [normal_cone_weight(polytope, v) for v in polytope.vertices]
            logger.info(f"Newt(UGB) has {len(weights)} vertices")
        else:
            weights = [tuple(w) for w in self.weights]

        logger.info(f"Step 3/4: Computing {len(weights)} initial ideals")
        by_ideal: Dict[MonomialIdeal, Tuple[Tuple[int, ...], Tuple[int, ...]]] = {}
        for weight in weights:
            ideal = self._ideal(weight)
            if ideal not in by_ideal:
                by_ideal[ideal] = (weight, self._state_vertex(ideal, top_degree))

        logger.info(f"Step 4/4: Hull of {len(by_ideal)} state vertices")
        polytope = extreme_points([point for _, point in by_ideal.values()])
        entries = []
        for ideal, (weight, point) in by_ideal.items():
            exact = as_point(point)
            if exact in polytope.vertex_set():
                entries.append(VertexWeight(exact, tuple(weight), ideal))
        entries.sort(key=lambda entry: entry.vertex)
        return StatePolytopeResult(polytope, tuple(entries), method="alg35")


def state_polytope_alg35(matrix: IntMatrix, universal_basis: Iterable[Binomial],
                         weights: Optional[Sequence[Sequence[int]]] = None) -> StatePolytopeResult:
    return StatePolytopeBuilder(matrix, universal_basis, weights).build()


def star_vertex_weights(n: int) -> List[Tuple[int, ...]]:
    """(π, π^c) for every π ∈ 𝔖_n, in lexicographic order of π."""
    return [permutation_weight(p) for p in permutations(range(1, n + 1))]


def star_weights_match_lp(n: int) -> bool:
    """Each (π, π^c) and the LP weight of the Newt(U_n) vertex it selects give one initial ideal."""
    basis = claimed_ugb_star(n)
    polytope = _star_newton(n)
    for weight in star_vertex_weights(n):
        selected = argmax_vertices(polytope, weight)
        if len(selected) != 1:
            return False
        lp_weight = normal_cone_weight(polytope, selected[0])
        first = initial_ideal(reduced_gb(basis, WeightOrder.of(weight)))
        second = initial_ideal(reduced_gb(basis, WeightOrder.of(lp_weight)))
        if first != second:
            return False
    return True


def grobner_fibers(matrix: IntMatrix, universal_basis: Iterable[Binomial]) -> List[LatticePolytope]:
    """conv(fiber(M, b)) for every distinct degree b = M·u⁺ of a UGB element."""
    degrees: Set[Tuple[int, ...]] = {tuple(matrix.apply(b.plus)) for b in universal_basis}
    fibers = []
    for degree in sorted(degrees):
        points = sorted(fiber(matrix, degree))
        logger.debug(f"Gröbner fiber at {degree}: {len(points)} monomials")
        fibers.append(extreme_points(points))
    return fibers


def state_polytope_fibers(matrix: IntMatrix, universal_basis: Iterable[Binomial]) -> LatticePolytope:
    """Minkowski sum of all Gröbner fibers."""
    fibers = grobner_fibers(matrix, universal_basis)
    if not fibers:
        return extreme_points([tuple([0] * matrix.cols)])
    logger.info(f"Summing {len(fibers)} Gröbner fibers")
    return minkowski(fibers)


def initial_ideals_distinct(result: StatePolytopeResult) -> bool:
    ideals = [entry.ideal for entry in result.vertices]
    return len(set(ideals)) == len(ideals) == result.polytope.vertex_count


def normal_fans_agree(first: LatticePolytope, second: LatticePolytope,
                      seed: Optional[int] = None, samples: Optional[int] = None) -> bool:
    """
    Compare two normal fans exactly, cone by cone.

    Each vertex of the first polytope is matched to the vertex of the second
    that its interior LP weight selects; the match must be a bijection and
    matched vertices must have the same primitive edge directions (equal
    normal cones). Seeded random weights then cross-check the bijection.
    """
    if first.ambient_dim != second.ambient_dim:
        raise DimensionMismatchError("Normal fans live in different ambient spaces")
    if first.vertex_count != second.vertex_count:
        return False
    forward: Dict[Point, Point] = {}
    for vertex in first.vertices:
        selected = argmax_vertices(second, normal_cone_weight(first, vertex))
        if len(selected) != 1:
            logger.debug(f"Interior weight of {vertex} selects {len(selected)} vertices of the second polytope")
            return False
        forward[vertex] = selected[0]
    if len(set(forward.values())) != len(forward):
        return False

    first_cones, second_cones = edge_directions(first), edge_directions(second)
    for a, b in forward.items():
        if first_cones[a] != second_cones[b]:
            logger.debug(f"Normal cones at {a} and {b} differ")
            return False

    rng = random.Random(settings.random_seed if seed is None else seed)
    count = settings.random_weight_samples if samples is None else samples
    bound = settings.random_weight_range
    for _ in range(count):
        weight = tuple(rng.randint(-bound, bound) for _ in range(first.ambient_dim))
        left, right = argmax_vertices(first, weight), argmax_vertices(second, weight)
        if sorted(forward[v] for v in left) != sorted(right):
            logger.debug(f"Weight {weight} breaks the vertex correspondence")
            return False
    return True


# ---------------------------------------------------------------------------
# Explicit polytopes
# ---------------------------------------------------------------------------

def _unit_sum(size: int, indices: Iterable[int]) -> Tuple[int, ...]:
    vector = [0] * size
    for i in indices:
        vector[i - 1] += 1
    return tuple(vector)


def permutohedron(n: int) -> LatticePolytope:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return extreme_points(list(permutations(range(1, n + 1))))


def qbar(n: int) -> LatticePolytope:
    """Q̄_n = Σ_{S ∈ 𝓘_n} Δ_S in R^{n+1}."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return minkowski([standard_simplex(S, n + 1) for S in family_I(n)])


def tau(i: int, permutation: Sequence[int]) -> Tuple[int, ...]:
    """Zero every entry ≤ i and append binom(i+1, 2)."""
    return tuple(p if p > i else 0 for p in permutation) + (comb(i + 1, 2),)


def qbar_vertices_formula(n: int) -> Set[Tuple[int, ...]]:
    return {tau(i, p) for i in range(n + 1) for p in permutations(range(1, n + 1))}


def qbar_halfspaces(n: int) -> Tuple[Tuple[Halfspace, ...], Halfspace]:
    """
    Facets of Q̄_n indexed by Î_n ∖ {[n+1]}, and the equality Σ x_i = binom(n+1, 2).

    Normals are 0/1 indicator vectors of S with right-hand side binom(|S|, 2).
    """
    size = n + 1
    facets = []
    for support in closure_I(n):
        if len(support) == size:
            continue
        normal = tuple(1 if j + 1 in support else 0 for j in range(size))
        facets.append(Halfspace(normal, Fraction(comb(len(support), 2))))
    equality = Halfspace(tuple([1] * size), Fraction(comb(size, 2)))
    return tuple(sorted(facets)), equality


def stellohedron(n: int) -> LatticePolytope:
    """Σ_{S ∈ Î_n} Δ_S: the graph associahedron of the star on n+1 nodes."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return minkowski([standard_simplex(S, n + 1) for S in closure_I(n)])


def pair_state_polytope(n: int) -> LatticePolytope:
    """Q_n: n segments and binom(n, 2) triangles in R^{3n+1}."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    size = 3 * n + 1
    summands = []
    for i in range(n):
        summands.append(extreme_points([
            _unit_sum(size, (3 * i + 1, 3 * i + 3)),
            _unit_sum(size, (3 * i + 2, size)),
        ]))
    for i in range(n):
        for j in range(i + 1, n):
            summands.append(extreme_points([
                _unit_sum(size, (3 * i + 1, 3 * i + 3, 3 * j + 2)),
                _unit_sum(size, (3 * j + 1, 3 * j + 3, 3 * i + 2)),
                _unit_sum(size, (3 * i + 2, 3 * j + 2, size)),
            ]))
    return minkowski(summands)


def qbar_projection(n: int) -> LatticePolytope:
    """Q_n projected on the coordinates 3i+1 (i < n) and 3n+1."""
    coordinates = [3 * i for i in range(n)] + [3 * n]
    return project(pair_state_polytope(n), coordinates)


def is_simple(polytope: LatticePolytope) -> bool:
    """Every vertex lies on exactly dim facets."""
    polytope = hull_halfspaces(polytope)
    if polytope.dim == 0:
        return True
    return all(
        sum(1 for f in polytope.facets if f.is_tight(v)) == polytope.dim
        for v in polytope.vertices
    )


# ---------------------------------------------------------------------------
# The star code and the permutohedron
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _star_newton(n: int) -> LatticePolytope:
    return newton(claimed_ugb_star(n))


def star_state_map(n: int) -> Tuple[IntMatrix, Tuple[int, ...]]:
    """
    (L, v) with l_ij = 1 iff i = j or i = j + n, and v = (n − 1)(e_{n+1} + ⋯ + e_{2n}).

    Vertices of Newt(U_n) satisfy x_i + x_{n+i} = n − 1, so x ↦ Lx − v zeroes
    the second block and fixes the first.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    size = 2 * n
    rows = [[1 if i == j or i == j + n else 0 for j in range(size)] for i in range(size)]
    shift = tuple(n - 1 if i >= n else 0 for i in range(size))
    return IntMatrix.from_rows(rows, size), shift


def apply_star_state_map(n: int) -> LatticePolytope:
    """f(Newt(U_n)) with f(x) = Lx − v."""
    matrix, shift = star_state_map(n)
    return apply_affine(_star_newton(n), matrix, tuple(-x for x in shift))


def shifted_permutohedron(n: int) -> LatticePolytope:
    """(Π_n − (1,…,1)) × {0}^n."""
    return extreme_points([tuple(p - 1 for p in perm) + (0,) * n for perm in permutations(range(1, n + 1))])


def weyl_chamber_directions(permutation: Sequence[int]) -> frozenset:
    """
    Directions d with C_π = {x : x·d ≤ 0 for all d}, where C_π is the chamber
    x_{π⁻¹(1)} ≤ x_{π⁻¹(2)} ≤ ⋯ ≤ x_{π⁻¹(n)}.
    """
    n = len(permutation)
    if sorted(permutation) != list(range(1, n + 1)):
        raise ValueError(f"{tuple(permutation)} is not a permutation")
    position = {value: index for index, value in enumerate(permutation)}
    directions = set()
    for k in range(1, n):
        d = [0] * n
        d[position[k]] = 1
        d[position[k + 1]] = -1
        directions.add(tuple(d))
    return frozenset(directions)


def weyl_chamber_check(permutation: Sequence[int]) -> bool:
    """
    The normal cone of Π_n at the vertex π is the chamber C_π, the weight
    (π, π^c) restricted to its first n coordinates lies in the interior of
    C_π, π is the unique maximizer of that weight over Π_n, and (π, π^c)
    strictly selects the vertex (π, π^c) − 1 of Newt(U_n).
    """
    chamber = weyl_chamber_directions(permutation)
    n = len(permutation)
    polytope = permutohedron(n)
    vertex = as_point(permutation)
    if edge_directions(polytope)[vertex] != chamber:
        return False
    weight = permutation_weight(permutation)
    leading = weight[:n]
    if any(dot(leading, d) >= 0 for d in chamber):
        return False
    if argmax_vertices(polytope, leading) != [vertex]:
        return False
    if n < 2:
        return True
    expected = as_point(tuple(x - 1 for x in weight))
    return argmax_vertices(_star_newton(n), weight) == [expected]
