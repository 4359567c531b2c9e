"""
Toric Algebra Module
Binomial arithmetic for toric ideals I_M = ker π_M: homogeneity witnesses,
fibers, Graver bases, Lawrence liftings, unimodularity tests, weight orders,
Buchberger completion, initial ideals and universal Gröbner bases.

Binomials are stored as signed exponent vectors u = u⁺ − u⁻, so common
factors cancel automatically. This is reduction modulo the saturated
(toric) ideal, which is exactly the ideal every routine here works in.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import sympy

from app.config import settings
from app.core.codes import NeuralCode, star_code
from app.core.exactgeom import IntMatrix, _independent_rows, dot, from_sympy
from app.exceptions import DeskScaleError, InhomogeneousMatrixError, ReductionLimitError

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


# ---------------------------------------------------------------------------
# Monomial orders, binomials, ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightOrder:
    """Weight vector refined by graded reverse lexicographic order on t_1 > t_2 > …"""

    weight: Optional[Tuple[Fraction, ...]] = None

    @classmethod
    def of(cls, weight: Optional[Iterable] = None) -> "WeightOrder":
        return cls(None if weight is None else tuple(Fraction(w) for w in weight))

    def greater(self, a: Sequence[int], b: Sequence[int]) -> bool:
        """True iff t^a ≻ t^b."""
        if self.weight is not None:
            wa, wb = dot(self.weight, a), dot(self.weight, b)
            if wa != wb:
                return wa > wb
        da, db = sum(a), sum(b)
        if da != db:
            return da > db
        for x, y in zip(reversed(a), reversed(b)):
            if x != y:
                return x < y
        return False


def _positive_part(u: Sequence[int]) -> Exponent:
    return tuple(x if x > 0 else 0 for x in u)


def _negative_part(u: Sequence[int]) -> Exponent:
    return tuple(-x if x < 0 else 0 for x in u)


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _format_monomial(exponent: Sequence[int]) -> str:
    factors = []
    for i, power in enumerate(exponent):
        if power == 1:
            factors.append(f"t{i + 1}")
        elif power > 1:
            factors.append(f"t{i + 1}^{power}")
    return "*".join(factors) if factors else "1"


@dataclass(frozen=True, order=True)
class Binomial:
    """t^{u⁺} − t^{u⁻} stored as the signed vector u."""

    u: Tuple[int, ...]

    def __post_init__(self):
        if not any(self.u):
            raise ValueError("The zero vector is not a binomial")

    @classmethod
    def from_monomials(cls, plus: Sequence[int], minus: Sequence[int]) -> "Binomial":
        return cls(tuple(a - b for a, b in zip(plus, minus)))

    @classmethod
    def from_terms(cls, size: int, plus: Iterable[int], minus: Iterable[int]) -> "Binomial":
        """Build from 1-based variable indices, e.g. from_terms(4, (1, 4), (2, 3))."""
        vector = [0] * size
        for i in plus:
            vector[i - 1] += 1
        for i in minus:
            vector[i - 1] -= 1
        return cls(tuple(vector))

    @property
    def plus(self) -> Exponent:
        return _positive_part(self.u)

    @property
    def minus(self) -> Exponent:
        return _negative_part(self.u)

    @property
    def degree(self) -> int:
        return max(sum(self.plus), sum(self.minus))

    def __neg__(self) -> "Binomial":
        return Binomial(tuple(-x for x in self.u))

    def canonical(self) -> "Binomial":
        """Sign with a positive first nonzero entry."""
        lead = next(x for x in self.u if x != 0)
        return self if lead > 0 else -self

    def oriented(self, order: WeightOrder) -> "Binomial":
        """Sign with the order-leading monomial as the positive part."""
        return self if order.greater(self.plus, self.minus) else -self

    def __str__(self) -> str:
        return f"{_format_monomial(self.plus)} - {_format_monomial(self.minus)}"


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generators."""

    generators: FrozenSet[Exponent]

    @classmethod
    def from_generators(cls, monomials: Iterable[Sequence[int]]) -> "MonomialIdeal":
        unique = sorted({tuple(m) for m in monomials}, key=lambda m: (sum(m), m))
        minimal: List[Exponent] = []
        for monomial in unique:
            if not any(_divides(g, monomial) for g in minimal):
                minimal.append(monomial)
        return cls(frozenset(minimal))

    def contains(self, monomial: Sequence[int]) -> bool:
        return any(_divides(g, monomial) for g in self.generators)

    def sorted_generators(self) -> List[Exponent]:
        return sorted(self.generators, key=lambda m: (sum(m), tuple(-x for x in m)))

    def degree_part_sum(self, degree: int, size: int) -> Tuple[int, ...]:
        """Σ of all exponent vectors a with |a| = degree and t^a in the ideal."""
        total = [0] * size
        for exponent in monomials_of_degree(size, degree):
            if self.contains(exponent):
                total = [x + y for x, y in zip(total, exponent)]
        return tuple(total)


def monomials_of_degree(size: int, degree: int):
    """Yield every exponent vector of the given total degree in size variables."""
    if size == 0:
        if degree == 0:
            yield ()
        return
    for chosen in combinations_with_replacement(range(size), degree):
        vector = [0] * size
        for j in chosen:
            vector[j] += 1
        yield tuple(vector)


@dataclass(frozen=True)
class GroebnerBasis:
    """Binomials with their leading term as positive part, under a weight order."""

    binomials: Tuple[Binomial, ...]
    order: WeightOrder
    reduced: bool = False

    def leading_terms(self) -> List[Exponent]:
        return [b.plus for b in self.binomials]

    @property
    def max_degree(self) -> int:
        return max((b.degree for b in self.binomials), default=0)

    def canonical_set(self) -> FrozenSet[Binomial]:
        return frozenset(b.canonical() for b in self.binomials)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

def code_matrix(code: NeuralCode) -> IntMatrix:
    """Columns are the nonzero codewords in construction order."""
    return IntMatrix.from_columns(list(code.nonzero_words), rows=code.n)


def is_homogeneous(matrix: IntMatrix) -> Optional[Tuple[Fraction, ...]]:
    """
    Find a rational w with a·w = 1 for every column a.

    Returns:
        A witness (free parameters of the solution set set to zero), or None
    """
    if matrix.cols == 0:
        return tuple(Fraction(0) for _ in range(matrix.rows))
    system = matrix.transpose().to_sympy()
    ones = sympy.ones(matrix.cols, 1)
    try:
        solution, parameters = system.gauss_jordan_solve(ones)
    except ValueError:
        return None
    if parameters.shape[0]:
        solution = solution.subs({p: 0 for p in parameters})
    return tuple(from_sympy(x) for x in solution)


def is_homogeneity_witness(matrix: IntMatrix, weight: Sequence) -> bool:
    return all(dot(column, weight) == 1 for column in matrix.columns())


def lawrence(matrix: IntMatrix) -> IntMatrix:
    """Λ(M) = [[M, 0], [Id, Id]]."""
    k = matrix.cols
    top = matrix.hstack(IntMatrix.zeros(matrix.rows, k))
    bottom = IntMatrix.identity(k).hstack(IntMatrix.identity(k))
    return top.vstack(bottom)


def is_lawrence(matrix: IntMatrix) -> bool:
    """Recognize the literal block form [[A, 0], [Id, Id]]."""
    if matrix.cols % 2 or matrix.rows < matrix.cols // 2:
        return False
    k = matrix.cols // 2
    if matrix.cols == 0:
        return True
    top_rows = matrix.rows - k
    expected = lawrence(matrix.submatrix(range(top_rows), range(k)))
    return expected == matrix


def row_transform_star(matrix: IntMatrix) -> IntMatrix:
    """
    Replace the last row A_{n+1} of the star matrix with A_{n+1} − A_2 − ⋯ − A_n.

    Raises:
        ValueError: If the matrix is not an (n+1) × 2n star matrix
    """
    n = matrix.rows - 1
    if n < 1 or matrix.cols != 2 * n:
        raise ValueError(f"Expected an (n+1) x 2n star matrix, got {matrix.rows}x{matrix.cols}")
    if matrix != code_matrix(star_code(n)):
        raise ValueError("Matrix is not the star code matrix")
    last = list(matrix.row(n))
    for i in range(1, n):
        last = [a - b for a, b in zip(last, matrix.row(i))]
    return IntMatrix.from_rows(list(matrix.entries[:n]) + [last], matrix.cols)


def has_consecutive_ones(matrix: IntMatrix) -> bool:
    """True iff the ones of every row form one contiguous block."""
    if not matrix.is_binary():
        raise ValueError("Consecutive-ones test needs a 0/1 matrix")
    for row in matrix.entries:
        ones = [j for j, x in enumerate(row) if x]
        if ones and ones[-1] - ones[0] + 1 != len(ones):
            return False
    return True


def _all_minors_unit(matrix: IntMatrix) -> bool:
    if any(abs(x) > 1 for row in matrix.entries for x in row):
        return False
    for size in range(2, min(matrix.rows, matrix.cols) + 1):
        for rows in combinations(range(matrix.rows), size):
            for cols in combinations(range(matrix.cols), size):
                if abs(matrix.submatrix(rows, cols).determinant()) > 1:
                    logger.debug(f"Minor on rows {rows}, cols {cols} exceeds 1 in absolute value")
                    return False
    return True


def is_totally_unimodular(matrix: IntMatrix, brute_force: bool = False) -> bool:
    """
    Decide whether every square minor is 0 or ±1.

    Args:
        matrix: The matrix
        brute_force: Skip the consecutive-ones fast path

    Raises:
        DeskScaleError: If brute force is needed on more columns than the guard allows
    """
    if not brute_force and matrix.is_binary() and has_consecutive_ones(matrix):
        return True
    if matrix.cols > settings.tu_bruteforce_max_cols:
        raise DeskScaleError(
            f"{matrix.cols} columns exceed the brute-force minor guard of {settings.tu_bruteforce_max_cols}"
        )
    return _all_minors_unit(matrix)


def is_unimodular(matrix: IntMatrix) -> bool:
    """All nonzero maximal minors of a row basis share one absolute value."""
    if matrix.is_binary() and has_consecutive_ones(matrix):
        return True
    basis_rows = _independent_rows(matrix.entries, matrix.cols)
    rank = len(basis_rows)
    if rank == 0:
        return True
    if comb(matrix.cols, rank) > settings.unimodular_minor_limit:
        raise DeskScaleError(f"{comb(matrix.cols, rank)} maximal minors exceed the guard")
    values = set()
    for cols in combinations(range(matrix.cols), rank):
        value = abs(matrix.submatrix(basis_rows, cols).determinant())
        if value:
            values.add(value)
            if len(values) > 1:
                return False
    return True


def toric_ideal_is_zero(matrix: IntMatrix) -> bool:
    return matrix.rank() == matrix.cols


# ---------------------------------------------------------------------------
# Fibers and Graver bases
# ---------------------------------------------------------------------------

def _require_homogeneous(matrix: IntMatrix) -> Tuple[Fraction, ...]:
    witness = is_homogeneous(matrix)
    if witness is None:
        raise InhomogeneousMatrixError(
            "No homogeneity witness: the toric ideal is not homogeneous and fibers may be infinite"
        )
    return witness


def fiber(matrix: IntMatrix, target: Sequence[int]) -> Set[Exponent]:
    """
    All a ≥ 0 with M·a = b, by depth-first search over coordinates.

    Raises:
        InhomogeneousMatrixError: If no homogeneity witness bounds the search
    """
    witness = _require_homogeneous(matrix)
    if len(target) != matrix.rows:
        raise ValueError(f"Degree vector of length {len(target)} for {matrix.rows} rows")
    degree = dot(witness, target)
    if degree < 0 or Fraction(degree).denominator != 1:
        return set()
    degree = int(degree)
    columns = matrix.columns()
    nonnegative = all(x >= 0 for row in matrix.entries for x in row)
    results: Set[Exponent] = set()
    exponent = [0] * matrix.cols
    budget = [settings.fiber_monomial_limit]

    def search(j: int, remaining: int, residual: List[int]):
        budget[0] -= 1
        if budget[0] < 0:
            raise DeskScaleError("Fiber enumeration exceeded the monomial guard")
        if j == matrix.cols:
            if remaining == 0 and not any(residual):
                results.add(tuple(exponent))
            return
        column = columns[j]
        upper = remaining
        if nonnegative:
            for r, c in zip(residual, column):
                if c > 0:
                    upper = min(upper, r // c)
        if j == matrix.cols - 1:
            choices = [remaining] if remaining <= upper else []
        else:
            choices = range(upper + 1)
        for value in choices:
            exponent[j] = value
            search(j + 1, remaining - value, [r - value * c for r, c in zip(residual, column)])
        exponent[j] = 0

    search(0, degree, list(target))
    return results


def _monomials_by_fiber(matrix: IntMatrix, bound: int) -> List[Dict[Tuple[int, ...], List[Exponent]]]:
    """Group every monomial of degree ≤ bound by its image M·a, one dict per degree."""
    total = sum(comb(matrix.cols + d - 1, d) for d in range(1, bound + 1))
    if total > settings.fiber_monomial_limit:
        raise DeskScaleError(f"{total} monomials up to degree {bound} exceed the enumeration guard")
    columns = matrix.columns()
    by_degree: List[Dict[Tuple[int, ...], List[Exponent]]] = [defaultdict(list) for _ in range(bound + 1)]
    exponent = [0] * matrix.cols

    def extend(start: int, degree: int, image: Tuple[int, ...]):
        for j in range(start, matrix.cols):
            exponent[j] += 1
            shifted = tuple(x + y for x, y in zip(image, columns[j]))
            by_degree[degree + 1][shifted].append(tuple(exponent))
            if degree + 1 < bound:
                extend(j, degree + 1, shifted)
            exponent[j] -= 1

    extend(0, 0, tuple([0] * matrix.rows))
    return by_degree


def _support_mask(exponent: Sequence[int]) -> int:
    mask = 0
    for i, x in enumerate(exponent):
        if x:
            mask |= 1 << i
    return mask


def graver_with_certificate(matrix: IntMatrix, degree_bound: int) -> Tuple[FrozenSet[Binomial], bool]:
    """
    Enumerate the primitive binomials of degree ≤ bound.

    Every kernel vector with disjoint supports arises from a pair of monomials
    in one fiber. A candidate is primitive iff no primitive element of lower
    degree is conformal to it (same-degree conformal vectors coincide).

    Returns:
        (elements, certified); certified is False when an element of degree
        equal to the bound was found
    """
    _require_homogeneous(matrix)
    if degree_bound < 1:
        raise ValueError(f"Degree bound must be positive, got {degree_bound}")
    by_degree = _monomials_by_fiber(matrix, degree_bound)
    primitive: List[Tuple[Exponent, Exponent, int, int]] = []
    found_at_bound = False
    for degree in range(1, degree_bound + 1):
        current = []
        for monomials in by_degree[degree].values():
            if len(monomials) < 2:
                continue
            masks = [_support_mask(m) for m in monomials]
            for i, j in combinations(range(len(monomials)), 2):
                if masks[i] & masks[j]:
                    continue
                plus, minus = monomials[i], monomials[j]
                if _has_conformal_reducer(primitive, plus, minus, masks[i], masks[j]):
                    continue
                current.append((plus, minus, masks[i], masks[j]))
        primitive.extend(current)
        if degree == degree_bound and current:
            found_at_bound = True
    elements = frozenset(Binomial.from_monomials(p, m).canonical() for p, m, _, _ in primitive)
    if found_at_bound:
        logger.warning(
            f"Graver enumeration found elements at the degree bound {degree_bound}; completeness not certified"
        )
    logger.info(f"Graver basis: {len(elements)} primitive binomials up to degree {degree_bound}")
    return elements, not found_at_bound


def _has_conformal_reducer(primitive, plus, minus, plus_mask, minus_mask) -> bool:
    for g_plus, g_minus, gp_mask, gm_mask in primitive:
        if gp_mask & ~plus_mask == 0 and gm_mask & ~minus_mask == 0:
            if _divides(g_plus, plus) and _divides(g_minus, minus):
                return True
        if gm_mask & ~plus_mask == 0 and gp_mask & ~minus_mask == 0:
            if _divides(g_minus, plus) and _divides(g_plus, minus):
                return True
    return False


def graver(matrix: IntMatrix, degree_bound: int) -> FrozenSet[Binomial]:
    """Graver basis up to the degree bound (see graver_with_certificate)."""
    elements, _ = graver_with_certificate(matrix, degree_bound)
    return elements


def default_degree_bound(claimed: Iterable[Binomial]) -> int:
    """2·(max degree of a claimed basis) + 2."""
    return 2 * max((b.degree for b in claimed), default=1) + 2


# ---------------------------------------------------------------------------
# Claimed universal Gröbner bases
# ---------------------------------------------------------------------------

def inversions(permutation: Sequence[int]) -> Set[Tuple[int, int]]:
    """Inv(π) = {(i, j) : i < j, π_i > π_j}, 1-based."""
    n = len(permutation)
    return {
        (i + 1, j + 1)
        for i in range(n)
        for j in range(i + 1, n)
        if permutation[i] > permutation[j]
    }


def permutation_weight(permutation: Sequence[int]) -> Tuple[int, ...]:
    """(π, π^c) with π^c_i = n + 1 − π_i."""
    n = len(permutation)
    return tuple(permutation) + tuple(n + 1 - p for p in permutation)


def claimed_ugb_star(n: int) -> FrozenSet[Binomial]:
    """U_n = {t_i t_{n+j} − t_j t_{n+i} : 1 ≤ i < j ≤ n}."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    size = 2 * n
    return frozenset(
        Binomial.from_terms(size, (i, n + j), (j, n + i)).canonical()
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    )


def claimed_ugb_pair(n: int) -> FrozenSet[Binomial]:
    """V_n = V'_n ∪ V''_n on the 3n+1 columns of M_n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    size = 3 * n + 1
    quadratics = {
        Binomial.from_terms(size, (3 * i + 1, 3 * i + 3), (3 * i + 2, size)).canonical()
        for i in range(n)
    }
    cubics = {
        Binomial.from_terms(
            size, (3 * i + 1, 3 * i + 3, 3 * j + 2), (3 * j + 1, 3 * j + 3, 3 * i + 2)
        ).canonical()
        for i in range(n)
        for j in range(i + 1, n)
    }
    return frozenset(quadratics | cubics)


def degree_census(binomials: Iterable[Binomial]) -> Dict[int, int]:
    census: Dict[int, int] = defaultdict(int)
    for b in binomials:
        census[b.degree] += 1
    return dict(sorted(census.items()))


# ---------------------------------------------------------------------------
# Reduction and Buchberger completion
# ---------------------------------------------------------------------------

def reduce(binomial: Binomial, basis: Iterable[Binomial], order: WeightOrder) -> Optional[Binomial]:
    """
    Fully reduce both terms of a binomial against a set of binomials.

    Returns:
        The normal form oriented by the order, or None when it reduces to zero

    Raises:
        ReductionLimitError: If the step budget is exhausted
    """
    reducers = [g.oriented(order) for g in basis]
    current = list(binomial.u)
    for _ in range(settings.reduction_step_limit):
        if not any(current):
            return None
        plus, minus = _positive_part(current), _negative_part(current)
        plus_leads = order.greater(plus, minus)
        lead, trail = (plus, minus) if plus_leads else (minus, plus)
        step = None
        for term, sign in ((lead, 1 if plus_leads else -1), (trail, -1 if plus_leads else 1)):
            reducer = next((g for g in reducers if _divides(g.plus, term)), None)
            if reducer is not None:
                step = [x - sign * y for x, y in zip(current, reducer.u)]
                break
        if step is None:
            return Binomial(tuple(current)).oriented(order)
        current = step
    raise ReductionLimitError(f"Reduction of {binomial} exceeded {settings.reduction_step_limit} steps")


def _s_vector(first: Binomial, second: Binomial) -> Optional[Binomial]:
    difference = tuple(b - a for a, b in zip(first.u, second.u))
    return Binomial(difference) if any(difference) else None


def satisfies_buchberger_criterion(basis: Iterable[Binomial], order: WeightOrder) -> bool:
    """All S-pairs of the (oriented) set reduce to zero against it."""
    oriented = [g.oriented(order) for g in basis]
    for first, second in combinations(oriented, 2):
        if not _support_mask(first.plus) & _support_mask(second.plus):
            continue
        s = _s_vector(first, second)
        if s is not None and reduce(s, oriented, order) is not None:
            return False
    return True


def reduced_gb(generators: Iterable[Binomial], order: WeightOrder) -> GroebnerBasis:
    """
    Buchberger completion followed by minimization and interreduction.

    Args:
        generators: Binomials generating the ideal
        order: Weight order with grevlex tiebreak

    Returns:
        The reduced Gröbner basis, sorted, leading terms as positive parts
    """
    basis: List[Binomial] = []
    for g in sorted(set(b.canonical() for b in generators)):
        oriented = g.oriented(order)
        if oriented not in basis:
            basis.append(oriented)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop()
        first, second = basis[i], basis[j]
        if not _support_mask(first.plus) & _support_mask(second.plus):
            continue
        s = _s_vector(first, second)
        if s is None:
            continue
        remainder = reduce(s, basis, order)
        if remainder is not None:
            basis.append(remainder)
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))

    minimal: List[Binomial] = []
    for g in sorted(basis, key=lambda b: (sum(b.plus), b.plus)):
        if not any(_divides(h.plus, g.plus) for h in minimal):
            minimal.append(g)
    reduced = []
    for g in minimal:
        others = [h for h in minimal if h is not g]
        normal = reduce(g, others, order)
        if normal is not None:
            reduced.append(normal)
    reduced = sorted(set(reduced), key=lambda b: (b.degree, b.u))
    return GroebnerBasis(tuple(reduced), order, reduced=True)


def initial_ideal(basis: GroebnerBasis) -> MonomialIdeal:
    return MonomialIdeal.from_generators(basis.leading_terms())


def generated_in_degree(elements: Iterable[Binomial], generators: Iterable[Binomial],
                 order: Optional[WeightOrder] = None) -> bool:
    """Ideal membership of every element, by reduction against reduced_gb(generators)."""
    order = order or WeightOrder()
    basis = reduced_gb(generators, order)
    return all(reduce(e, basis.binomials, order) is None for e in elements)


# ---------------------------------------------------------------------------
# Universal Gröbner bases
# ---------------------------------------------------------------------------

def graver_equals_ugb(matrix: IntMatrix) -> bool:
    """Lawrence liftings and unimodular matrices have Graver basis = UGB."""
    if is_lawrence(matrix):
        return True
    try:
        return is_unimodular(matrix)
    except DeskScaleError:
        logger.info("Unimodularity test refused by the minor guard; using the state-polytope path")
        return False


def ugb(matrix: IntMatrix, degree_bound: int) -> FrozenSet[Binomial]:
    """
    Universal Gröbner basis of I_M.

    Unimodular and Lawrence matrices return the Graver basis directly. Otherwise
    the reduced Gröbner bases for one weight per vertex of Newt(Graver) are
    united; that normal fan refines the Gröbner fan.
    """
    _require_homogeneous(matrix)
    elements = graver(matrix, degree_bound)
    if graver_equals_ugb(matrix):
        logger.info(f"UGB via Graver shortcut: {len(elements)} binomials")
        return elements
    if not elements:
        return elements
    # Deferred: statepoly builds on this module.
    from app.core.statepoly import newton, normal_cone_weight

    polytope = newton(elements)
    logger.info(f"UGB via {len(polytope.vertices)} vertices of Newt(Graver)")
    union: Set[Binomial] = set()
    for vertex in polytope.vertices:
        weight = normal_cone_weight(polytope, vertex)
        union |= reduced_gb(elements, WeightOrder.of(weight)).canonical_set()
    return frozenset(union)


# ---------------------------------------------------------------------------
# Weighted grevlex degree test for 3-neuron codes
# ---------------------------------------------------------------------------

DEFAULT_THREE_NEURON_ORDER: Tuple[Tuple[int, ...], ...] = (
    (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1),
)


def weighted_grevlex_basis(
    code: NeuralCode,
    weight: Sequence[int] = (0, 0, 0, 1, 1, 1, 0),
    column_order: Sequence[Sequence[int]] = DEFAULT_THREE_NEURON_ORDER,
    degree_bound: int = 6,
) -> GroebnerBasis:
    """
    Reduced Gröbner basis of I_C under the weighted grevlex order whose weight
    entries are indexed by the nonzero 3-bit words in column_order.
    """
    if code.n != 3:
        raise ValueError(f"The weighted grevlex test applies to 3-neuron codes, got n={code.n}")
    positions = {tuple(word): i for i, word in enumerate(column_order)}
    if len(positions) != len(weight):
        raise ValueError("Weight vector and column order have different lengths")
    column_weights = [weight[positions[word]] for word in code.nonzero_words]
    generators = graver(code_matrix(code), degree_bound)
    return reduced_gb(generators, WeightOrder.of(column_weights))


def weighted_grevlex_degree_check(code: NeuralCode, **kwargs) -> bool:
    """True iff the weighted grevlex reduced Gröbner basis has degree ≤ 2."""
    return weighted_grevlex_basis(code, **kwargs).max_degree <= 2
