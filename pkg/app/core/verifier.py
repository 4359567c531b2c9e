"""
Verification Harness Module
Runs the twelve reproducibility checks (universal Gröbner bases, state
polytopes, equivalence maps, piercedness, unimodularity, the path-code
census and the face-number conjecture) and reports each as pass, fail,
evidence-only or refused.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from app.config import settings
from app.core.cache import ResultCache
from app.core.codes import (
    disjoint_curves_code,
    is_inductively_pierced,
    nested_curves_code,
    pair_code,
    path_code,
    star_code,
)
from app.core.exactgeom import IntMatrix, face_lattice, lattice_isomorphic
from app.core.nestedsets import (
    building_closure,
    closure_I,
    conjecture_report,
    family_I,
    is_chain_form,
    maximal_nested_sets,
    nested_set_vertex,
    vertex_count_formula,
)
from app.core.statepoly import (
    apply_star_state_map,
    initial_ideals_distinct,
    is_simple,
    normal_fans_agree,
    qbar,
    qbar_halfspaces,
    qbar_projection,
    qbar_vertices_formula,
    shifted_permutohedron,
    star_vertex_weights,
    star_weights_match_lp,
    state_polytope_alg35,
    state_polytope_fibers,
    stellohedron,
)
from app.core.toric import (
    WeightOrder,
    claimed_ugb_pair,
    claimed_ugb_star,
    code_matrix,
    default_degree_bound,
    degree_census,
    generated_in_degree,
    has_consecutive_ones,
    inversions,
    is_homogeneity_witness,
    is_homogeneous,
    is_totally_unimodular,
    lawrence,
    permutation_weight,
    reduced_gb,
    row_transform_star,
    toric_ideal_is_zero,
    ugb,
)
from app.exceptions import DeskScaleError
from app.models import ConjectureRowModel, VerificationReport

logger = logging.getLogger(__name__)

SUITES = ("star", "pair", "path", "all")

CheckOutcome = Tuple[Optional[bool], Dict]


# ---------------------------------------------------------------------------
# Shared computations
# ---------------------------------------------------------------------------

def path_degree_bound(lengths: Sequence[int]) -> int:
    """Degree bound for Graver enumeration on path codes."""
    return max(lengths) + 2


@lru_cache(maxsize=None)
def star_ugb(n: int):
    matrix = code_matrix(star_code(n))
    return matrix, ugb(matrix, default_degree_bound(claimed_ugb_star(n)))


@lru_cache(maxsize=None)
def pair_ugb(n: int):
    matrix = code_matrix(pair_code(n))
    return matrix, ugb(matrix, default_degree_bound(claimed_ugb_pair(n)))


@lru_cache(maxsize=None)
def path_ugb(lengths: Tuple[int, ...]):
    matrix = code_matrix(path_code(lengths))
    return matrix, ugb(matrix, path_degree_bound(lengths))


def _census_json(census: Dict[int, int]) -> Dict[str, int]:
    return {str(degree): count for degree, count in census.items()}


def _star_leading_terms(permutation: Sequence[int]) -> FrozenSet[Tuple[int, ...]]:
    """t_i t_{n+j} for inversions (i, j), t_j t_{n+i} for the other pairs."""
    n = len(permutation)
    inverted = inversions(permutation)
    terms = set()
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            first, second = ((i, n + j) if (i, j) in inverted else (j, n + i))
            vector = [0] * (2 * n)
            vector[first - 1] += 1
            vector[second - 1] += 1
            terms.add(tuple(vector))
    return frozenset(terms)


def conjecture_evidence(length: int, n: int, budget: Optional[float] = None) -> Tuple[List[int], List]:
    """
    Run codes → UGB → state polytope → f-vector for ℓ = (length, 0, …, 0) ∈ N^n.

    Args:
        length: First entry of ℓ
        n: Number of entries of ℓ
        budget: Wall-clock seconds allowed (default: CONJECTURE_TIME_BUDGET)

    Returns:
        (f-vector including the polytope itself, conjecture report rows)

    Raises:
        DeskScaleError: If the path is longer than the conjecture guard, or the
            budget runs out between the UGB, hull and face-lattice stages
    """
    if length > settings.conjecture_max_length:
        raise DeskScaleError(f"Path length {length} exceeds the conjecture guard")
    budget = settings.conjecture_time_budget if budget is None else budget
    started = time.monotonic()

    def checkpoint(stage: str):
        elapsed = time.monotonic() - started
        if elapsed >= budget:
            raise DeskScaleError(
                f"Conjecture case l={length}, n={n} used {elapsed:.1f}s of a {budget}s budget by the {stage} stage"
            )

    lengths = (length,) + (0,) * (n - 1)
    matrix, basis = path_ugb(lengths)
    checkpoint("UGB")
    result = state_polytope_alg35(matrix, basis)
    checkpoint("hull")
    lattice = face_lattice(result.polytope)
    f_vector = list(lattice.f_vector) + [1]
    return f_vector, conjecture_report(n, f_vector)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def check_star_ugb(n_max: int) -> CheckOutcome:
    values = {}
    passed = True
    for n in range(2, min(n_max, 5) + 1):
        _, computed = star_ugb(n)
        ok = computed == claimed_ugb_star(n) and len(computed) == comb(n, 2)
        values[f"n={n}"] = {"size": len(computed), "equal": ok}
        passed &= ok
    return passed, values


def check_pair_ugb(n_max: int) -> CheckOutcome:
    values = {}
    passed = True
    for n in range(1, min(n_max, 4) + 1):
        _, computed = pair_ugb(n)
        ok = computed == claimed_ugb_pair(n) and len(computed) == n + comb(n, 2)
        values[f"n={n}"] = {"size": len(computed), "census": _census_json(degree_census(computed)), "equal": ok}
        if n >= 2:
            quadratics = [b for b in computed if b.degree == 2]
            cubics = [b for b in computed if b.degree == 3]
            generated = generated_in_degree(cubics, quadratics)
            values[f"n={n}"]["cubics_from_quadratics"] = generated
            passed &= generated
        passed &= ok
    return passed, values


def check_star_initial_ideals(n_max: int) -> CheckOutcome:
    values = {}
    passed = True
    for n in range(2, min(n_max, 5) + 1):
        matrix, basis = star_ugb(n)
        result = state_polytope_alg35(matrix, basis, weights=star_vertex_weights(n))
        expected_vertices = {tuple(x - 1 for x in w) for w in star_vertex_weights(n)}
        vertices_ok = set(result.polytope.integer_vertices()) == expected_vertices
        ideals_ok = True
        for permutation in permutations(range(1, n + 1)):
            gb = reduced_gb(basis, WeightOrder.of(permutation_weight(permutation)))
            if frozenset(gb.leading_terms()) != _star_leading_terms(permutation):
                ideals_ok = False
                break
        lp_ok = star_weights_match_lp(n) if n <= 3 else None
        ok = (
            result.polytope.vertex_count == factorial(n)
            and initial_ideals_distinct(result)
            and vertices_ok
            and ideals_ok
            and lp_ok is not False
        )
        values[f"n={n}"] = {
            "vertices": result.polytope.vertex_count,
            "initial_ideals": len(result.vertices),
            "inversion_rule": ideals_ok,
            "lp_weights_agree": lp_ok,
        }
        passed &= ok
    return passed, values


def check_method_agreement(n_max: int) -> CheckOutcome:
    values = {}
    passed = True
    cases = [("star", n, star_ugb(n)) for n in range(2, min(n_max, 4) + 1)]
    cases += [("pair", n, pair_ugb(n)) for n in range(1, min(n_max, 3) + 1)]
    for family, n, (matrix, basis) in cases:
        first = state_polytope_alg35(matrix, basis).polytope
        second = state_polytope_fibers(matrix, basis)
        ok = normal_fans_agree(first, second)
        values[f"{family} n={n}"] = {"vertices": [first.vertex_count, second.vertex_count], "agree": ok}
        passed &= ok
    return passed, values


def check_star_map(n_max: int) -> CheckOutcome:
    values = {}
    passed = True
    for n in range(2, min(n_max, 5) + 1):
        ok = apply_star_state_map(n).vertex_set() == shifted_permutohedron(n).vertex_set()
        values[f"n={n}"] = ok
        passed &= ok
    return passed, values


def check_qbar(n_max: int) -> CheckOutcome:
    values = {}
    passed = True
    for n in range(1, min(n_max, 4) + 1):
        polytope = qbar(n)
        facets, equality = qbar_halfspaces(n)
        vertices = set(polytope.integer_vertices())
        building = closure_I(n)
        nested = maximal_nested_sets(building)
        nested_vertices = {nested_set_vertex(N, building, family_I(n)) for N in nested}
        entry = {
            "vertices": len(vertices),
            "tau_formula": vertices == qbar_vertices_formula(n),
            "count_formula": len(vertices) == vertex_count_formula(n),
            "simple": is_simple(polytope),
            "dim": polytope.dim,
            "facets_match": set(polytope.facets) == set(facets) and polytope.equalities == (equality,),
            "closure_lemma": building_closure(family_I(n)) == building,
            "nested_sets": len(nested),
            "chain_form": all(is_chain_form(N, n) for N in nested),
            "nested_vertices": nested_vertices == vertices,
        }
        if n <= 3:
            entry["projection"] = qbar_projection(n).vertex_set() == polytope.vertex_set()
        ok = entry["dim"] == n and all(v for k, v in entry.items() if isinstance(v, bool))
        values[f"n={n}"] = entry
        passed &= ok
    return passed, values


def check_stellohedron(n_max: int) -> CheckOutcome:
    values = {}
    passed = True
    for n in range(1, min(n_max, 3) + 1):
        first, second = face_lattice(qbar(n)), face_lattice(stellohedron(n))
        ok = lattice_isomorphic(first, second)
        values[f"n={n}"] = {"f_vector": list(first.f_vector), "isomorphic": ok}
        passed &= ok
    return passed, values


def check_piercing(n_max: int) -> CheckOutcome:
    values = {}
    passed = True
    codes = [(f"S_{n}", n, star_code(n)) for n in range(1, min(n_max, 5) + 1)]
    codes += [(f"P(2_{n})", n, pair_code(n)) for n in range(1, min(n_max, 4) + 1)]
    for name, n, code in codes:
        one = is_inductively_pierced(code, 1)
        zero = is_inductively_pierced(code, 0)
        ok = one.pierced and (n < 2 or not zero.pierced)
        values[name] = {"1-pierced": one.pierced, "0-pierced": zero.pierced, "removal": len(one.removal)}
        passed &= ok
    for n in range(1, 5):
        for name, code in ((f"disjoint_{n}", disjoint_curves_code(n)), (f"nested_{n}", nested_curves_code(n))):
            zero = is_inductively_pierced(code, 0).pierced
            ok = zero == toric_ideal_is_zero(code_matrix(code))
            values[name] = {"0-pierced": zero, "agrees_with_zero_ideal": ok}
            passed &= ok
    return passed, values


def check_unimodularity(n_max: int) -> CheckOutcome:
    values = {}
    passed = True
    for n in range(1, min(n_max, settings.pair_n_max) + 1):
        matrix = code_matrix(pair_code(n))
        ones = has_consecutive_ones(matrix)
        brute = is_totally_unimodular(matrix, brute_force=True) if n <= 2 else None
        values[f"M_{n}"] = {"consecutive_ones": ones, "brute_force_tu": brute}
        passed &= ones and brute is not False
    for n in range(1, min(n_max, 5) + 1):
        transformed = row_transform_star(code_matrix(star_code(n)))
        ok = transformed == lawrence(IntMatrix.from_rows([[1] * n], n))
        values[f"star_transform_{n}"] = ok
        passed &= ok
    return passed, values


def check_path_census(n_max: int) -> CheckOutcome:
    _, basis = path_ugb((5,))
    census = degree_census(basis)
    return census == {2: 9, 3: 11, 4: 3}, {"census": _census_json(census), "size": len(basis)}


def check_homogeneity(n_max: int) -> CheckOutcome:
    values = {}
    passed = True
    for n in range(1, min(n_max, 5) + 1):
        matrix = code_matrix(star_code(n))
        ok = is_homogeneity_witness(matrix, [1 if i == n else 0 for i in range(n + 1)])
        values[f"S_{n}"] = ok
        passed &= ok
    for n in range(1, min(n_max, 4) + 1):
        matrix = code_matrix(pair_code(n))
        ok = is_homogeneity_witness(matrix, [1 if i == 2 * n else 0 for i in range(2 * n + 1)])
        values[f"P(2_{n})"] = ok
        passed &= ok
    rejected = is_homogeneous(IntMatrix.from_columns([(1, 0), (2, 0)], rows=2)) is None
    values["inhomogeneous_rejected"] = rejected
    return passed and rejected, values


def check_conjecture(n_max: int) -> CheckOutcome:
    rows = []
    started = time.monotonic()
    for n in (1, 2):
        for length in range(1, settings.conjecture_max_length + 1):
            if length > min(n_max, settings.path_total_max):
                continue
            remaining = settings.conjecture_time_budget - (time.monotonic() - started)
            try:
                f_vector, report = conjecture_evidence(length, n, budget=remaining)
            except DeskScaleError as e:
                logger.warning(f"Conjecture time budget exhausted; remaining cases skipped ({e})")
                return None, {"rows": rows, "truncated": True}
            rows.append({
                "l": length,
                "n": n,
                "f_vector": f_vector,
                "report": [ConjectureRowModel.from_row(r).model_dump() for r in report],
            })
    return None, {"rows": rows, "truncated": False}


@dataclass(frozen=True)
class Check:
    check_id: str
    anchor: str
    statement: str
    suites: FrozenSet[str]
    guard: str
    runner: Callable[[int], CheckOutcome] = field(compare=False)
    evidence_only: bool = False


CHECKS: Tuple[Check, ...] = (
    Check("01", "UGB of the star code", "UGB(S_n) equals U_n up to sign, |U_n| = binom(n,2)",
          frozenset({"star"}), "star", check_star_ugb),
    Check("02", "UGB of the pair code", "UGB(P(2_n)) equals V_n, |V_n| = n + binom(n,2)",
          frozenset({"pair"}), "pair", check_pair_ugb),
    Check("03", "n! initial ideals of the star code",
          "n! vertices and initial ideals; (π,π^c) gives the Inv(π) leading terms",
          frozenset({"star"}), "star", check_star_initial_ideals),
    Check("04", "State polytope via fibers", "Initial-ideal and Gröbner-fiber state polytopes share a normal fan",
          frozenset({"star", "pair"}), "star", check_method_agreement),
    Check("05", "Star map to the permutohedron", "f(Newt(U_n)) = (Π_n − 1) × {0}",
          frozenset({"star"}), "star", check_star_map),
    Check("06", "Vertices and facets of Q̄_n",
          "τ-vertices, Σ n!/i! count, simple and n-dimensional, halfspace system, nested-set bijection",
          frozenset({"pair"}), "pair", check_qbar),
    Check("07", "Q̄_n and the stellohedron", "Face lattices of Q̄_n and stell_n are isomorphic",
          frozenset({"pair"}), "pair", check_stellohedron),
    Check("08", "Inductive piercings", "S_n and P(2_n) are 1- but not 0-inductively pierced; 0-piercing ⇔ zero ideal",
          frozenset({"star", "pair"}), "star", check_piercing),
    Check("09", "Total unimodularity", "M_n has consecutive ones and is TU; f(A) = Λ([1 … 1])",
          frozenset({"star", "pair"}), "star", check_unimodularity),
    Check("10", "UGB census of P(5)", "Nine quadratics, eleven cubics and three quartics",
          frozenset({"path"}), "path", check_path_census),
    Check("11", "Homogeneity witnesses", "e_{n+1} for S_n, e_{2n+1} for P(2_n), inhomogeneous input rejected",
          frozenset({"star", "pair"}), "star", check_homogeneity),
    Check("12", "Face-number conjecture", "Computed f-vectors against binom(n−1,k)·binom(2(n−1),n−1) and Delannoy counts",
          frozenset({"path"}), "path", check_conjecture, evidence_only=True),
)


def _guard_limit(guard: str) -> int:
    return {
        "star": settings.star_n_max,
        "pair": settings.pair_n_max,
        "path": settings.path_total_max,
    }[guard]


# ---------------------------------------------------------------------------
# Harness
# ---------------------------------------------------------------------------

class VerificationHarness:
    """Runs the checks of a suite, optionally reusing cached reports."""

    def __init__(self, jobs: Optional[int] = None, cache: Optional[ResultCache] = None):
        self.jobs = max(1, jobs or settings.jobs)
        self.cache = cache

    def select(self, suite: str) -> List[Check]:
        if suite not in SUITES:
            raise ValueError(f"Unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
        return [c for c in CHECKS if suite == "all" or suite in c.suites]

    def run_check(self, check: Check, n_max: int) -> VerificationReport:
        started = time.monotonic()
        base = {"check_id": check.check_id, "anchor": check.anchor, "statement": check.statement}
        limit = _guard_limit(check.guard)
        if n_max > limit:
            logger.warning(f"Check {check.check_id} refused: n_max={n_max} exceeds the {check.guard} guard {limit}")
            return VerificationReport(**base, status="refused", values={"guard": check.guard, "limit": limit})

        key = f"verify/{check.check_id}/{n_max}"
        if self.cache is not None:
            cached = self.cache.load(key)
            if cached is not None:
                logger.info(f"Check {check.check_id} served from cache")
                return VerificationReport(**cached)

        logger.info(f"Running check {check.check_id}: {check.anchor}")
        try:
            passed, values = check.runner(n_max)
        except DeskScaleError as e:
            logger.warning(f"Check {check.check_id} refused: {e}")
            return VerificationReport(**base, status="refused", values={"reason": str(e)},
                                      elapsed=round(time.monotonic() - started, 3))
        if check.evidence_only:
            status = "evidence-only"
        else:
            status = "pass" if passed else "fail"
        report = VerificationReport(**base, status=status, values=values,
                                    elapsed=round(time.monotonic() - started, 3))
        if status == "fail":
            logger.error(f"Check {check.check_id} failed: {values}")
        if self.cache is not None and status != "refused":
            self.cache.store(key, report.model_dump())
        return report

    def run(self, suite: str, n_max: int) -> List[VerificationReport]:
        checks = self.select(suite)
        logger.info(f"Running {len(checks)} checks of suite {suite!r} with n_max={n_max} on {self.jobs} workers")
        if self.jobs == 1:
            reports = [self.run_check(c, n_max) for c in checks]
        else:
            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                reports = list(pool.map(lambda c: self.run_check(c, n_max), checks))
        return sorted(reports, key=lambda r: r.check_id)


def exit_code(reports: Sequence[VerificationReport]) -> int:
    """0 when every check passes, 1 on any failure, 2 on a guard refusal."""
    statuses = {r.status for r in reports}
    if "fail" in statuses:
        return 1
    if "refused" in statuses:
        return 2
    return 0


# Convenience function
def run_suite(suite: str, n_max: int, jobs: Optional[int] = None,
              cache: Optional[ResultCache] = None) -> List[VerificationReport]:
    """
    Run every check of a suite.

    Args:
        suite: One of star, pair, path, all
        n_max: Largest instance size
        jobs: Worker threads (defaults to settings.jobs)
        cache: Optional report cache

    Returns:
        Reports sorted by check id
    """
    return VerificationHarness(jobs, cache).run(suite, n_max)
