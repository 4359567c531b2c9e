"""
Nested Sets Module
Building sets, building closures, nested-set complexes and the counting
identities around them (vertex counts, Delannoy statistics).
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from app.exceptions import NotBuildingSetError

logger = logging.getLogger(__name__)

Subset = FrozenSet[int]


def _ordered(members: Iterable[Subset]) -> Tuple[Subset, ...]:
    return tuple(sorted(set(members), key=lambda s: (len(s), sorted(s))))


@dataclass(frozen=True)
class SetFamily:
    """A family of nonempty subsets of the ground set [ground]."""

    ground: int
    members: Tuple[Subset, ...]

    def __post_init__(self):
        for member in self.members:
            if not member:
                raise ValueError("Set families hold nonempty subsets only")
            if not all(1 <= i <= self.ground for i in member):
                raise ValueError(f"{sorted(member)} is not a subset of [{self.ground}]")

    @classmethod
    def of(cls, ground: int, members: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(ground, _ordered(frozenset(m) for m in members))

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, subset) -> bool:
        return frozenset(subset) in self.members

    def maximal_members(self) -> List[Subset]:
        return [s for s in self.members if not any(s < t for t in self.members)]


@dataclass(frozen=True)
class NestedSet:
    members: Tuple[Subset, ...]

    @classmethod
    def of(cls, members: Iterable[Iterable[int]]) -> "NestedSet":
        return cls(_ordered(frozenset(m) for m in members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.members)


def family_I(n: int) -> SetFamily:
    """𝓘_n = {{i, n+1}} ∪ {{i, j, n+1}} on the ground set [n+1]."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    top = n + 1
    members = [{i, top} for i in range(1, n + 1)]
    members += [{i, j, top} for i, j in combinations(range(1, n + 1), 2)]
    return SetFamily.of(top, members)


def closure_I(n: int) -> SetFamily:
    """Î_n: the singletons of [n] and J ∪ {n+1} for every J ⊆ [n]."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    top = n + 1
    members = [{i} for i in range(1, n + 1)]
    for size in range(n + 1):
        members += [set(J) | {top} for J in combinations(range(1, n + 1), size)]
    return SetFamily.of(top, members)


def is_building_set(family: SetFamily) -> bool:
    members = set(family.members)
    if any(frozenset({i}) not in members for i in range(1, family.ground + 1)):
        return False
    return all(a | b in members for a, b in combinations(family.members, 2) if a & b)


def _overlap_connected(pieces: Sequence[Subset]) -> bool:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(pieces)))
    graph.add_edges_from((i, j) for i, j in combinations(range(len(pieces)), 2) if pieces[i] & pieces[j])
    return nx.is_connected(graph)


def building_closure(family: SetFamily) -> SetFamily:
    """
    Smallest building set containing the family.

    S belongs iff |S| = 1, or the members of the family inside S cover S and
    their overlap graph is connected.
    """
    ground = range(1, family.ground + 1)
    result = []
    for size in range(1, family.ground + 1):
        for subset in combinations(ground, size):
            S = frozenset(subset)
            if size == 1:
                result.append(S)
                continue
            inside = [m for m in family.members if m <= S]
            if inside and frozenset().union(*inside) == S and _overlap_connected(inside):
                result.append(S)
    return SetFamily.of(family.ground, result)


def _union_in_family(chosen: Sequence[Subset], members: set) -> bool:
    """Some ≥2 pairwise disjoint sets among chosen have their union in members."""
    for size in range(2, len(chosen) + 1):
        for group in combinations(chosen, size):
            if all(not (a & b) for a, b in combinations(group, 2)) and frozenset().union(*group) in members:
                return True
    return False


def _compatible(candidate: Subset, chosen: Sequence[Subset], members: set) -> bool:
    for other in chosen:
        if not (candidate <= other or other <= candidate or not candidate & other):
            return False
    disjoint = [other for other in chosen if not candidate & other]
    for size in range(1, len(disjoint) + 1):
        for group in combinations(disjoint, size):
            if all(not (a & b) for a, b in combinations(group, 2)):
                if candidate.union(*group) in members:
                    return False
    return True


def is_nested(nested: NestedSet, building: SetFamily) -> bool:
    members = set(building.members)
    if any(m not in members for m in nested.members):
        return False
    for a, b in combinations(nested.members, 2):
        if not (a <= b or b <= a or not a & b):
            return False
    if _union_in_family(nested.members, members):
        return False
    return all(m in nested.members for m in building.maximal_members())


def maximal_nested_sets(building: SetFamily) -> List[NestedSet]:
    """
    Enumerate every inclusion-maximal nested set.

    Raises:
        NotBuildingSetError: If the family is not a building set
    """
    if not is_building_set(building):
        raise NotBuildingSetError("maximal_nested_sets needs a building set")
    members = set(building.members)
    base = building.maximal_members()
    rest = [m for m in building.members if m not in base]
    maximal: List[NestedSet] = []

    def extend(chosen: List[Subset], start: int):
        addable = False
        for index, candidate in enumerate(rest):
            if candidate in chosen or not _compatible(candidate, chosen, members):
                continue
            addable = True
            if index >= start:
                extend(chosen + [candidate], index + 1)
        if not addable:
            maximal.append(NestedSet.of(chosen))

    extend(list(base), 0)
    maximal.sort(key=lambda N: [sorted(m) for m in N.members])
    logger.debug(f"{len(maximal)} maximal nested sets on a building set of {len(building)} members")
    return maximal


def is_chain_form(nested: NestedSet, n: int) -> bool:
    """k disjoint singletons of [n], then their union with n+1, then one new element per step."""
    if len(nested) != n + 1:
        return False
    singletons = [m for m in nested.members if len(m) == 1 and n + 1 not in m]
    chain = sorted((m for m in nested.members if m not in singletons), key=len)
    current = frozenset().union(*singletons) | {n + 1}
    if not chain or chain[0] != current:
        return False
    for previous, following in zip(chain, chain[1:]):
        if not previous < following or len(following - previous) != 1:
            return False
    return chain[-1] == frozenset(range(1, n + 2))


def nested_set_vertex(nested: NestedSet, building: SetFamily, summands: Iterable[Iterable[int]]) -> Tuple[int, ...]:
    """
    Vertex of Σ_{S ∈ summands} Δ_S selected by a maximal nested set.

    Each Δ_S contributes e_t, where t is the top element (the one element not
    covered by its children) of the smallest member of N containing S.
    """
    vector = [0] * building.ground
    for summand in summands:
        S = frozenset(summand)
        containing = [m for m in nested.members if S <= m]
        if not containing:
            raise ValueError(f"No member of the nested set contains {sorted(S)}")
        smallest = min(containing, key=len)
        children = [m for m in nested.members if m < smallest]
        free = smallest - frozenset().union(*children) if children else smallest
        if len(free) != 1:
            raise ValueError(f"{sorted(smallest)} has no unique top element in this nested set")
        vector[next(iter(free)) - 1] += 1
    return tuple(vector)


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------

def vertex_count_formula(n: int) -> int:
    """Σ binom(n,i)·i! which equals Σ n!/i!."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    by_subsets = sum(comb(n, i) * factorial(i) for i in range(n + 1))
    by_quotients = sum(factorial(n) // factorial(i) for i in range(n + 1))
    if by_subsets != by_quotients:
        raise ArithmeticError(f"Vertex count identity fails at n={n}")
    return by_subsets


def delannoy_by_diagonals(m: int, k: int) -> int:
    """Lattice paths (0,0) → (m,m) with steps R, U, D using exactly k diagonal steps."""
    if m < 0 or k < 0:
        raise ValueError("m and k must be nonnegative")
    if k > m:
        return 0
    table = [[[0] * (k + 1) for _ in range(m + 1)] for _ in range(m + 1)]
    table[0][0][0] = 1
    for x in range(m + 1):
        for y in range(m + 1):
            for d in range(k + 1):
                count = table[x][y][d]
                if not count:
                    continue
                if x < m:
                    table[x + 1][y][d] += count
                if y < m:
                    table[x][y + 1][d] += count
                if x < m and y < m and d < k:
                    table[x + 1][y + 1][d + 1] += count
    return table[m][m][k]


def delannoy(m: int) -> int:
    return sum(delannoy_by_diagonals(m, k) for k in range(m + 1))


def conjectured_face_number(n: int, k: int) -> int:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return comb(n - 1, k) * comb(2 * (n - 1), n - 1)


@dataclass(frozen=True)
class ConjectureRow:
    k: int
    computed: Optional[int]
    conjectured: int
    delannoy: int

    @property
    def matches(self) -> bool:
        return self.computed == self.conjectured


def conjecture_report(n: int, f_vector: Sequence[int]) -> List[ConjectureRow]:
    """Tabulate computed face numbers against the conjectured ones; never asserts."""
    rows = []
    for k in range(max(len(f_vector), n)):
        computed = f_vector[k] if k < len(f_vector) else None
        rows.append(ConjectureRow(k, computed, conjectured_face_number(n, k), delannoy_by_diagonals(n - 1, k)))
    mismatches = sum(1 for row in rows if not row.matches)
    if mismatches:
        logger.info(f"Face numbers differ from the conjectured values in {mismatches} of {len(rows)} rows")
    return rows
