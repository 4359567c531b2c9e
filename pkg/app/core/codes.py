"""
Neural Codes Module
Builds the star, pair and path code families, converts codes to abstract
descriptions, and decides k-piercings and k-inductive piercedness directly
from their definitions.
"""

import json
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Literal, Optional, Sequence, Tuple, Union

import networkx as nx
from networkx.algorithms.isomorphism import categorical_node_match

from app.config import settings
from app.exceptions import DeskScaleError

logger = logging.getLogger(__name__)

Codeword = Tuple[int, ...]
Zone = FrozenSet[int]


@dataclass(frozen=True)
class NeuralCode:
    """A combinatorial code on n neurons; words keep construction order, zero word first."""

    n: int
    words: Tuple[Codeword, ...]

    def __post_init__(self):
        zero = tuple([0] * self.n)
        if zero not in self.words:
            raise ValueError("A neural code must contain the zero word")
        if len(set(self.words)) != len(self.words):
            raise ValueError("Duplicate codewords")
        for word in self.words:
            if len(word) != self.n:
                raise ValueError(f"Codeword {word} does not have length {self.n}")
            if any(bit not in (0, 1) for bit in word):
                raise ValueError(f"Codeword {word} is not binary")

    @property
    def nonzero_words(self) -> Tuple[Codeword, ...]:
        return tuple(word for word in self.words if any(word))

    def word_set(self) -> FrozenSet[Codeword]:
        return frozenset(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word) -> bool:
        return tuple(word) in self.words


def _word(n: int, support: Iterable[int]) -> Codeword:
    """0/1 word of length n with ones at the given 1-based positions."""
    ones = set(support)
    return tuple(1 if i + 1 in ones else 0 for i in range(n))


def code_from_words(words: Iterable[Union[str, Sequence[int]]], n: Optional[int] = None) -> NeuralCode:
    """
    Build a code from "0101"-style strings or bit sequences.

    The zero word is added in front when missing; duplicates keep their first position.
    """
    parsed: List[Codeword] = []
    for word in words:
        bits = tuple(int(ch) for ch in word.strip()) if isinstance(word, str) else tuple(int(b) for b in word)
        if bits not in parsed:
            parsed.append(bits)
    if n is None:
        if not parsed:
            raise ValueError("Cannot infer the neuron count of an empty word list")
        n = len(parsed[0])
    zero = tuple([0] * n)
    if zero in parsed:
        parsed.remove(zero)
    return NeuralCode(n, (zero,) + tuple(parsed))


def parse_code_file(text: str) -> NeuralCode:
    """Read the plain-text format (one word per line) or the JSON format."""
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        return code_from_words(data["words"], data["n"])
    lines = [line.strip() for line in stripped.splitlines() if line.strip() and not line.startswith("#")]
    return code_from_words(lines)


def format_code(code: NeuralCode) -> str:
    return "\n".join("".join(str(b) for b in word) for word in code.words) + "\n"


# ---------------------------------------------------------------------------
# Code families
# ---------------------------------------------------------------------------

def star_code(n: int) -> NeuralCode:
    """
    The homogeneous star code S_n on n+1 neurons.

    Args:
        n: Number of petals (n ≥ 1)

    Returns:
        Zero word followed by s_1, …, s_{2n}
    """
    if n < 1:
        raise ValueError(f"star_code needs n >= 1, got {n}")
    size = n + 1
    words = [_word(size, ())]
    for i in range(1, 2 * n + 1):
        if i < n:
            support = (1, i + 1, n + 1)
        elif i == n:
            support = (1, n + 1)
        elif i < 2 * n:
            support = (i + 1 - n, n + 1)
        else:
            support = (n + 1,)
        words.append(_word(size, support))
    return NeuralCode(size, tuple(words))


def pair_code(n: int) -> NeuralCode:
    """
    The code P(2_n): columns of M_n = α(A ⊕ ⋯ ⊕ A) ∥ e_{2n+1} as words.

    A = [[1,1,0],[0,1,1]] and α appends a row of ones.
    """
    if n < 1:
        raise ValueError(f"pair_code needs n >= 1, got {n}")
    size = 2 * n + 1
    words = [_word(size, ())]
    for i in range(n):
        first, second = 2 * i + 1, 2 * i + 2
        words.append(_word(size, (first, size)))
        words.append(_word(size, (first, second, size)))
        words.append(_word(size, (second, size)))
    words.append(_word(size, (size,)))
    return NeuralCode(size, tuple(words))


def path_code(lengths: Sequence[int], count: Literal["edges", "curves"] = "edges") -> NeuralCode:
    """
    The path code P(ℓ): disjoint chains of curves inside one outer curve.

    With count="edges" component i has l_i + 1 curves (l_i consecutive
    intersections); with count="curves" each entry is the number of curves,
    so path_code((2,)*n, count="curves") is pair_code(n).

    Args:
        lengths: One entry per component
        count: How the entries are read

    Returns:
        Code on Σ curves + 1 neurons; words ordered c1, c1∩c2, c2, …, then outer-only
    """
    if not lengths:
        raise ValueError("path_code needs a nonempty length vector")
    if count == "edges":
        if any(l < 0 for l in lengths):
            raise ValueError(f"Path lengths must be nonnegative: {tuple(lengths)}")
        curves = [l + 1 for l in lengths]
    else:
        if any(c < 1 for c in lengths):
            raise ValueError(f"Curve counts must be positive: {tuple(lengths)}")
        curves = list(lengths)
    size = sum(curves) + 1
    words = [_word(size, ())]
    offset = 0
    for component in curves:
        for j in range(1, component + 1):
            words.append(_word(size, (offset + j, size)))
            if j < component:
                words.append(_word(size, (offset + j, offset + j + 1, size)))
        offset += component
    words.append(_word(size, (size,)))
    return NeuralCode(size, tuple(words))


def disjoint_curves_code(n: int) -> NeuralCode:
    """n pairwise disjoint curves: the zero word and the n unit words."""
    return NeuralCode(n, (_word(n, ()),) + tuple(_word(n, (i,)) for i in range(1, n + 1)))


def nested_curves_code(n: int) -> NeuralCode:
    """Curve i inside curve i+1: zones {n}, {n−1,n}, …, {1,…,n}."""
    words = [_word(n, ())]
    for start in range(n, 0, -1):
        words.append(_word(n, range(start, n + 1)))
    return NeuralCode(n, tuple(words))


def delete_neuron(code: NeuralCode, neuron: int) -> NeuralCode:
    """Drop coordinate λ (1-based) from every word, merging duplicates."""
    if not 1 <= neuron <= code.n:
        raise ValueError(f"Neuron {neuron} outside 1..{code.n}")
    words: List[Codeword] = []
    for word in code.words:
        shorter = word[: neuron - 1] + word[neuron:]
        if shorter not in words:
            words.append(shorter)
    zero = tuple([0] * (code.n - 1))
    words.remove(zero)
    return NeuralCode(code.n - 1, (zero,) + tuple(words))


def is_relabeling(first: NeuralCode, second: NeuralCode) -> bool:
    """True iff some permutation of neurons maps one code onto the other."""
    if first.n != second.n or len(first) != len(second):
        return False

    def incidence(code: NeuralCode) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from((("neuron", i) for i in range(code.n)), kind="neuron")
        for index, word in enumerate(code.words):
            graph.add_node(("word", index), kind="word")
            graph.add_edges_from((("word", index), ("neuron", i)) for i, bit in enumerate(word) if bit)
        return graph

    return nx.is_isomorphic(incidence(first), incidence(second), node_match=categorical_node_match("kind", None))


# ---------------------------------------------------------------------------
# Abstract descriptions and piercings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbstractDescription:
    """Labels 𝓛 and zones 𝓩 ⊆ 2^𝓛 with ∅ ∈ 𝓩."""

    labels: FrozenSet[int]
    zones: FrozenSet[Zone]

    def __post_init__(self):
        if frozenset() not in self.zones:
            raise ValueError("The empty zone must be present")
        for zone in self.zones:
            if not zone <= self.labels:
                raise ValueError(f"Zone {sorted(zone)} uses labels outside {sorted(self.labels)}")

    def sorted_zones(self) -> List[Zone]:
        return sorted(self.zones, key=lambda z: (len(z), sorted(z)))


@dataclass(frozen=True)
class PiercingWitness:
    """λ is a k-piercing of Λ identified by the background zone Z."""

    pierced_label: int
    pierced_set: FrozenSet[int]
    background_zone: Zone

    @property
    def k(self) -> int:
        return len(self.pierced_set)


@dataclass(frozen=True)
class PiercingCertificate:
    """Result of the inductive piercing search; the removal order is empty when not pierced."""

    pierced: bool
    k: int
    removal: Tuple[PiercingWitness, ...] = ()

    def __bool__(self) -> bool:
        return self.pierced


def to_abstract(code: NeuralCode) -> AbstractDescription:
    labels = frozenset(range(1, code.n + 1))
    zones = frozenset(frozenset(i + 1 for i, bit in enumerate(word) if bit) for word in code.words)
    return AbstractDescription(labels, zones)


def remove_label(description: AbstractDescription, label: int) -> AbstractDescription:
    """𝓓 ∖ λ: drop λ from the labels and from every zone."""
    if label not in description.labels:
        raise ValueError(f"Unknown label {label}")
    return AbstractDescription(
        description.labels - {label},
        frozenset(zone - {label} for zone in description.zones),
    )


def zones_containing(description: AbstractDescription, label: int) -> FrozenSet[Zone]:
    """𝓧_λ = {Z ∈ 𝓩 | λ ∈ Z}."""
    if label not in description.labels:
        raise ValueError(f"Unknown label {label}")
    return frozenset(zone for zone in description.zones if label in zone)


def cluster(zone: Iterable[int], labels: Iterable[int]) -> FrozenSet[Zone]:
    """𝓨_{Z,Λ} = {Z ∪ Λ_i | Λ_i ⊆ Λ}."""
    zone = frozenset(zone)
    labels = sorted(set(labels))
    if zone & set(labels):
        raise ValueError(f"Zone {sorted(zone)} meets the label set {labels}")
    return frozenset(
        zone | frozenset(subset)
        for size in range(len(labels) + 1)
        for subset in combinations(labels, size)
    )


def is_k_piercing(
    description: AbstractDescription, pierced_set: Iterable[int], label: int
) -> Optional[PiercingWitness]:
    """
    Search for a background zone making λ a k-piercing of Λ (k = |Λ|).

    Args:
        description: Abstract description 𝓓
        pierced_set: Λ
        label: λ

    Returns:
        The witness for the first suitable zone in canonical order, or None

    Raises:
        ValueError: If λ ∈ Λ or a label is unknown
    """
    pierced_set = frozenset(pierced_set)
    if label in pierced_set:
        raise ValueError(f"Label {label} cannot pierce a set containing itself")
    if not (pierced_set | {label}) <= description.labels:
        raise ValueError("Piercing labels must belong to the description")
    target = zones_containing(description, label)
    involved = pierced_set | {label}
    for zone in description.sorted_zones():
        if zone & involved:
            continue
        if cluster(zone | {label}, pierced_set) != target:
            continue
        if cluster(zone, pierced_set) <= description.zones:
            return PiercingWitness(label, pierced_set, zone)
    return None


class PiercingSearch:
    """Backtracking search for k-inductive piercedness with a memo on reduced descriptions."""

    def __init__(self, k: int):
        if k < 0:
            raise ValueError(f"k must be nonnegative, got {k}")
        self.k = k
        self.memo: Dict[AbstractDescription, Optional[Tuple[PiercingWitness, ...]]] = {}

    def search(self, description: AbstractDescription) -> Optional[Tuple[PiercingWitness, ...]]:
        if not description.labels:
            return ()
        if description in self.memo:
            return self.memo[description]
        result = None
        for label in sorted(description.labels):
            others = sorted(description.labels - {label})
            for size in range(min(self.k, len(others)) + 1):
                for pierced_set in combinations(others, size):
                    witness = is_k_piercing(description, pierced_set, label)
                    if witness is None:
                        continue
                    rest = self.search(remove_label(description, label))
                    if rest is not None:
                        result = (witness,) + rest
                        break
                if result is not None:
                    break
            if result is not None:
                break
        self.memo[description] = result
        return result


# Convenience function
def is_inductively_pierced(description: Union[AbstractDescription, NeuralCode], k: int) -> PiercingCertificate:
    """
    Decide whether 𝓓 is k-inductively pierced.

    Args:
        description: Abstract description (a NeuralCode is converted first)
        k: Maximum piercing order

    Returns:
        PiercingCertificate carrying the removal order when pierced

    Raises:
        DeskScaleError: If the description has more labels than the configured guard
    """
    if isinstance(description, NeuralCode):
        description = to_abstract(description)
    if len(description.labels) > settings.pierced_label_max:
        raise DeskScaleError(
            f"{len(description.labels)} labels exceed the piercing guard of {settings.pierced_label_max}"
        )
    search = PiercingSearch(k)
    removal = search.search(description)
    logger.info(
        f"Piercing search (k={k}, {len(description.labels)} labels): "
        f"{'pierced' if removal is not None else 'not pierced'}, {len(search.memo)} memo entries"
    )
    return PiercingCertificate(removal is not None, k, removal or ())
