"""Tests for code families, abstract descriptions and piercings."""

import pytest

from app.core.codes import (
    AbstractDescription,
    NeuralCode,
    PiercingWitness,
    cluster,
    code_from_words,
    delete_neuron,
    disjoint_curves_code,
    format_code,
    is_inductively_pierced,
    is_k_piercing,
    is_relabeling,
    nested_curves_code,
    pair_code,
    parse_code_file,
    path_code,
    remove_label,
    star_code,
    to_abstract,
    zones_containing,
)
from app.exceptions import DeskScaleError


def words(code: NeuralCode):
    return ["".join(str(b) for b in word) for word in code.words]


def test_star_code_words():
    assert words(star_code(2)) == ["000", "111", "101", "011", "001"]
    assert words(star_code(3)) == ["0000", "1101", "1011", "1001", "0101", "0011", "0001"]


def test_star_code_needs_a_petal():
    with pytest.raises(ValueError):
        star_code(0)


def test_pair_code_words():
    assert words(pair_code(1)) == ["000", "101", "111", "011", "001"]
    assert len(pair_code(3)) == 3 * 3 + 2


def test_path_code_counts_edges():
    code = path_code((5,))
    assert code.n == 7
    assert len(code) == 13
    assert path_code((0,)) == star_code(1)
    assert path_code((1, 1)) == pair_code(2)


def test_path_code_counts_curves():
    assert path_code((2, 2, 2), count="curves") == pair_code(3)
    with pytest.raises(ValueError):
        path_code((0,), count="curves")
    with pytest.raises(ValueError):
        path_code((-1,))


def test_code_needs_zero_word():
    with pytest.raises(ValueError):
        NeuralCode(2, ((1, 0),))
    with pytest.raises(ValueError):
        NeuralCode(2, ((0, 0), (1, 2)))


def test_code_from_words_puts_zero_first():
    code = code_from_words(["11", "00", "01", "11"])
    assert code.words == ((0, 0), (1, 1), (0, 1))


def test_parse_code_file_formats():
    text = "# two neurons\n11\n01\n"
    assert parse_code_file(text) == code_from_words(["11", "01"])
    assert parse_code_file('{"n": 2, "words": ["10"]}').words == ((0, 0), (1, 0))
    assert parse_code_file(format_code(star_code(2))) == star_code(2)


def test_delete_neuron_merges_words():
    assert delete_neuron(star_code(2), 1).words == ((0, 0), (1, 1), (0, 1))
    with pytest.raises(ValueError):
        delete_neuron(star_code(2), 4)


def test_relabeling():
    swapped = code_from_words(["111", "011", "101", "001"])
    assert is_relabeling(star_code(2), swapped)
    assert not is_relabeling(disjoint_curves_code(3), nested_curves_code(3))


def test_abstract_description_operations():
    description = to_abstract(star_code(2))
    assert description.labels == frozenset({1, 2, 3})
    assert zones_containing(description, 1) == {frozenset({1, 2, 3}), frozenset({1, 3})}
    reduced = remove_label(description, 1)
    assert reduced.zones == {frozenset(), frozenset({2, 3}), frozenset({3})}
    with pytest.raises(ValueError):
        remove_label(description, 7)


def test_abstract_description_needs_empty_zone():
    with pytest.raises(ValueError):
        AbstractDescription(frozenset({1}), frozenset({frozenset({1})}))


def test_cluster():
    assert cluster((), (1, 2)) == {frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})}
    assert cluster({3}, ()) == {frozenset({3})}
    with pytest.raises(ValueError):
        cluster({1}, (1,))


def test_is_k_piercing_finds_first_zone():
    description = to_abstract(star_code(2))
    assert is_k_piercing(description, {2}, 1) == PiercingWitness(1, frozenset({2}), frozenset({3}))
    assert is_k_piercing(description, (), 1) is None
    with pytest.raises(ValueError):
        is_k_piercing(description, {1}, 1)


def test_star_code_is_one_pierced():
    certificate = is_inductively_pierced(star_code(2), 1)
    assert certificate.pierced
    assert [(w.pierced_label, w.k) for w in certificate.removal] == [(1, 1), (2, 0), (3, 0)]
    assert certificate.removal[0].background_zone == frozenset({3})


def test_star_code_is_not_zero_pierced():
    certificate = is_inductively_pierced(star_code(2), 0)
    assert not certificate
    assert certificate.removal == ()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pair_code_is_one_pierced(n):
    assert is_inductively_pierced(pair_code(n), 1).pierced


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_disjoint_and_nested_curves_are_zero_pierced(n):
    assert is_inductively_pierced(disjoint_curves_code(n), 0).pierced
    assert is_inductively_pierced(nested_curves_code(n), 0).pierced


def test_piercing_guard(guard):
    guard("pierced_label_max", 2)
    with pytest.raises(DeskScaleError):
        is_inductively_pierced(star_code(2), 1)


def shift_labels(description: AbstractDescription, removed: int) -> AbstractDescription:
    def shift(label):
        return label - 1 if label > removed else label

    return AbstractDescription(
        frozenset(shift(label) for label in description.labels),
        frozenset(frozenset(shift(label) for label in zone) for zone in description.zones),
    )


@pytest.mark.parametrize("code", [star_code(3), pair_code(2), path_code((2,))], ids=["star", "pair", "path"])
def test_delete_neuron_matches_remove_label(code):
    for neuron in range(1, code.n + 1):
        expected = shift_labels(remove_label(to_abstract(code), neuron), neuron)
        assert to_abstract(delete_neuron(code, neuron)) == expected


@pytest.mark.parametrize("n", [2, 3, 4])
def test_star_code_minus_last_petal(n):
    assert is_relabeling(delete_neuron(star_code(n), n), star_code(n - 1))


@pytest.mark.parametrize("n", [2, 3])
def test_pair_code_minus_last_pair(n):
    smaller = delete_neuron(delete_neuron(pair_code(n), 2 * n), 2 * n - 1)
    assert is_relabeling(smaller, pair_code(n - 1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pair_code_is_not_zero_pierced(n):
    assert not is_inductively_pierced(pair_code(n), 0)
