import itertools
from collections import Counter

import pytest

from novikov.combinatorics import binomial
from novikov.diagrams import (
    NovikovDiagram,
    NovikovTableau,
    YoungShape,
    count_fillings_per_shape,
    enumerate_tableaux,
    enumerate_young_shapes,
    tableaux_from_csv,
    tableaux_to_csv,
    validate_tableau,
)
from novikov.errors import DegreeMismatch, ShapeMismatch
from novikov.terms import Alphabet


def brute_partitions(d):
    """Partitions by filtering all weakly decreasing tuples (independent of the library)."""
    out = set()

    def rec(prefix, remaining):
        if remaining == 0:
            out.add(tuple(prefix))
            return
        top = prefix[-1] if prefix else remaining
        for part in range(1, min(top, remaining) + 1):
            rec(prefix + [part], remaining - part)

    rec([], d)
    return out


def brute_tableaux(n, letters, order):
    """Generate-and-filter: every arrangement of the letters in every shape."""
    found = set()
    for rows in brute_partitions(n - 1):
        shape = YoungShape(rows)
        for perm in set(itertools.permutations(letters)):
            it = iter(perm)
            body = tuple(tuple(next(it) for _ in range(r)) for r in rows)
            t = NovikovTableau(shape, body, next(it))
            if validate_tableau(t, order).ok:
                found.add(t)
    return found


def test_shapes_degree_3():
    assert [s.rows for s in enumerate_young_shapes(3)] == [(3,), (2, 1), (1, 1, 1)]


def test_shapes_degree_0():
    assert enumerate_young_shapes(0) == [YoungShape(())]


@pytest.mark.parametrize("d", range(0, 11))
def test_shape_counts_match_brute_force(d):
    shapes = enumerate_young_shapes(d)
    assert {s.rows for s in shapes} == brute_partitions(d)
    assert len(shapes) == len(brute_partitions(d))
    assert [s.rows for s in shapes] == sorted((s.rows for s in shapes), reverse=True)


def test_six_has_eleven_shapes():
    assert len(enumerate_young_shapes(6)) == 11


def test_shape_invariants():
    with pytest.raises(ValueError):
        YoungShape((1, 2))
    with pytest.raises(ValueError):
        YoungShape((2, 0))
    s = YoungShape((3, 1, 1))
    assert s.degree == 5
    assert s.blocks() == [(3, 0, 1), (1, 1, 2)]


def test_diagram_nose():
    assert NovikovDiagram(YoungShape((2, 1))).degree == 4
    assert NovikovDiagram(YoungShape((2, 1))).nose_position == (1, 3)
    assert NovikovDiagram(YoungShape(())).degree == 1


def test_n4_twenty():
    tabs = enumerate_tableaux(4, "abcd")
    assert len(tabs) == 20
    assert len(set(tabs)) == 20


def test_n4_column_shape():
    tabs = enumerate_tableaux(4, "abcd", shape=YoungShape((1, 1, 1)))
    got = {(t.first_column(), t.nose) for t in tabs}
    assert got == {
        (("c", "b", "a"), "d"),
        (("d", "b", "a"), "c"),
        (("d", "c", "a"), "b"),
        (("d", "c", "b"), "a"),
    }


def test_one_letter_five():
    assert len(enumerate_tableaux(5, "aaaaa")) == 5


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        enumerate_tableaux(3, "ab")
    with pytest.raises(DegreeMismatch):
        count_fillings_per_shape(YoungShape((2, 1)), 5)


def test_degree_one():
    (t,) = enumerate_tableaux(1, "a")
    assert t.shape == YoungShape(()) and t.nose == "a"


def test_validate_block_and_tail_example():
    t = NovikovTableau.from_rows([("c", "d"), ("b",), ("a",)])
    assert validate_tableau(t).ok


def test_validate_block_rule():
    t = NovikovTableau.from_rows([("a", "d"), ("b",), ("c",)])
    report = validate_tableau(t)
    assert not report.ok
    assert {v.rule for v in report.violations} == {"block"}
    assert any(v.cells == ((2, 1), (3, 1)) for v in report.violations)
    # rows 1,2 (a < b) also break the rule and come first
    assert report.first.cells == ((1, 1), (2, 1))


def test_validate_tail_rule():
    t = NovikovTableau.from_rows([("a", "d", "c")])
    report = validate_tableau(t)
    assert not report.ok
    assert report.first.rule == "tail"
    assert report.first.cells == ((1, 2), (1, 3))


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        NovikovTableau(YoungShape((2, 1)), (("a",), ("b",)), "c")
    with pytest.raises(ShapeMismatch):
        NovikovTableau.from_rows([("a",), ("b",)])


@pytest.mark.parametrize("rows, n, expected", [((1, 1, 1), 4, 4), ((2, 1), 4, 12), ((3,), 4, 4)])
def test_count_fillings_examples(rows, n, expected):
    assert count_fillings_per_shape(YoungShape(rows), n) == expected


@pytest.mark.parametrize("n", range(1, 10))
def test_count_fillings_vs_enumeration(n):
    letters = Alphabet.default(n).first(n)
    per_shape = Counter(t.shape for t in enumerate_tableaux(n, letters))
    for shape in enumerate_young_shapes(n - 1):
        assert per_shape[shape] == count_fillings_per_shape(shape, n)
    assert sum(per_shape.values()) == binomial(2 * n - 2, n - 1)


@pytest.mark.parametrize("n", range(1, 8))
def test_every_tableau_valid(n):
    order = Alphabet.default(n)
    for t in enumerate_tableaux(n, order.first(n), order):
        assert validate_tableau(t, order).ok


@pytest.mark.parametrize("n", range(1, 7))
def test_polylinear_matches_generate_and_filter(n):
    order = Alphabet.default(n)
    assert set(enumerate_tableaux(n, order.first(n), order)) == brute_tableaux(n, order.first(n), order)


@pytest.mark.parametrize("letters", ["aab", "aabb", "aaab", "abbc", "aabbc", "aaabbc", "aabbcc", "abcab"])
def test_repeated_letters_match_generate_and_filter(letters):
    order = Alphabet.covering(letters)
    got = enumerate_tableaux(len(letters), letters, order)
    assert len(set(got)) == len(got)
    assert set(got) == brute_tableaux(len(letters), letters, order)


@pytest.mark.parametrize("n", range(1, 13))
def test_one_letter_counts(n):
    assert len(enumerate_tableaux(n, ["x"] * n)) == len(brute_partitions(n - 1))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_relabeling_equivariance(n):
    src = Alphabet.default(n)
    dst = Alphabet([f"y{i}" for i in range(n)])
    mapping = dict(zip(src.letters, dst.letters))
    mapped = {t.relabel(mapping) for t in enumerate_tableaux(n, src.letters, src)}
    assert mapped == set(enumerate_tableaux(n, dst.letters, dst))


def test_order_matters():
    # reversing the alphabet order changes which fillings are valid
    fwd = set(enumerate_tableaux(3, "abc", Alphabet("abc")))
    rev = set(enumerate_tableaux(3, "abc", Alphabet("cba")))
    assert len(fwd) == len(rev) == 6
    assert fwd != rev


def test_deterministic_order():
    assert enumerate_tableaux(5, "abcde") == enumerate_tableaux(5, "edcba", Alphabet("abcde"))


def test_json_and_csv_roundtrip():
    tabs = enumerate_tableaux(4, "abcd")
    for t in tabs:
        assert NovikovTableau.from_json(t.to_json()) == t
    assert tabs[4].to_json() == {"shape": [2, 1], "rows": [["a", "b"], ["d"]], "nose": "c"}
    assert tableaux_from_csv(tableaux_to_csv(tabs)) == tabs
