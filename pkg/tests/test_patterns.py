import pytest

from pentaglobe.common import InputError
from pentaglobe.patterns import (A4B, A2B2C, PATTERNS, adjacent_pair_feasible, get_pattern,
                                 partial_feasible, placement_array, placements, tile_matches)

PLACEMENT_COUNTS = [
    ("a5", 1),
    ("a4b", 5),
    ("a2b2c", 10),
    ("a3bc", 10),
    ("a3b2", 5),
]


@pytest.mark.parametrize("name, count", PLACEMENT_COUNTS)
def test_placement_counts(name, count):
    assert len(placements(name)) == count
    assert placement_array(name).shape == (count, 5)
    assert placements(name)[0].labels == get_pattern(name).canonical


@pytest.mark.parametrize("name", sorted(PATTERNS))
def test_placements_distinct_and_matching(name):
    labels = [p.labels for p in placements(name)]
    assert len(set(labels)) == len(labels)
    for seq in labels:
        assert tile_matches(seq, name)


def test_get_pattern_by_tag():
    assert get_pattern('A4B') is A4B
    assert get_pattern(A2B2C) is A2B2C


def test_get_pattern_unknown():
    with pytest.raises(InputError):
        get_pattern('a6')


@pytest.mark.parametrize("seq, pattern, expected", [
    ("aaaab", "a4b", True),
    ("abaaa", "a4b", True),
    ("aabba", "a4b", False),
    ("aabbc", "a2b2c", True),
    ("abcba", "a2b2c", False),
    ("cbbaa", "a2b2c", True),
    ("abaab", "a3b2", False),
    ("aabab", "a3b2", False),
    ("bbaaa", "a3b2", True),
    ("aaacb", "a3bc", True),
])
def test_tile_matches(seq, pattern, expected):
    assert tile_matches(seq, pattern) == expected


def test_tile_matches_needs_total():
    assert not tile_matches(['a', 'a', None, 'a', 'b'], 'a4b')


@pytest.mark.parametrize("seq, pattern, expected", [
    ([None] * 5, "a4b", True),
    (['b', None, 'b', None, None], "a4b", False),
    (['c', 'c', None, None, None], "a2b2c", False),
    (['c', None, 'c', None, None], "a2b2c", False),
    (['a', 'b', None, None, 'c'], "a2b2c", False),
    (['b', 'b', None, None, None], "a3b2", True),
    (['b', 'b', 'b', None, None], "a3b2", False),
    ([0, 0, 0, 0, -1], "a5", True),
])
def test_partial_feasible(seq, pattern, expected):
    assert partial_feasible(seq, pattern) == expected


@pytest.mark.parametrize("pattern, l1, l2, expected", [
    ("a4b", 'a', 'a', True),
    ("a4b", 'a', 'b', True),
    ("a4b", 'b', 'b', False),
    ("a2b2c", 'c', 'c', False),
    ("a2b2c", 'b', 'b', True),
    ("a2b2c", 'c', 'a', True),
    ("a3bc", 'b', 'b', False),
    ("a3bc", 'b', 'c', True),
    ("a3b2", 'b', 'b', True),
])
def test_adjacent_pair_feasible(pattern, l1, l2, expected):
    assert adjacent_pair_feasible(pattern, l1, l2) == expected


def test_adjacent_pair_foreign_label():
    with pytest.raises(InputError):
        adjacent_pair_feasible('a4b', 'a', 'c')


@pytest.mark.parametrize("seq", [
    ['a', 'a', 'x', 'a', 'b'],
    "aaxab",
    ['a', 'a', 'a', 'b'],
])
def test_bad_tile_sequence(seq):
    with pytest.raises(InputError):
        tile_matches(seq, 'a4b')
    with pytest.raises(InputError):
        partial_feasible(seq, 'a4b')


def test_question_mark_is_unassigned():
    assert partial_feasible('?bb??', 'a3b2')
    assert not partial_feasible('b?b??', 'a3b2')
    assert not tile_matches('aaaa?', 'a5')
