from collections import Counter

import pytest

from pentaglobe.common import InconsistentSeedError
from pentaglobe.neighborhood import (BLOCKED, TRANSCRIPTIONS, by_type, classify_face,
                                     classify_neighborhoods, forced_vertices, interior_b_class,
                                     neighborhood_of, propagation, transcribed_labeling, type_of)
from pentaglobe.patterns import placements
from pentaglobe.search import is_valid_labeling
from pentaglobe.verification import load_expected

NEIGHBORHOOD_COUNTS = [
    ("a5", 1),
    ("a2b2c", 1),
    ("a3bc", 2),
    ("a3b2", 3),
    ("a4b", 18),
]


@pytest.fixture(scope="module")
def expected():
    return load_expected()


@pytest.mark.parametrize("name, count", NEIGHBORHOOD_COUNTS)
def test_neighborhood_counts(name, count):
    tilings = classify_neighborhoods(name)
    assert len(tilings) == count
    assert {nt.type_id for nt in tilings} == set(TRANSCRIPTIONS[name])
    assert [nt.index for nt in tilings] == list(range(1, count + 1))


@pytest.mark.parametrize("name", sorted(TRANSCRIPTIONS))
def test_transcriptions_classify_to_themselves(name):
    for type_id in TRANSCRIPTIONS[name]:
        labeling = transcribed_labeling(name, type_id)
        assert is_valid_labeling(labeling)
        assert type_of(labeling.labels, name) == type_id
        assert classify_face(labeling, 0) == type_id


@pytest.mark.parametrize("placement", range(5))
def test_a4b_independent_of_center_placement(placement):
    tilings = classify_neighborhoods('a4b', placement)
    base = classify_neighborhoods('a4b')
    assert [nt.canonical for nt in tilings] == [nt.canonical for nt in base]


@pytest.mark.parametrize("placement", range(len(placements('a2b2c'))))
def test_a2b2c_independent_of_center_placement(placement):
    tilings = classify_neighborhoods('a2b2c', placement)
    assert [nt.type_id for nt in tilings] == ['I']


def test_a4b_interior_b_split():
    # Type 11 carries the sideways spoke A1B1 next to its center b edge. Read as
    # "none" it would give the 1+3+3+11 split; here it counts as sideways.
    split = Counter(interior_b_class(nt) for nt in classify_neighborhoods('a4b'))
    assert split == Counter({'two': 1, 'central': 3, 'sideways': 4, 'none': 10})


@pytest.mark.parametrize("type_id, forced", [
    ('1', ()),
    ('8', ()),
    ('11', ('B3',)),
    ('12', ('B3',)),
    ('15', ('B2',)),
    ('17', ('B2',)),
    ('18', ('B1', 'B3')),
])
def test_a4b_forced_vertices(type_id, forced):
    nt = by_type(classify_neighborhoods('a4b'))[type_id]
    assert nt.forced_vertex_names == forced
    assert forced_vertices(nt) == nt.forced_vertices


def test_a4b_forced_count():
    tilings = classify_neighborhoods('a4b')
    assert sum(1 for nt in tilings if nt.forced_vertices) == 8
    assert sum(1 for nt in tilings
               if interior_b_class(nt) == 'none' and nt.forced_vertices) == 7


def test_multiplicities_cover_completions():
    for name, _ in NEIGHBORHOOD_COUNTS:
        for nt in classify_neighborhoods(name):
            assert nt.multiplicity >= 1


def test_neighborhood_of_center(neighborhood):
    assert neighborhood_of(neighborhood, 0) == list(range(20))


def test_neighborhood_of_rotated(neighborhood):
    ids = neighborhood_of(neighborhood, 0, start=2)
    assert ids[:5] == [2, 3, 4, 0, 1]
    assert ids[5:10] == [7, 8, 9, 5, 6]
    assert sorted(ids) == list(range(20))


def test_neighborhood_of_boundary_face(neighborhood):
    assert neighborhood_of(neighborhood, 1) is None


def test_to_dict():
    nt = by_type(classify_neighborhoods('a4b'))['18']
    data = nt.to_dict()
    assert data['type'] == '18'
    assert data['forced_vertices'] == ['B1', 'B3']
    assert sum(1 for lab in data['labels'].values() if lab == 'b') == 5


@pytest.mark.parametrize("name", ["a4b", "a3bc", "a3b2", "a2b2c"])
def test_propagation_table(expected, name):
    table = propagation(name)
    assert len(table) == 5*len(TRANSCRIPTIONS[name])
    computed = table.df.to_dict(orient='index')
    assert computed == expected['propagation'][name]


def test_propagation_blocked_cells():
    table = propagation('a4b')
    assert table[('18', 1)] == BLOCKED
    assert table[('10', 3)] == frozenset({'1'})
    assert table.to_dict()['11']['P2'] == BLOCKED
    assert table.to_dict()['2']['P4'] == ['2', '14', '17', '18']


def test_propagation_csv(tmp_path):
    fpath = tmp_path / 'a3b2.csv'
    propagation('a3b2').to_csv(fpath, verbose=False)
    lines = fpath.read_text().splitlines()
    assert lines[0] == 'type,P1,P2,P3,P4,P5'
    assert len(lines) == 4


def test_propagation_infeasible_seed_is_blocked(monkeypatch):
    import pentaglobe.neighborhood as nb

    def infeasible(host, pattern, seed, **kwargs):
        raise InconsistentSeedError('seed is infeasible on face 7 (b???b)')

    monkeypatch.setattr(nb, 'enumerate_completions', infeasible)
    assert nb.propagate_labeling(transcribed_labeling('a4b', '11'), 2) == BLOCKED


def test_propagation_a4b_cells_complete():
    table = propagation('a4b')
    types = set(TRANSCRIPTIONS['a4b'])
    for (type_id, i), val in table.items():
        assert val == BLOCKED or (val and val <= types), (type_id, i)
    assert table[('11', 2)] == BLOCKED


def test_propagation_a4b_center_edge_reciprocal():
    # P4 sits across the b edge A4A5 of every drawn a4b type, so the relation
    # "U may neighbor T across its b edge" is symmetric.
    table = propagation('a4b')
    for t in TRANSCRIPTIONS['a4b']:
        for u in TRANSCRIPTIONS['a4b']:
            assert (u in table[(t, 4)]) == (t in table[(u, 4)]), (t, u)
