import numpy as np
import pytest

from pentaglobe.common import InputError, MIN_TIMEZONES
from pentaglobe.earthmap import (assemble, build_family_graph, classify_families,
                                 closed_labelings, core_tile_types, cycle_labelings, decompose,
                                 enumerate_closed, enumerate_parts, enumerate_timezone_tilings,
                                 pole_combinations, pole_descriptor, pole_key, specialize,
                                 strip_group, strip_template, strip_tilings,
                                 timezone_specializations)
from pentaglobe.mesh import build_earth_map, validate
from pentaglobe.search import Labeling, canonicalize, is_valid_labeling
from pentaglobe.verification import load_expected

EXPECTED = load_expected()

FAMILY_COUNTS = [
    (pattern, d, count)
    for pattern in ('a2b2c', 'a3b2', 'a4b')
    for d, count in sorted(EXPECTED['families'][pattern].items())
]


@pytest.mark.parametrize("d", ["1", "2", "3"])
def test_a4b_raw_counts(d):
    cat = enumerate_timezone_tilings(int(d), 'a4b')
    for key, count in EXPECTED['a4b_raw'][d].items():
        assert cat.raw_count(tuple(key.split('|'))) == count, key


def test_a4b_core_part_counts():
    _, core = enumerate_parts('a4b')
    for key, count in EXPECTED['a4b_d4_core_raw'].items():
        assert core.raw_count(tuple(key.split('|'))) == count, key
    reps = core[('aaaa', 'aaaa')]
    assert sorted(rep.multiplicity for rep in reps) == EXPECTED['a4b_d4_core_multiplicities']
    assert sum(rep.multiplicity for rep in reps) == 25


def _core_part_labeling(b_edges):
    frag = strip_template(4, 'core_part').fragment
    labels = np.zeros(frag.num_edges, dtype=np.int8)
    for u, v in b_edges:
        labels[frag.edge_id(u, v)] = 1
    return Labeling(frag, 'a4b', labels)


def test_a4b_core_part_half_turn():
    # Two aaaa|aaaa core part tilings that are one orbit: the second is the
    # first turned through 180 degrees.
    first = _core_part_labeling([('p2', 'p3'), ('p4', 'p5'), ('S', 'q1'),
                                 ("p3'", "q2'"), ("p4'", "p5'")])
    second = _core_part_labeling([('p2', 'p3'), ('q4', 'q5'), ('N', 'p1'),
                                  ("p3'", "q2'"), ("q4'", "q5'")])
    assert is_valid_labeling(first) and is_valid_labeling(second)
    assert not np.array_equal(first.labels, second.labels)
    group = strip_group(4, 'core_part')
    assert canonicalize(first, group).key == canonicalize(second, group).key


def test_parts_only_at_distance4():
    with pytest.raises(InputError):
        enumerate_parts('a4b', d=3)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_a3bc_has_no_timezone_tilings(d):
    assert strip_tilings(d, 'a3bc') == ()
    assert build_family_graph(d, 'a3bc').count_closed(MIN_TIMEZONES[d]) == 0
    assert classify_families(d, 'a3bc') == ()


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_a4b_parity_is_preserved(d):
    for t in strip_tilings(d, 'a4b'):
        assert t.left.count('b') % 2 == t.right.count('b') % 2


@pytest.mark.parametrize("pattern, d, count", FAMILY_COUNTS)
def test_family_counts(pattern, d, count):
    families = classify_families(int(d), pattern)
    assert len(families) == count
    assert [f.id for f in families] == list(range(1, count + 1))
    for fam in families:
        assert fam.cycles()
        assert fam.representative.startswith('(') and '/' in fam.representative


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_a4b_families_even_and_odd(d):
    assert sorted(f.parity for f in classify_families(d, 'a4b')) == [0, 1]


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_a2b2c_pole_combinations_distinct(d):
    combinations = [pole_combinations(f) for f in classify_families(d, 'a2b2c')]
    assert len(set(combinations)) == len(combinations)


def test_a3b2_pole_combinations_collide():
    assert any(len({pole_combinations(f) for f in classify_families(d, 'a3b2')})
               < len(classify_families(d, 'a3b2')) for d in (1, 2, 3, 4, 5))


def test_a2b2c_distance5_descriptors():
    names = [pole_key('a', 'b', label_swap=True), pole_key('bac', 'bca', label_swap=True)]
    assert names == ['(a/b)', '(abc/acb)']
    families = classify_families(5, 'a2b2c')
    assert sorted(f.descriptor[1] for f in families) == [(names[0],), (names[1],)]
    assert sorted(f.representative for f in families) == names


def test_a3b2_distance5_families():
    families = classify_families(5, 'a3b2')
    names = sorted([pole_key('a', 'b'), pole_key('baa', 'baa')])
    assert names == ['(a/b)', '(aab/aab)']
    assert sorted(f.representative for f in families) == names


@pytest.mark.parametrize("north, south, other", [
    ('bac', 'bca', ('acb', 'cab')),     # rotation
    ('bac', 'bca', ('cab', 'acb')),     # horizontal flip
    ('bac', 'bca', ('bca', 'bac')),     # vertical flip
    ('ab', 'ba', ('abab', 'baba')),     # repetition
])
def test_pole_key_symmetries(north, south, other):
    assert pole_key(north, south) == pole_key(*other)


def test_pole_key_keeps_cyclic_order():
    assert pole_key('bac', 'bca') == '(abc/cba)'
    assert pole_key('abc', 'abc') == '(abc/abc)'
    assert pole_key('bac', 'bca') != pole_key('abc', 'abc')
    assert pole_key('aab', 'aab') != pole_key('aab', 'aba')


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_a5_single_family(d):
    families = classify_families(d, 'a5')
    assert len(families) == 1
    assert pole_descriptor(families[0])[0] == d


def test_a4b_distance5_graph():
    fg = build_family_graph(5, 'a4b')
    even = fg.subgraph(0)
    assert sorted({sig for sig, _ in even.nodes}) == EXPECTED['a4b_d5_even_nodes']
    assert len(fg.loops('aaaaa')) == 2
    assert fg.out_degree('aaaba') == 4


def test_collapsed_graph_counts():
    fg = build_family_graph(3, 'a4b')
    collapsed = fg.collapsed()
    total = sum(m for _, _, m in collapsed.edges(data='multiplicity'))
    assert total == len(fg.arrows)


def test_transfer_matrix_distance4():
    fg = build_family_graph(4, 'a4b')
    T = fg.transfer_matrix()
    assert T.shape[0] == T.shape[1] == len(fg.node_order(0))
    assert fg.steps == 2
    assert np.all(T >= 0)


@pytest.mark.parametrize("d, n, pattern", [(2, 2, 'a3b2'), (1, 2, 'a4b'), (5, 4, 'a2b2c')])
def test_closed_walks_assemble(d, n, pattern):
    fg = build_family_graph(d, pattern)
    walks = list(fg.closed_walks(n))
    assert len(walks) == fg.count_closed(n)
    em = build_earth_map(d, n)
    for walk in walks[:20]:
        labeling = assemble(em, [fg.arrows[k] for k in walk])
        assert is_valid_labeling(labeling)
        assert decompose(labeling, fg) == walk


def test_assemble_needs_all_timezones():
    fg = build_family_graph(3, 'a4b')
    em = build_earth_map(3, 2)
    with pytest.raises(InputError):
        assemble(em, [fg.arrows[0]])


@pytest.mark.slow
@pytest.mark.parametrize("d, n, pattern", [(2, 2, 'a3b2'), (5, 4, 'a2b2c'), (3, 2, 'a4b')])
def test_closed_enumeration_matches_cycles(d, n, pattern):
    direct = sorted(lab.labels.tolist() for lab in closed_labelings(d, n, pattern))
    cycles = sorted(lab.labels.tolist() for lab in cycle_labelings(d, n, pattern))
    assert direct == cycles
    assert len(direct) == build_family_graph(d, pattern).count_closed(n)
    assert validate(build_earth_map(d, n)).passed


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_a5_closed(d):
    n = MIN_TIMEZONES[d]
    assert len(closed_labelings(d, n, 'a5')) == 1
    reps = enumerate_closed(d, n, 'a5')
    assert len(reps) == 1 and reps[0].multiplicity == 1


def test_specialize():
    t = strip_tilings(3, 'a2b2c')[0]
    lab = specialize(t.labeling, {'c': 'a'}, pattern='a3b2')
    assert lab.pattern.name == 'a3b2'
    assert not np.any(lab.labels == 2)
    assert np.array_equal(lab.labels == 1, t.labels == 1)


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_a3b2_is_a2b2c_specialized(d):
    direct, special = timezone_specializations(d)
    assert direct and direct <= special


@pytest.mark.parametrize("kind", ["meridian_part", "core_part"])
def test_a3b2_is_a2b2c_specialized_distance4(kind):
    direct, special = timezone_specializations(4, kind)
    assert direct and direct <= special


@pytest.mark.parametrize("n", [4, 5])
def test_a3b2_distance5_core_tiles(n):
    labelings = cycle_labelings(5, n, 'a3b2')
    assert labelings
    for labeling in labelings:
        types = core_tile_types(labeling)
        assert len(types) == 2*n
        assert set(types.values()) == {EXPECTED['a3b2_d5_core_type']}


@pytest.mark.parametrize("pattern", ["a2b2c", "a3b2", "a4b"])
def test_distance5_tilings_lie_on_closed_walks(pattern):
    fg = build_family_graph(5, pattern)
    on_cycle = {a for fam in classify_families(5, pattern) for a in fam.arrows}
    assert on_cycle == set(range(len(fg.arrows)))


def test_distance5_right_only_signature_dropped():
    # as a left meridian aaabb would put two b edges on the southern tile
    assert 'aaabb' not in build_family_graph(5, 'a4b').signatures


def test_catalog_table(tmp_path):
    cat = enumerate_timezone_tilings(1, 'a4b')
    df = cat.df
    assert list(df.columns) == ['left', 'right', 'raw', 'representatives', 'multiplicities']
    assert df['raw'].sum() == cat.total
    fpath = tmp_path / 'd1.csv'
    cat.to_csv(fpath, verbose=False)
    assert fpath.exists()


def test_timezone_tiling_to_dict():
    t = strip_tilings(2, 'a4b')[0]
    data = t.to_dict()
    assert data['kind'] == 'timezone'
    assert len(data['left']) == 2 and len(data['right']) == 2
    assert len(data['north']) == 3
