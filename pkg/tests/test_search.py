import numpy as np
import pytest

from pentaglobe.common import InconsistentSeedError, InputError, SymmetryError
from pentaglobe.mesh import build_timezone_template, symmetries
from pentaglobe.mesh.fragment import Fragment
from pentaglobe.patterns import PATTERNS
from pentaglobe.search import (Labeling, canonicalize, count_completions, enumerate_completions,
                               expand_orbit, is_valid_labeling, naive_completions, orbit_reduce,
                               orbit_size)


@pytest.fixture(scope="module")
def pentagon():
    return Fragment.from_vertex_cycles([('p', 'q', 'r', 's', 't')], name='pentagon')


@pytest.mark.parametrize("name, count", [
    ("a5", 1), ("a4b", 5), ("a2b2c", 10), ("a3bc", 10), ("a3b2", 5),
])
def test_single_tile(pentagon, name, count):
    assert count_completions(pentagon, name) == count


def test_seed_is_kept(pentagon):
    sols = enumerate_completions(pentagon, 'a4b', seed={2: 'b'})
    assert len(sols) == 1
    assert str(sols[0]) == 'aabaa'


@pytest.mark.parametrize("seed", [{0: 'b', 1: 'b'}, {0: 'c'}, {0: 'b', 2: 'b'}])
def test_inconsistent_seed(pentagon, seed):
    with pytest.raises(InconsistentSeedError):
        enumerate_completions(pentagon, 'a4b', seed=seed)


def test_seed_length(pentagon):
    with pytest.raises(InputError):
        enumerate_completions(pentagon, 'a4b', seed=[0, 0, 0])


def test_limit(neighborhood):
    assert len(enumerate_completions(neighborhood, 'a4b', limit=3)) == 3


@pytest.mark.parametrize("name", ["a5", "a4b", "a3bc", "a3b2"])
def test_completions_match_naive(neighborhood, name):
    fast = sorted(lab.labels.tolist() for lab in enumerate_completions(neighborhood, name))
    slow = sorted(lab.labels.tolist() for lab in naive_completions(neighborhood, name))
    assert fast == slow


@pytest.mark.slow
def test_completions_match_naive_three_labels(neighborhood):
    fast = sorted(lab.labels.tolist() for lab in enumerate_completions(neighborhood, 'a2b2c'))
    slow = sorted(lab.labels.tolist() for lab in naive_completions(neighborhood, 'a2b2c'))
    assert fast == slow


@pytest.mark.parametrize("name", sorted(PATTERNS))
def test_completions_are_valid(neighborhood, name):
    sols = enumerate_completions(neighborhood, name)
    assert sols
    assert all(is_valid_labeling(lab) for lab in sols)
    assert len({lab.key for lab in sols}) == len(sols)


def test_a5_is_unique(neighborhood):
    assert count_completions(neighborhood, 'a5') == 1
    assert count_completions(build_timezone_template(3).fragment, 'a5') == 1


def test_labeling_is_read_only(neighborhood):
    lab = Labeling.empty(neighborhood, 'a4b')
    assert not lab.is_total
    with pytest.raises(ValueError):
        lab.labels[0] = 1


def test_labeling_from_mapping(neighborhood):
    lab = Labeling.from_mapping(neighborhood, 'a4b', {'3': 'b', 0: 'a'})
    assert lab.label(3) == 'b'
    assert lab.label(1) is None
    assert lab.as_dict() == {0: 'a', 3: 'b'}
    assert lab.to_dict() == {'pattern': 'a4b', 'labels': {'0': 'a', '3': 'b'}}
    with pytest.raises(InputError):
        Labeling.from_mapping(neighborhood, 'a4b', {20: 'a'})


def test_canonical_form_is_orbit_invariant(neighborhood):
    group = symmetries(neighborhood)
    for lab in enumerate_completions(neighborhood, 'a3b2')[:12]:
        canon = canonicalize(lab, group)
        for g in group:
            image = Labeling(neighborhood, 'a3b2', g.apply(lab.labels))
            assert canonicalize(image, group) == canon


def test_orbit_reduce_bookkeeping(neighborhood):
    group = symmetries(neighborhood)
    sols = enumerate_completions(neighborhood, 'a4b')
    reps = orbit_reduce(sols, group)
    assert sum(rep.multiplicity for rep in reps) == len(sols)
    # the full solution set is closed under the group
    for rep in reps:
        assert rep.multiplicity == rep.orbit_size
        assert len(expand_orbit(rep.labeling, group)) == orbit_size(rep.labeling, group)
    keys = [rep.labels.tolist() for rep in reps]
    assert keys == sorted(keys)


def test_orbit_reduce_members(neighborhood):
    group = symmetries(neighborhood)
    sols = enumerate_completions(neighborhood, 'a3b2')
    reps = orbit_reduce(sols, group, keep_members=True)
    assert sorted(len(rep.members) for rep in reps) == sorted(rep.multiplicity for rep in reps)


def test_canonicalize_wrong_host(neighborhood, pentagon):
    group = symmetries(neighborhood)
    lab = enumerate_completions(pentagon, 'a4b', limit=1)[0]
    with pytest.raises(SymmetryError):
        canonicalize(lab, group)


def test_swap_group_merges_labels(neighborhood):
    plain = symmetries(neighborhood)
    swapped = symmetries(neighborhood, pattern='a2b2c')
    sols = enumerate_completions(neighborhood, 'a2b2c')
    assert len(orbit_reduce(sols, swapped)) <= len(orbit_reduce(sols, plain))
    lab = sols[0]
    images = swapped.images(lab.labels)
    assert np.array_equal(images[0], lab.labels)
