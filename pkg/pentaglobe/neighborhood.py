# Copyright 2024 pentaglobe developers

# Licensed under the Apache License, Version 2.0 (the "License"); you may not use
# this file except in compliance with the License. You may obtain a copy of the
# License at http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software distributed
# under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
# CONDITIONS OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the License.

"""
Neighborhood tilings of a tile whose vertices all have degree 3.

The neighborhood of such a tile P is P with its five neighbors P1..P5
(see mesh.templates.NeighborhoodFragment for the numbering). This module
enumerates its edge-congruent labelings, names them by type, finds the
vertices that cannot have degree 3, and works out which types the
neighbors' own neighborhoods may take (the propagation table).

Sample usage:

    from pentaglobe.neighborhood import classify_neighborhoods, propagation
    tilings = classify_neighborhoods('a4b')
    len(tilings)                     # 18
    table = propagation('a4b')
    table[('18', 4)]                 # frozenset({'2', '14', '17', '18'})
    table.df                         # one row per type, columns P1..P5

"""
import logging
from collections import OrderedDict
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import pandas as pd

from pentaglobe.common import LABELS, UNASSIGNED, InconsistentSeedError
from pentaglobe.patterns import get_pattern, adjacent_pair_feasible, placements
from pentaglobe.mesh import build_neighborhood_fragment, build_extended_fragment, symmetries
from pentaglobe.search import (Labeling, enumerate_completions, orbit_reduce, canonicalize,
                               is_valid_labeling)

logger = logging.getLogger(__name__)

BLOCKED = 'x'


#==============================================================================
# TYPE TABLE
#==============================================================================

# Drawn labelings of every neighborhood type. Each entry lists the edges
# labeled b and c; all other edges are a. Edge names join the two endpoint
# names (A1A2 is the center edge shared with P1, A1B1 a spoke, B1C1 and C1B2
# the outer edges of P1).
_A4B_CENTER = ['A4A5']
TRANSCRIPTIONS = {
    'a5': OrderedDict([
        ('I', {}),
    ]),
    'a4b': OrderedDict([
        ('1', {'b': ['A1B1', 'A3B3']}),
        ('2', {'b': ['A2B2', 'C5B1', 'B3C3']}),
        ('3', {'b': ['A2B2', 'C5B1', 'C3B4']}),
        ('4', {'b': ['A2B2', 'B5C5', 'C3B4']}),
        ('5', {'b': ['A1B1', 'B2C2', 'C3B4']}),
        ('6', {'b': ['A1B1', 'B2C2', 'B3C3']}),
        ('7', {'b': ['A1B1', 'C2B3', 'C3B4']}),
        ('8', {'b': ['B5C5', 'B1C1', 'B2C2', 'B3C3']}),
        ('9', {'b': ['B5C5', 'B1C1', 'B2C2', 'C3B4']}),
        ('10', {'b': ['B5C5', 'B1C1', 'C2B3', 'C3B4']}),
        ('11', {'b': ['A1B1', 'C2B3', 'B3C3']}),
        ('12', {'b': ['B5C5', 'B1C1', 'C2B3', 'B3C3']}),
        ('13', {'b': ['B5C5', 'C1B2', 'C2B3', 'B3C3']}),
        ('14', {'b': ['C5B1', 'C1B2', 'C2B3', 'B3C3']}),
        ('15', {'b': ['B5C5', 'C1B2', 'B2C2', 'B3C3']}),
        ('16', {'b': ['B5C5', 'C1B2', 'B2C2', 'C3B4']}),
        ('17', {'b': ['C5B1', 'C1B2', 'B2C2', 'B3C3']}),
        ('18', {'b': ['B1C1', 'C5B1', 'C2B3', 'B3C3']}),
    ]),
    'a3bc': OrderedDict([
        ('I', {'b': ['A1B1', 'A2A3', 'B3C3', 'B4C4'], 'c': ['A1A2', 'A3B3', 'C5B1', 'C4B5']}),
        ('II', {'b': ['A1B1', 'A2A3', 'B3C3', 'C4B5'], 'c': ['A1A2', 'A3B3', 'C5B1', 'B4C4']}),
    ]),
    'a3b2': OrderedDict([
        ('I', {'b': ['A1B1', 'A1A2', 'A2A3', 'A3B3', 'B3C3', 'C5B1', 'B4C4', 'C4B5']}),
        ('II', {'b': ['C5B1', 'B5C5', 'C4B5', 'B4C4', 'C3B4', 'B3C3', 'A1A2', 'A2A3', 'A2B2']}),
        ('III', {'b': ['C5B1', 'B5C5', 'C3B4', 'B4C4', 'A4B4', 'A1A2', 'A2A3', 'A2B2']}),
    ]),
    'a2b2c': OrderedDict([
        ('I', {'b': ['B2C2', 'C2B3', 'A1A2', 'A5A1', 'A1B1', 'C3B4', 'B4C4', 'A4B4'],
               'c': ['A2B2', 'C5B1', 'B3C3', 'A4A5']}),
    ]),
}
for _entry in TRANSCRIPTIONS['a4b'].values():
    _entry['b'] = _A4B_CENTER + _entry['b']


def transcribed_labeling(pattern, type_id):
    """Labeling of the neighborhood fragment drawn for a type"""
    pattern = get_pattern(pattern)
    frag = build_neighborhood_fragment()
    labels = np.zeros(frag.num_edges, dtype=np.int8)
    for lab, names in TRANSCRIPTIONS[pattern.name][type_id].items():
        for name in names:
            labels[frag.edge_by_name(name)] = LABELS.index(lab)
    labeling = Labeling(frag, pattern, labels)
    assert is_valid_labeling(labeling), \
        'drawn {:s} type {:s} is not edge congruent'.format(pattern.name, type_id)
    return labeling


@lru_cache(maxsize=None)
def _type_index(pattern):
    """{canonical label bytes: type id} for the drawn types of a pattern"""
    pattern = get_pattern(pattern)
    group = symmetries(build_neighborhood_fragment())
    index = {}
    for type_id in TRANSCRIPTIONS[pattern.name]:
        canon = canonicalize(transcribed_labeling(pattern, type_id), group)
        assert canon.key not in index, \
            '{:s} types {:s} and {:s} coincide'.format(pattern.name, index.get(canon.key), type_id)
        index[canon.key] = type_id
    return index


def type_of(labels, pattern):
    """Type id of a total labeling of the 20 neighborhood edges, or None"""
    pattern = get_pattern(pattern)
    frag = build_neighborhood_fragment()
    canon = canonicalize(Labeling(frag, pattern, labels), symmetries(frag))
    return _type_index(pattern).get(canon.key)


#==============================================================================
# CLASSIFICATION
#==============================================================================

@dataclass
class NeighborhoodTiling(object):
    """One neighborhood type.

    `labeling` is the drawn orientation when the type is in the table,
    otherwise the canonical one; `canonical` is the orbit minimum under the
    ten symmetries of the fragment.
    """
    pattern: object
    index: int
    type_id: str
    labeling: Labeling
    canonical: Labeling
    multiplicity: int
    forced_vertices: frozenset

    @property
    def forced_vertex_names(self):
        names = self.labeling.host.vertex_names
        return tuple(sorted(names[v] for v in self.forced_vertices))

    def to_dict(self):
        return {
            'index': self.index,
            'type': self.type_id,
            'labels': self.labeling.to_dict()['labels'],
            'forced_vertices': list(self.forced_vertex_names),
            'multiplicity': self.multiplicity,
        }


def center_seed(pattern, placement=0):
    """Seed labeling the center tile with one of the pattern's placements"""
    pattern = get_pattern(pattern)
    frag = build_neighborhood_fragment()
    labels = np.full(frag.num_edges, UNASSIGNED, dtype=np.int8)
    labels[:5] = placements(pattern)[placement].labels
    return Labeling(frag, pattern, labels)


def _forced(labeling):
    """B vertices whose two outer edges cannot be adjacent in one tile"""
    frag = labeling.host
    forced = set()
    for k in range(1, 6):
        before = 11 + 2*((k - 2) % 5)   # C_{k-1} B_k
        after = 10 + 2*(k - 1)          # B_k C_k
        if not adjacent_pair_feasible(labeling.pattern, int(labeling.labels[before]),
                                      int(labeling.labels[after])):
            forced.add(frag.vertex_id('B{:d}'.format(k)))
    return frozenset(forced)


def forced_vertices(nt):
    """Boundary vertices of a neighborhood tiling that must have degree > 3"""
    labeling = nt.labeling if isinstance(nt, NeighborhoodTiling) else nt
    return _forced(labeling)


@lru_cache(maxsize=None)
def classify_neighborhoods(pattern, placement=0):
    """Neighborhood tilings of a pattern up to the symmetries of the fragment.

    The center is seeded with one placement of the pattern; the completions
    are reduced under the ten symmetries and ordered by canonical labels.
    Each representative is named by the type table.
    """
    pattern = get_pattern(pattern)
    frag = build_neighborhood_fragment()
    group = symmetries(frag)
    completions = enumerate_completions(frag, pattern, center_seed(pattern, placement))
    reps = orbit_reduce(completions, group)
    index = _type_index(pattern)
    drawn = {type_id: transcribed_labeling(pattern, type_id)
             for type_id in TRANSCRIPTIONS[pattern.name]}
    out = []
    for i, rep in enumerate(reps):
        type_id = index.get(rep.labeling.key)
        if type_id is None:
            logger.warning('%s neighborhood %d has no drawn type', pattern.name, i + 1)
        labeling = drawn[type_id] if type_id is not None else rep.labeling
        out.append(NeighborhoodTiling(pattern, i + 1, type_id, labeling, rep.labeling,
                                      rep.multiplicity, _forced(labeling)))
    missing = set(drawn) - {nt.type_id for nt in out}
    if missing:
        logger.warning('%s types %s were not found by the search', pattern.name, sorted(missing))
    logger.info('%s: %d neighborhood tilings', pattern.name, len(out))
    return tuple(out)


def by_type(tilings):
    return {nt.type_id: nt for nt in tilings}


def interior_b_class(nt):
    """Where the b spokes of an a4b neighborhood lie relative to the center's
    b edge: 'two', 'central' (at the opposite vertex), 'sideways' or 'none'.
    """
    labels = nt.labeling.labels
    spokes = [k for k in range(5) if labels[5 + k] == 1]
    if len(spokes) >= 2:
        return 'two'
    if not spokes:
        return 'none'
    center_b = [i for i in range(5) if labels[i] == 1]
    assert len(center_b) == 1, 'the a4b center has exactly one b edge'
    return 'central' if spokes[0] == (center_b[0] + 3) % 5 else 'sideways'


#==============================================================================
# NEIGHBORHOODS INSIDE A HOST
#==============================================================================

def neighborhood_of(host, face, start=0, direction=1):
    """Edge ids of the neighborhood of `face` in neighborhood-fragment order,
    or None when some vertex of the face does not have degree 3 or the
    surrounding tiles do not form the 20-edge configuration.

    The face's vertex at position `start` becomes A1 and the cycle is read
    in `direction` (+1 or -1).
    """
    fv = host.face_vertices[face]
    fe = host.faces[face]
    if len(fe) != 5:
        return None
    w = [fv[(start + direction*k) % 5] for k in range(5)]
    if direction > 0:
        center = [fe[(start + k) % 5] for k in range(5)]
    else:
        center = [fe[(start - k - 1) % 5] for k in range(5)]
    spokes, ends = [], []
    for k in range(5):
        if w[k] < 0 or host.degree(w[k]) != 3:
            return None
        third = [e for e in host.vertex_edges[w[k]] if e not in (center[k-1], center[k])]
        if len(third) != 1:
            return None
        spokes.append(third[0])
        ends.append(host.other_vertex(third[0], w[k]))
    rims = []
    neighbors = []
    for k in range(5):
        g = host.other_face(center[k], face)
        if g is None or len(host.faces[g]) != 5:
            return None
        neighbors.append(g)
        rest = [e for e in host.faces[g] if e not in (center[k], spokes[k], spokes[(k+1) % 5])]
        if len(rest) != 2:
            return None
        b_here, b_next = ends[k], ends[(k+1) % 5]
        first = [e for e in rest if b_here in host.edges[e]]
        second = [e for e in rest if b_next in host.edges[e]]
        if len(first) != 1 or len(second) != 1 or first[0] == second[0]:
            return None
        rims += [first[0], second[0]]
    ids = center + spokes + rims
    if len(set(ids)) != 20 or len(set(neighbors)) != 5 or len(set(ends)) != 5:
        return None
    return ids


def classify_face(labeling, face):
    """Neighborhood type of one face of a labeled host, or None when the face
    has a vertex of degree > 3.
    """
    ids = neighborhood_of(labeling.host, face)
    if ids is None:
        return None
    return type_of(labeling.labels[ids], labeling.pattern)


#==============================================================================
# PROPAGATION
#==============================================================================

class PropagationTable(object):
    """{(type id, neighbor index 1-5): frozenset of type ids, or BLOCKED}"""
    def __init__(self, pattern, cells):
        self.pattern = get_pattern(pattern)
        self.cells = OrderedDict(cells)
        self.types = list(OrderedDict.fromkeys(t for t, _ in self.cells))

    def __getitem__(self, key):
        return self.cells[key]

    def __iter__(self):
        return iter(self.cells)

    def __len__(self):
        return len(self.cells)

    def items(self):
        return self.cells.items()

    @staticmethod
    def _cell_str(val):
        if val == BLOCKED:
            return BLOCKED
        return ','.join(sorted(val, key=_type_sort_key))

    @property
    def df(self):
        data = [[self._cell_str(self.cells[(t, i)]) for i in range(1, 6)] for t in self.types]
        df = pd.DataFrame(data, index=pd.Index(self.types, name='type'),
                          columns=['P{:d}'.format(i) for i in range(1, 6)])
        return df

    def to_dict(self):
        """{type: {'P1': [types] or 'x', ...}}"""
        out = OrderedDict()
        for t in self.types:
            row = OrderedDict()
            for i in range(1, 6):
                val = self.cells[(t, i)]
                row['P{:d}'.format(i)] = (BLOCKED if val == BLOCKED
                                          else sorted(val, key=_type_sort_key))
            out[t] = row
        return out

    def to_csv(self, fpath, verbose=True):
        self.df.to_csv(fpath)
        if verbose:
            print('Wrote', fpath)

    def __repr__(self):
        return 'Propagation of {:s} neighborhoods\n{:s}'.format(
            self.pattern.name, self.df.to_string())


def _type_sort_key(t):
    roman = {'I': 1, 'II': 2, 'III': 3}
    return int(t) if t.isdigit() else roman.get(t, 99)


def propagate_labeling(labeling, i):
    """Types the neighborhood of P_i can take given a labeled neighborhood of
    P, or BLOCKED when P_i cannot have all its vertices of degree 3.
    """
    pattern = labeling.pattern
    ext = build_extended_fragment(i)
    seed = np.full(ext.num_edges, UNASSIGNED, dtype=np.int8)
    seed[:20] = labeling.labels
    found = set()
    try:
        completions = enumerate_completions(ext, pattern, seed)
    except InconsistentSeedError as err:
        logger.debug('P%d of a %s neighborhood: %s', i, pattern.name, err)
        return BLOCKED
    if not completions:
        return BLOCKED
    for comp in completions:
        ids = neighborhood_of(ext, ext.neighbor(i))
        assert ids is not None, 'P{:d} is not surrounded in the extended fragment'.format(i)
        type_id = type_of(comp.labels[ids], pattern)
        assert type_id is not None, 'neighborhood of P{:d} has no drawn type'.format(i)
        found.add(type_id)
    return frozenset(found)


@lru_cache(maxsize=None)
def propagation(pattern):
    """Propagation table of a pattern over the drawn types"""
    pattern = get_pattern(pattern)
    cells = []
    for type_id in TRANSCRIPTIONS[pattern.name]:
        labeling = transcribed_labeling(pattern, type_id)
        for i in range(1, 6):
            cells.append(((type_id, i), propagate_labeling(labeling, i)))
    return PropagationTable(pattern, cells)
