# Copyright 2024 pentaglobe developers

# Licensed under the Apache License, Version 2.0 (the "License"); you may not use
# this file except in compliance with the License. You may obtain a copy of the
# License at http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software distributed
# under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
# CONDITIONS OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the License.

"""
Backtracking enumeration of edge labelings with unit propagation, and
symmetry reduction of the results.

Sample usage:

    from pentaglobe.mesh import build_neighborhood_fragment, symmetries
    from pentaglobe.search import enumerate_completions, orbit_reduce
    frag = build_neighborhood_fragment()
    sols = enumerate_completions(frag, 'a3bc', seed={0: 'a', 1: 'a', 2: 'a', 3: 'b', 4: 'c'})
    reps = orbit_reduce(sols, symmetries(frag))

"""
import logging
from dataclasses import dataclass, field

import numpy as np

from pentaglobe.common import (LABELS, UNASSIGNED, InputError, InconsistentSeedError,
                               SymmetryError, label_index, label_string)
from pentaglobe.patterns import get_pattern, placement_array

logger = logging.getLogger(__name__)


class Labeling(object):
    """Assignment of labels to the edges of a host (partial or total).

    Labels are stored as an int8 array indexed by edge id, with -1 for
    unassigned edges.
    """
    def __init__(self, host, pattern, labels):
        self.host = host
        self.pattern = get_pattern(pattern)
        self.labels = np.asarray(labels, dtype=np.int8).copy()
        self.labels.setflags(write=False)
        assert len(self.labels) == host.num_edges, \
            'labeling has {:d} entries, host has {:d} edges'.format(len(self.labels), host.num_edges)

    @classmethod
    def empty(cls, host, pattern):
        return cls(host, pattern, np.full(host.num_edges, UNASSIGNED, dtype=np.int8))

    @classmethod
    def from_mapping(cls, host, pattern, assignments):
        """From {edge id: label} where labels are codes or 'a'/'b'/'c'"""
        labels = np.full(host.num_edges, UNASSIGNED, dtype=np.int8)
        for e, val in assignments.items():
            e = int(e)
            if not 0 <= e < host.num_edges:
                raise InputError('edge id {:d} is not in {!r}'.format(e, host))
            labels[e] = label_index(val) if isinstance(val, str) else int(val)
        return cls(host, pattern, labels)

    @property
    def is_total(self):
        return bool(np.all(self.labels != UNASSIGNED))

    @property
    def key(self):
        return self.labels.tobytes()

    def label(self, e):
        code = int(self.labels[e])
        return LABELS[code] if code >= 0 else None

    def face_labels(self, f):
        return self.labels[list(self.host.faces[f])]

    def as_dict(self):
        """{edge id: 'a'|'b'|'c'} for assigned edges"""
        return {int(e): LABELS[c] for e, c in enumerate(self.labels) if c >= 0}

    def to_dict(self):
        return {'pattern': self.pattern.name,
                'labels': {str(e): lab for e, lab in self.as_dict().items()}}

    def __eq__(self, other):
        return (isinstance(other, Labeling) and self.pattern == other.pattern
                and self.host is other.host and self.key == other.key)

    def __hash__(self):
        return hash((self.pattern.name, self.key))

    def __str__(self):
        return label_string(self.labels)

    def __repr__(self):
        return 'Labeling({:s}, {:s})'.format(self.pattern.name, label_string(self.labels))


@dataclass
class OrbitRepresentative(object):
    """Canonical member of an orbit; `multiplicity` counts the input
    labelings in the orbit, `orbit_size` the distinct images under the group.
    """
    labeling: Labeling
    multiplicity: int
    orbit_size: int
    members: list = field(default_factory=list, repr=False)

    @property
    def labels(self):
        return self.labeling.labels


#==============================================================================
# ENUMERATION
#==============================================================================

class _Propagator(object):
    """Face-by-face placement filtering over a fixed host and pattern"""
    def __init__(self, host, pattern):
        self.host = host
        self.pattern = get_pattern(pattern)
        self.P = placement_array(self.pattern)
        self.face_edges = [np.array(face, dtype=int) for face in host.faces]
        self.edge_faces = host.edge_faces
        self.alphabet = self.pattern.alphabet
        self.nodes = 0

    def check_seed(self, labels):
        bad = [int(e) for e, c in enumerate(labels)
               if c != UNASSIGNED and c not in self.alphabet]
        if bad:
            raise InconsistentSeedError('labels outside the {:s} alphabet on edges {}'.format(
                self.pattern.name, bad))
        for f, fe in enumerate(self.face_edges):
            vals = labels[fe]
            mask = vals != UNASSIGNED
            if len(fe) != 5 or not np.any(np.all(self.P[:, mask] == vals[mask], axis=1)):
                raise InconsistentSeedError('seed is infeasible on face {:d} ({:s})'.format(
                    f, label_string(vals)))

    def propagate(self, labels, faces):
        """Assign every position on which all consistent placements of a face
        agree, until nothing changes. Returns False on a conflict.
        """
        queue = list(faces)
        queued = set(queue)
        while queue:
            f = queue.pop()
            queued.discard(f)
            fe = self.face_edges[f]
            vals = labels[fe]
            mask = vals != UNASSIGNED
            ok = self.P[np.all(self.P[:, mask] == vals[mask], axis=1)]
            if len(ok) == 0:
                return False
            if mask.all():
                continue
            agreed = np.all(ok == ok[0], axis=0) & ~mask
            if not agreed.any():
                continue
            for pos in np.flatnonzero(agreed):
                e = fe[pos]
                labels[e] = ok[0, pos]
                for g in self.edge_faces[e]:
                    if g != f and g not in queued:
                        queue.append(g)
                        queued.add(g)
        return True

    def face_ok(self, labels, f):
        vals = labels[self.face_edges[f]]
        mask = vals != UNASSIGNED
        return bool(np.any(np.all(self.P[:, mask] == vals[mask], axis=1)))

    def solve(self, labels, out, limit=None):
        self.nodes += 1
        free = np.flatnonzero(labels == UNASSIGNED)
        if len(free) == 0:
            out.append(labels.copy())
            return
        e = int(free[0])
        for code in self.alphabet:
            if limit is not None and len(out) >= limit:
                return
            trial = labels.copy()
            trial[e] = code
            if not all(self.face_ok(trial, f) for f in self.edge_faces[e]):
                continue
            if self.propagate(trial, self.edge_faces[e]):
                self.solve(trial, out, limit)


def _seed_array(host, seed, pattern):
    if seed is None:
        return np.full(host.num_edges, UNASSIGNED, dtype=np.int8)
    if isinstance(seed, Labeling):
        return np.array(seed.labels, dtype=np.int8)
    if isinstance(seed, dict):
        return Labeling.from_mapping(host, pattern, seed).labels.copy()
    arr = np.array(seed, dtype=np.int8)
    if len(arr) != host.num_edges:
        raise InputError('seed has {:d} entries, host has {:d} edges'.format(
            len(arr), host.num_edges))
    return arr


def enumerate_completions(host, pattern, seed=None, limit=None):
    """All total labelings extending `seed` in which every face matches the
    pattern, in depth-first order.

    The search first assigns every position forced on some face (all
    consistent placements agree on it), then branches on the lowest-id
    unassigned edge trying labels a < b < c.

    Parameters
    ----------
    host : Fragment or EarthMap
    pattern : EdgePattern or str
    seed : Labeling, dict {edge id: label}, array or None
    limit : int, optional
        Stop after this many completions
    """
    pattern = get_pattern(pattern)
    labels = _seed_array(host, seed, pattern)
    prop = _Propagator(host, pattern)
    prop.check_seed(labels)
    out = []
    if prop.propagate(labels, range(host.num_faces)):
        prop.solve(labels, out, limit)
    logger.debug('%s on %r: %d completions, %d search nodes', pattern.name, host,
                 len(out), prop.nodes)
    return [Labeling(host, pattern, arr) for arr in out]


def count_completions(host, pattern, seed=None):
    return len(enumerate_completions(host, pattern, seed))


def naive_completions(host, pattern, seed=None):
    """Reference enumeration without propagation: assign unassigned edges in id
    order, a < b < c, and reject as soon as a face is fully labeled and does
    not match the pattern.
    """
    pattern = get_pattern(pattern)
    labels = _seed_array(host, seed, pattern)
    P = {tuple(row) for row in placement_array(pattern).tolist()}
    free = [int(e) for e in np.flatnonzero(labels == UNASSIGNED)]
    rank = {e: i for i, e in enumerate(free)}
    closing = [[] for _ in free]
    for f, face in enumerate(host.faces):
        open_edges = [rank[e] for e in face if e in rank]
        if open_edges:
            closing[max(open_edges)].append(face)
        elif tuple(labels[list(face)].tolist()) not in P:
            return []
    out = []
    alphabet = pattern.alphabet

    def descend(i):
        if i == len(free):
            out.append(labels.copy())
            return
        for code in alphabet:
            labels[free[i]] = code
            if all(tuple(labels[list(face)].tolist()) in P for face in closing[i]):
                descend(i + 1)
        labels[free[i]] = UNASSIGNED

    descend(0)
    return [Labeling(host, pattern, arr) for arr in out]


def is_valid_labeling(labeling, pattern=None):
    """True iff the labeling is total and every face matches the pattern"""
    pattern = get_pattern(pattern or labeling.pattern)
    if not labeling.is_total:
        return False
    P = {tuple(row) for row in placement_array(pattern).tolist()}
    return all(tuple(labeling.face_labels(f).tolist()) in P
               for f in range(labeling.host.num_faces))


#==============================================================================
# SYMMETRY REDUCTION
#==============================================================================

def _lexmin_row(images):
    order = np.lexsort(images.T[::-1])
    return images[order[0]]


def canonicalize(labeling, group):
    """Lexicographically smallest group image of a total labeling, comparing
    labels in edge id order (a < b < c).
    """
    if group.num_edges != labeling.host.num_edges:
        raise SymmetryError('group acts on {:d} edges, host has {:d}'.format(
            group.num_edges, labeling.host.num_edges))
    images = group.images(labeling.labels)
    return Labeling(labeling.host, labeling.pattern, _lexmin_row(images))


def orbit_size(labeling, group):
    images = group.images(labeling.labels)
    return len(np.unique(images, axis=0))


def orbit_reduce(labelings, group, keep_members=False):
    """One representative per orbit, sorted by canonical labels.

    Parameters
    ----------
    labelings : iterable of Labeling
        Total labelings over the same host
    group : SymmetryGroup
    keep_members : bool
        Store the input labelings of each orbit on its representative
    """
    orbits = {}
    for lab in labelings:
        images = group.images(lab.labels)
        canon = _lexmin_row(images)
        key = canon.tobytes()
        if key not in orbits:
            orbits[key] = {
                'canon': Labeling(lab.host, lab.pattern, canon),
                'size': len(np.unique(images, axis=0)),
                'members': [],
            }
        orbits[key]['members'].append(lab)
    reps = []
    for key in sorted(orbits, key=lambda k: orbits[k]['canon'].labels.tolist()):
        entry = orbits[key]
        reps.append(OrbitRepresentative(entry['canon'], len(entry['members']), entry['size'],
                                        entry['members'] if keep_members else []))
    return reps


def expand_orbit(labeling, group):
    """Distinct images of a labeling under the group, sorted"""
    images = np.unique(group.images(labeling.labels), axis=0)
    return [Labeling(labeling.host, labeling.pattern, row) for row in images]
