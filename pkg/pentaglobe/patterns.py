# Copyright 2024 pentaglobe developers

# Licensed under the Apache License, Version 2.0 (the "License"); you may not use
# this file except in compliance with the License. You may obtain a copy of the
# License at http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software distributed
# under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
# CONDITIONS OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the License.

"""
Edge-length arrangements of a pentagon all of whose vertices have degree 3.

Up to rotation and reflection the five edges are arranged as one of
    a5    a,a,a,a,a
    a4b   a,a,a,a,b
    a2b2c a,a,b,b,c
    a3bc  a,a,a,b,c
    a3b2  a,a,a,b,b
Labels are abstract symbols stored as integer codes (see common.LABELS).
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from pentaglobe.common import LABELS, UNASSIGNED, InputError, label_index, label_string


@dataclass(frozen=True)
class EdgePattern(object):
    tag: str
    name: str
    canonical: tuple

    @property
    def alphabet(self):
        """Sorted tuple of label codes used by the pattern"""
        return tuple(sorted(set(self.canonical)))

    def __repr__(self):
        return 'EdgePattern({:s}: {:s})'.format(self.name, label_string(self.canonical))

    def __str__(self):
        return self.name


A5 = EdgePattern('A5', 'a5', (0, 0, 0, 0, 0))
A4B = EdgePattern('A4B', 'a4b', (0, 0, 0, 0, 1))
A2B2C = EdgePattern('A2B2C', 'a2b2c', (0, 0, 1, 1, 2))
A3BC = EdgePattern('A3BC', 'a3bc', (0, 0, 0, 1, 2))
A3B2 = EdgePattern('A3B2', 'a3b2', (0, 0, 0, 1, 1))

PATTERNS = {p.name: p for p in (A5, A4B, A2B2C, A3BC, A3B2)}


def get_pattern(pattern):
    """Look up a pattern by its CLI name ('a4b', ...) or tag ('A4B', ...)"""
    if isinstance(pattern, EdgePattern):
        return pattern
    key = str(pattern).lower()
    try:
        return PATTERNS[key]
    except KeyError:
        raise InputError('unknown pattern {!r}; expected one of {:s}'.format(
            pattern, ', '.join(PATTERNS)))


@dataclass(frozen=True)
class Placement(object):
    """One way of laying a pattern onto the edge cycle of a face"""
    pattern: EdgePattern
    offset: int
    reflected: bool
    labels: tuple

    def __repr__(self):
        return 'Placement({:s}, offset={:d}, reflected={}, {:s})'.format(
            self.pattern.name, self.offset, self.reflected, label_string(self.labels))


@lru_cache(maxsize=None)
def placements(pattern):
    """All distinct label sequences obtained from the canonical sequence by
    the five rotations and the five reflections.

    The order is: canonical first, then rotations by increasing offset,
    then reflections by increasing offset. Duplicates keep their first
    occurrence.
    """
    pattern = get_pattern(pattern)
    seq = pattern.canonical
    rev = tuple(reversed(seq))
    out = []
    seen = set()
    for reflected, base in ((False, seq), (True, rev)):
        for offset in range(5):
            labels = base[offset:] + base[:offset]
            if labels in seen:
                continue
            seen.add(labels)
            out.append(Placement(pattern, offset, reflected, labels))
    return tuple(out)


@lru_cache(maxsize=None)
def placement_array(pattern):
    """Placements as an (N, 5) int8 array, in the order of placements()"""
    return np.array([p.labels for p in placements(pattern)], dtype=np.int8)


def _as_codes(seq):
    codes = []
    for val in seq:
        if val is None:
            codes.append(UNASSIGNED)
        elif isinstance(val, str):
            codes.append(UNASSIGNED if val == '?' else label_index(val))
        else:
            codes.append(int(val))
    if len(codes) != 5:
        raise InputError('a pentagon has five edges, got {:d}'.format(len(codes)))
    return np.array(codes, dtype=np.int8)


def tile_matches(seq, pattern):
    """True iff the fully labeled cyclic sequence is a rotation or
    reflection of the pattern's canonical sequence.
    """
    codes = _as_codes(seq)
    if np.any(codes == UNASSIGNED):
        return False
    return bool(np.any(np.all(placement_array(pattern) == codes, axis=1)))


def partial_feasible(seq, pattern):
    """True iff some placement agrees with every assigned position.

    Parameters
    ----------
    seq : sequence of length 5
        Labels as codes, 'a'/'b'/'c' strings, or None/-1 for unassigned
        positions.
    pattern : EdgePattern or str
    """
    codes = _as_codes(seq)
    assigned = codes != UNASSIGNED
    agree = placement_array(pattern)[:, assigned] == codes[assigned]
    return bool(np.any(np.all(agree, axis=1)))


def adjacent_pair_feasible(pattern, l1, l2):
    """True iff the unordered pair {l1, l2} appears as two consecutive labels
    of the canonical cyclic sequence. This decides whether two edges meeting
    at a vertex can belong to one tile.
    """
    pattern = get_pattern(pattern)
    l1, l2 = [label_index(l) if isinstance(l, str) else int(l) for l in (l1, l2)]
    for l in (l1, l2):
        if l not in pattern.alphabet:
            raise InputError('label {!r} is not used by pattern {:s}'.format(
                LABELS[l] if 0 <= l < 3 else l, pattern.name))
    return (min(l1, l2), max(l1, l2)) in _adjacent_pairs(pattern)


@lru_cache(maxsize=None)
def _adjacent_pairs(pattern):
    seq = pattern.canonical
    return frozenset((min(seq[i], seq[(i+1) % 5]), max(seq[i], seq[(i+1) % 5]))
                     for i in range(5))
