# Copyright 2024 pentaglobe developers

# Licensed under the Apache License, Version 2.0 (the "License"); you may not use
# this file except in compliance with the License. You may obtain a copy of the
# License at http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software distributed
# under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
# CONDITIONS OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the License.

"""
Combinatorial symmetries of fragments, timezone templates and earth maps.

Automorphisms are found by mapping one oriented face (a flag: face, starting
position, direction) onto every other oriented face of the same size and
propagating across shared edges. A map that stays consistent and covers all
faces is an automorphism.
"""
import logging
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from pentaglobe.common import SymmetryError
from pentaglobe.patterns import get_pattern, A2B2C
from pentaglobe.mesh.fragment import Fragment, TimezoneTemplate, EarthMap

logger = logging.getLogger(__name__)

IDENTITY_LABELS = (0, 1, 2)
SWAP_AB = (1, 0, 2)


@dataclass(frozen=True)
class Automorphism(object):
    """Compatible permutations of vertices, edges and faces, with an optional
    permutation of the labels. `perm[i]` is the image of item i.
    """
    vertex_perm: tuple
    edge_perm: tuple
    face_perm: tuple
    label_perm: tuple = IDENTITY_LABELS
    pole_swap: bool = False
    side_swap: bool = False
    name: str = field(default='', compare=False)

    @property
    def is_identity(self):
        return (all(i == p for i, p in enumerate(self.vertex_perm))
                and all(i == p for i, p in enumerate(self.edge_perm))
                and self.label_perm == IDENTITY_LABELS)

    def compose(self, other):
        """self after other"""
        def comp(a, b):
            return tuple(a[i] for i in b)
        return Automorphism(comp(self.vertex_perm, other.vertex_perm),
                            comp(self.edge_perm, other.edge_perm),
                            comp(self.face_perm, other.face_perm),
                            comp(self.label_perm, other.label_perm),
                            self.pole_swap != other.pole_swap,
                            self.side_swap != other.side_swap)

    def with_labels(self, label_perm):
        return Automorphism(self.vertex_perm, self.edge_perm, self.face_perm,
                            tuple(label_perm), self.pole_swap, self.side_swap,
                            self.name + '+swap')

    def apply(self, labels):
        """Image of an edge label array: out[sigma(e)] = pi(labels[e])"""
        labels = np.asarray(labels)
        if len(labels) != len(self.edge_perm):
            raise SymmetryError('automorphism acts on {:d} edges, labeling has {:d}'.format(
                len(self.edge_perm), len(labels)))
        pi = np.array(self.label_perm + (-1,), dtype=labels.dtype)
        out = np.empty_like(labels)
        out[np.asarray(self.edge_perm)] = pi[labels]
        return out


class SymmetryGroup(object):
    """Finite group of automorphisms of one host.

    Sample usage:

        group = symmetries(build_neighborhood_fragment())
        group.order             # 10
        group.images(labels)    # (order, num_edges) array of images

    """
    def __init__(self, host, elements, generators=None):
        self.host = host
        self.elements = list(elements)
        assert self.elements and self.elements[0].is_identity, \
            'the identity must come first'
        self.generators = generators if generators is not None else _generators(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def num_edges(self):
        return len(self.elements[0].edge_perm)

    def edge_perm_array(self):
        if not hasattr(self, '_edge_perms'):
            self._edge_perms = np.array([g.edge_perm for g in self.elements], dtype=int)
            self._inv_perms = np.argsort(self._edge_perms, axis=1)
            self._label_perms = np.array([g.label_perm + (-1,) for g in self.elements],
                                         dtype=np.int8)
        return self._edge_perms

    def images(self, labels):
        """All group images of a label array, one row per element"""
        labels = np.asarray(labels, dtype=np.int8)
        if len(labels) != self.num_edges:
            raise SymmetryError('group acts on {:d} edges, labeling has {:d}'.format(
                self.num_edges, len(labels)))
        self.edge_perm_array()
        # image[g, sigma_g(e)] = pi_g(labels[e])  <=>  image[g, e] = pi_g(labels[sigma_g^-1(e)])
        pulled = labels[self._inv_perms]
        rows = np.arange(self.order)[:, None]
        return self._label_perms[rows, pulled]

    def subgroup(self, keep):
        """Elements satisfying a predicate (the caller guarantees closure)"""
        elements = [g for g in self.elements if keep(g)]
        return SymmetryGroup(self.host, elements)

    def with_label_swap(self, label_perm=SWAP_AB):
        """Direct product with a label permutation of order 2"""
        swapped = [g.with_labels(label_perm) for g in self.elements]
        return SymmetryGroup(self.host, self.elements + swapped)

    def is_closed(self):
        keys = {g.edge_perm + g.label_perm for g in self.elements}
        return all(g.compose(h).edge_perm + g.compose(h).label_perm in keys
                   for g in self.elements for h in self.elements)

    def __repr__(self):
        return 'SymmetryGroup(order {:d} on {:s})'.format(self.order, repr(self.host))


def _generators(elements):
    """Greedy generating set: keep an element when it is not yet generated"""
    identity = elements[0]
    generated = {identity.edge_perm + identity.label_perm: identity}
    gens = []
    for g in elements[1:]:
        if g.edge_perm + g.label_perm in generated:
            continue
        gens.append(g)
        frontier = list(generated.values())
        while frontier:
            new = []
            for h in frontier:
                for s in gens:
                    k = s.compose(h)
                    key = k.edge_perm + k.label_perm
                    if key not in generated:
                        generated[key] = k
                        new.append(k)
            frontier = new
    return gens


#==============================================================================
# AUTOMORPHISM SEARCH
#==============================================================================

def _oriented(frag, f, start, step):
    """Vertices and edges of face f read from position `start` in direction
    `step` (+1 or -1)
    """
    verts = frag.face_vertices[f]
    edges = frag.faces[f]
    m = len(edges)
    vs = [verts[(start + step*k) % m] for k in range(m)]
    if step > 0:
        es = [edges[(start + k) % m] for k in range(m)]
    else:
        es = [edges[(start - k - 1) % m] for k in range(m)]
    return vs, es


def _flag_for(frag, g, e, x):
    """Orientation of face g that starts at vertex x and leaves along edge e"""
    edges = frag.faces[g]
    verts = frag.face_vertices[g]
    m = len(edges)
    for q in range(m):
        if edges[q] != e:
            continue
        if verts[q] == x:
            return q, 1
        if verts[(q+1) % m] == x:
            return (q+1) % m, -1
    return None


def _extend(frag, f0, target):
    """Try to extend the flag map (f0, 0, +1) -> target to an automorphism.
    Returns (vmap, emap, fmap) or None.
    """
    nv, ne, nf = frag.num_vertices, frag.num_edges, frag.num_faces
    vmap = -np.ones(nv, dtype=int)
    vinv = -np.ones(nv, dtype=int)
    emap = -np.ones(ne, dtype=int)
    einv = -np.ones(ne, dtype=int)
    fmap = -np.ones(nf, dtype=int)
    finv = -np.ones(nf, dtype=int)

    def assign(amap, ainv, a, b):
        if amap[a] < 0 and ainv[b] < 0:
            amap[a] = b
            ainv[b] = a
            return True
        return amap[a] == b and ainv[b] == a

    queue = deque([((f0, 0, 1), target)])
    while queue:
        (f, s, d), (g, t, c) = queue.popleft()
        if fmap[f] >= 0:
            if fmap[f] != g:
                return None
            continue
        if len(frag.faces[f]) != len(frag.faces[g]) or not assign(fmap, finv, f, g):
            return None
        vs, es = _oriented(frag, f, s, d)
        wt, et = _oriented(frag, g, t, c)
        for x, y in zip(vs, wt):
            if x < 0 or y < 0 or not assign(vmap, vinv, x, y):
                return None
        for e, e2 in zip(es, et):
            if not assign(emap, einv, e, e2):
                return None
        for k, (e, e2) in enumerate(zip(es, et)):
            across = frag.other_face(e, f)
            across2 = frag.other_face(e2, g)
            if (across is None) != (across2 is None):
                return None
            if across is None or fmap[across] >= 0:
                if across is not None and fmap[across] != across2:
                    return None
                continue
            flag = _flag_for(frag, across, e, vs[k])
            flag2 = _flag_for(frag, across2, e2, wt[k])
            if flag is None or flag2 is None:
                return None
            queue.append(((across,) + flag, (across2,) + flag2))

    if np.any(fmap < 0) or np.any(emap < 0) or np.any(vmap < 0):
        return None
    return vmap, emap, fmap


def automorphisms(frag):
    """All combinatorial automorphisms of a connected fragment, identity first.

    Sample usage:

        auts = automorphisms(build_neighborhood_fragment())
        len(auts)   # 10

    """
    out = []
    seen = set()
    m = len(frag.faces[0])
    for g in range(frag.num_faces):
        if len(frag.faces[g]) != m:
            continue
        for t in range(m):
            for c in (1, -1):
                found = _extend(frag, 0, (g, t, c))
                if found is None:
                    continue
                vmap, emap, fmap = found
                key = tuple(emap.tolist())
                if key in seen:
                    continue
                seen.add(key)
                out.append(Automorphism(tuple(vmap.tolist()), key, tuple(fmap.tolist())))
    out.sort(key=lambda a: (not a.is_identity, a.edge_perm))
    logger.debug('%d automorphisms of %s', len(out), frag)
    return out


def is_automorphism(frag, aut):
    """Exhaustive incidence check: every face goes to a face with the same
    cyclic edge sequence up to rotation and reflection, and edge endpoints
    go to edge endpoints.
    """
    ep, vp, fp = aut.edge_perm, aut.vertex_perm, aut.face_perm
    if sorted(ep) != list(range(frag.num_edges)) or sorted(fp) != list(range(frag.num_faces)):
        return False
    for e, (u, v) in enumerate(frag.edges):
        if {vp[u], vp[v]} != set(frag.edges[ep[e]].tolist()):
            return False
    for f, face in enumerate(frag.faces):
        image = [ep[e] for e in face]
        target = list(frag.faces[fp[f]])
        m = len(target)
        rotations = [target[k:] + target[:k] for k in range(m)]
        rotations += [list(reversed(r)) for r in rotations]
        if image not in rotations:
            return False
    return True


#==============================================================================
# GROUPS PER SUBJECT
#==============================================================================

def _template_group(template):
    frag = template.fragment
    poles = {template.north, template.south}
    left, right = set(template.left_meridian), set(template.right_meridian)
    meridians = left | right
    elements = []
    for aut in automorphisms(frag):
        if {aut.vertex_perm[p] for p in poles} != poles:
            continue
        if {aut.edge_perm[e] for e in meridians} != meridians:
            continue
        pole_swap = aut.vertex_perm[template.north] == template.south
        side_swap = aut.edge_perm[template.left_meridian[0]] in right
        elements.append(Automorphism(aut.vertex_perm, aut.edge_perm, aut.face_perm,
                                     pole_swap=pole_swap, side_swap=side_swap,
                                     name=_flip_name(pole_swap, side_swap)))
    return SymmetryGroup(template, elements)


def _flip_name(pole_swap, side_swap):
    return {(False, False): 'identity', (True, False): 'vertical flip',
            (False, True): 'horizontal flip', (True, True): 'rotation'}[(pole_swap, side_swap)]


def _earth_map_group(em):
    north = em.poles[0]
    elements = []
    for aut in automorphisms(em):
        pole_swap = aut.vertex_perm[north] != north
        elements.append(Automorphism(aut.vertex_perm, aut.edge_perm, aut.face_perm,
                                     pole_swap=pole_swap))
    return SymmetryGroup(em, elements)


def symmetries(subject, d=None, pattern=None):
    """Symmetry group of a fragment, timezone template or earth map.

    Parameters
    ----------
    subject : Fragment, TimezoneTemplate or EarthMap
    d : int, optional
        Distance, checked against the subject when given
    pattern : EdgePattern or str, optional
        When the pattern is a2b2c the a<->b label swap is attached
    """
    if isinstance(subject, TimezoneTemplate):
        if d is not None:
            assert d == subject.distance, 'template has distance {:d}'.format(subject.distance)
        group = _template_group(subject)
    elif isinstance(subject, EarthMap):
        if d is not None:
            assert d == subject.distance, 'earth map has distance {:d}'.format(subject.distance)
        group = _earth_map_group(subject)
    elif isinstance(subject, Fragment):
        group = SymmetryGroup(subject, automorphisms(subject))
    else:
        raise SymmetryError('cannot compute symmetries of {!r}'.format(type(subject).__name__))
    if pattern is not None and get_pattern(pattern) == A2B2C:
        group = group.with_label_swap()
    return group
