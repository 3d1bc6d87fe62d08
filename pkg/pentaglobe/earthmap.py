# Copyright 2024 pentaglobe developers

# Licensed under the Apache License, Version 2.0 (the "License"); you may not use
# this file except in compliance with the License. You may obtain a copy of the
# License at http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software distributed
# under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
# CONDITIONS OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the License.

"""
Edge-congruent earth map tilings built from timezone tilings.

A timezone tiling is a labeling of the timezone template; its left and right
meridian signatures (labels read north to south) decide which tilings can
follow each other. The family graph has signatures as nodes and timezone
tilings as arrows, so that earth map tilings are its closed walks. At
distance 4 the arrows are meridian-part and core-part tilings and nodes
carry a phase (0 on timezone meridians, 1 on the seam between the parts).

Sample usage:

    from pentaglobe.earthmap import enumerate_timezone_tilings, classify_families
    cat = enumerate_timezone_tilings(3, 'a4b')
    cat.raw_count(('aaa', 'aaa'))          # 60
    families = classify_families(3, 'a4b')
    [f.parity for f in families]           # [0, 1]

"""
import logging
from collections import OrderedDict, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import pandas as pd
import networkx as nx

from pentaglobe.common import (LABELS, MIN_TIMEZONES, UNASSIGNED, InputError, check_distance,
                               check_timezones, label_index, label_string)
from pentaglobe.patterns import get_pattern, A2B2C
from pentaglobe.mesh import (build_timezone_template, build_part_template, build_earth_map,
                             symmetries)
from pentaglobe.search import (Labeling, enumerate_completions, orbit_reduce, canonicalize)

logger = logging.getLogger(__name__)

KINDS = ('timezone', 'meridian_part', 'core_part')

# source and target phase of each arrow kind
PHASES = {'timezone': (0, 0), 'meridian_part': (0, 1), 'core_part': (1, 0)}


def strip_template(d, kind='timezone'):
    if kind == 'timezone':
        return build_timezone_template(d)
    if d != 4:
        raise InputError('only the distance 4 timezone splits into parts')
    return build_part_template(kind)


@lru_cache(maxsize=None)
def strip_group(d, kind='timezone', label_swap=False):
    """Symmetries of a timezone or part, optionally with the a<->b swap"""
    group = symmetries(strip_template(d, kind))
    return group.with_label_swap() if label_swap else group


#==============================================================================
# TIMEZONE TILINGS
#==============================================================================

@dataclass
class TimezoneTiling(object):
    """Labeling of a timezone (or distance-4 part) with its boundary data"""
    template: object
    labeling: Labeling
    index: int

    @property
    def kind(self):
        return self.template.kind

    @property
    def labels(self):
        return self.labeling.labels

    @property
    def pattern(self):
        return self.labeling.pattern

    @property
    def left(self):
        return label_string(self.labels[list(self.template.left_meridian)])

    @property
    def right(self):
        return label_string(self.labels[list(self.template.right_meridian)])

    @property
    def signatures(self):
        return self.left, self.right

    @property
    def parity(self):
        """Number of b edges on the left meridian mod 2, for two-letter patterns"""
        if len(self.pattern.alphabet) != 2:
            return None
        return self.left.count('b') % 2

    @property
    def north(self):
        return label_string(self.labels[list(self.template.pole_edges[0])])

    @property
    def south(self):
        return label_string(self.labels[list(self.template.pole_edges[1])])

    @property
    def pole_edge_labels(self):
        return self.north, self.south

    def to_dict(self):
        return {
            'index': self.index,
            'kind': self.kind,
            'left': self.left,
            'right': self.right,
            'north': self.north,
            'south': self.south,
            'labels': self.labeling.to_dict()['labels'],
        }

    def __repr__(self):
        return 'TimezoneTiling(#{:d} {:s} {:s}->{:s} ({:s}/{:s}))'.format(
            self.index, self.kind, self.left, self.right, self.north, self.south)


@lru_cache(maxsize=None)
def strip_tilings(d, pattern, kind='timezone'):
    """All raw labelings of a timezone or part, in search order. At distance 5
    only labelings that lie on a closed walk are kept.
    """
    pattern = get_pattern(pattern)
    template = strip_template(d, kind)
    sols = enumerate_completions(template.fragment, pattern)
    logger.info('d=%d %s %s: %d raw tilings', d, pattern.name, kind, len(sols))
    tilings = [TimezoneTiling(template, lab, i) for i, lab in enumerate(sols)]
    if d == 5:
        kept = _on_closed_walks(tilings)
        logger.info('d=5 %s: %d of %d strip labelings lie on a closed walk', pattern.name,
                    len(kept), len(tilings))
        tilings = [TimezoneTiling(template, t.labeling, i) for i, t in enumerate(kept)]
    return tuple(tilings)


def _on_closed_walks(tilings):
    """Tilings whose left and right signatures lie in one strongly connected
    component of the signature graph.

    At distance 5 the core tiles of a timezone border the neighboring
    timezones, so a strip labeling is a timezone tiling only when it
    continues around the globe.
    """
    D = nx.DiGraph()
    D.add_edges_from((t.left, t.right) for t in tilings)
    comp = {}
    for i, nodes in enumerate(nx.strongly_connected_components(D)):
        for node in nodes:
            comp[node] = i
    return [t for t in tilings if comp[t.left] == comp[t.right]]


class TilingCatalog(object):
    """Timezone or part tilings grouped by (left, right) signature pair.

    Indexing with a pair gives the symmetry-reduced representatives; the
    reduction at each pair uses the elements of the strip's group that fix
    the pair. `raw` holds every tiling.
    """
    def __init__(self, d, pattern, kind='timezone'):
        self.distance = d
        self.pattern = get_pattern(pattern)
        self.kind = kind
        self.template = strip_template(d, kind)
        self.tilings = strip_tilings(d, self.pattern, kind)
        self.group = strip_group(d, kind)
        self.raw = OrderedDict()
        for t in sorted(self.tilings, key=lambda t: (t.left, t.right, t.index)):
            self.raw.setdefault(t.signatures, []).append(t)
        self._reps = {}

    def _pair_of(self, labels):
        tz = self.template
        return (label_string(labels[list(tz.left_meridian)]),
                label_string(labels[list(tz.right_meridian)]))

    def stabilizer(self, pair, group=None):
        group = group or self.group
        first = self.raw[pair][0].labels
        return group.subgroup(lambda g: self._pair_of(g.apply(first)) == pair)

    def representatives(self, pair):
        if pair not in self._reps:
            members = [t.labeling for t in self.raw[pair]]
            self._reps[pair] = orbit_reduce(members, self.stabilizer(pair))
        return self._reps[pair]

    def __getitem__(self, pair):
        return self.representatives(tuple(pair))

    def __contains__(self, pair):
        return tuple(pair) in self.raw

    def __iter__(self):
        return iter(self.raw)

    def __len__(self):
        return len(self.raw)

    def keys(self):
        return self.raw.keys()

    def items(self):
        return [(pair, self.representatives(pair)) for pair in self.raw]

    def raw_count(self, pair):
        return len(self.raw.get(tuple(pair), []))

    @property
    def total(self):
        return len(self.tilings)

    def reduced_with_swap(self):
        """All tilings reduced under the strip group joined with the a<->b swap"""
        group = strip_group(self.distance, self.kind, label_swap=True)
        return orbit_reduce([t.labeling for t in self.tilings], group)

    def reduced(self):
        """All tilings reduced under the full strip group"""
        return orbit_reduce([t.labeling for t in self.tilings], self.group)

    @property
    def df(self):
        rows = [{'left': l, 'right': r, 'raw': len(ts),
                 'representatives': len(self.representatives((l, r))),
                 'multiplicities': ' '.join(str(rep.multiplicity)
                                            for rep in self.representatives((l, r)))}
                for (l, r), ts in self.raw.items()]
        return pd.DataFrame(rows, columns=['left', 'right', 'raw', 'representatives',
                                           'multiplicities'])

    def to_csv(self, fpath, verbose=True):
        self.df.to_csv(fpath, index=False)
        if verbose:
            print('Wrote', fpath)

    def __repr__(self):
        return 'TilingCatalog(d={:d}, {:s}, {:s}: {:d} tilings, {:d} signature pairs)'.format(
            self.distance, self.pattern.name, self.kind, self.total, len(self.raw))


def enumerate_timezone_tilings(d, pattern):
    """Timezone tilings of distance d grouped by signature pair"""
    check_distance(d)
    return TilingCatalog(d, pattern, 'timezone')


def enumerate_parts(pattern, d=4):
    """(meridian part catalog, core part catalog) at distance 4"""
    if d != 4:
        raise InputError('meridian and core parts exist only at distance 4, got {!r}'.format(d))
    return TilingCatalog(4, pattern, 'meridian_part'), TilingCatalog(4, pattern, 'core_part')


def gluable_meridian_parts(pattern):
    """Meridian part tilings whose both boundaries are matched by core parts"""
    meridian, core = enumerate_parts(pattern)
    core_left = {l for l, _ in core.keys()}
    core_right = {r for _, r in core.keys()}
    return [t for t in meridian.tilings if t.right in core_left and t.left in core_right]


#==============================================================================
# FAMILY GRAPH
#==============================================================================

class FamilyGraph(object):
    """Directed multigraph of signatures (with phase) and raw tilings.

    Attributes
    ----------
    graph : networkx.MultiDiGraph
        Nodes are (signature, phase); each edge has key = arrow index and
        attributes `tiling` and `kind`
    arrows : list of TimezoneTiling
    """
    def __init__(self, d, pattern):
        check_distance(d)
        self.distance = d
        self.pattern = get_pattern(pattern)
        self.kinds = ('meridian_part', 'core_part') if d == 4 else ('timezone',)
        self.graph = nx.MultiDiGraph()
        self.arrows = []
        self._lookup = {}
        for kind in self.kinds:
            src, dst = PHASES[kind]
            for t in strip_tilings(d, self.pattern, kind):
                idx = len(self.arrows)
                self.arrows.append(t)
                self._lookup[(kind, t.labeling.key)] = idx
                self.graph.add_edge((t.left, src), (t.right, dst), key=idx, tiling=t, kind=kind)

    @property
    def steps(self):
        """Arrows per timezone"""
        return len(self.kinds)

    @property
    def signatures(self):
        return sorted({sig for sig, _ in self.graph.nodes})

    def node_label(self, node):
        sig, phase = node
        return sig + "'" if phase else sig

    def arrow_index(self, kind, labels):
        return self._lookup.get((kind, np.asarray(labels, dtype=np.int8).tobytes()))

    def endpoints(self, idx):
        t = self.arrows[idx]
        src, dst = PHASES[t.kind]
        return (t.left, src), (t.right, dst)

    def out_degree(self, sig, phase=0):
        node = (sig, phase)
        return self.graph.out_degree(node) if node in self.graph else 0

    def arrows_between(self, u, v, phase=0):
        """Arrow indices from signature u to v (distance 4: meridian parts
        when phase is 0, core parts when phase is 1)
        """
        src = (u, phase)
        dst = (v, 1 - phase if self.distance == 4 else phase)
        if not self.graph.has_edge(src, dst):
            return []
        return sorted(self.graph[src][dst])

    def loops(self, sig):
        return self.arrows_between(sig, sig) if self.distance != 4 else []

    def subgraph(self, parity):
        """Arrows whose tilings have the given parity"""
        keep = [(u, v, k) for u, v, k, t in self.graph.edges(keys=True, data='tiling')
                if t.parity == parity]
        return self.graph.edge_subgraph(keep)

    def node_order(self, phase=0):
        return sorted(n for n in self.graph.nodes if n[1] == phase)

    def transfer_matrix(self):
        """Arrow counts between timezone meridians (phase 0 nodes), with the
        distance-4 parts multiplied through the seam.
        """
        nodes = sorted(self.graph.nodes)
        pos = {n: i for i, n in enumerate(nodes)}
        A = np.zeros((len(nodes), len(nodes)), dtype=np.int64)
        for u, v in self.graph.edges():
            A[pos[u], pos[v]] += 1
        p0 = [pos[n] for n in nodes if n[1] == 0]
        if self.distance != 4:
            return A[np.ix_(p0, p0)]
        p1 = [pos[n] for n in nodes if n[1] == 1]
        return A[np.ix_(p0, p1)] @ A[np.ix_(p1, p0)]

    def count_closed(self, n):
        """Number of raw closed labelings of the earth map with n timezones"""
        T = self.transfer_matrix()
        if T.size == 0:
            return 0
        return int(np.trace(np.linalg.matrix_power(T, n)))

    def closed_walks(self, n):
        """Arrow index sequences of closed walks with n timezones that start
        on a timezone meridian, in lexicographic order of arrow indices.
        """
        length = n * self.steps
        out_arrows = defaultdict(list)
        for u, _, k in self.graph.edges(keys=True):
            out_arrows[u].append(k)
        for u in out_arrows:
            out_arrows[u].sort()
        walk = []

        def extend(node, start):
            if len(walk) == length:
                if node == start:
                    yield tuple(walk)
                return
            for k in out_arrows[node]:
                walk.append(k)
                yield from extend(self.endpoints(k)[1], start)
                walk.pop()

        for start in self.node_order(0):
            yield from extend(start, start)

    def is_closed_walk(self, walk):
        """True when the arrow indices chain head to tail and return to the
        first arrow's source
        """
        if not walk or any(k is None for k in walk):
            return False
        ends = [self.endpoints(k) for k in walk]
        return all(ends[i][1] == ends[(i + 1) % len(ends)][0] for i in range(len(ends)))

    def collapsed(self):
        """DiGraph with one edge per (source, target, kind) carrying the
        arrow count and the lowest arrow index
        """
        D = nx.MultiDiGraph()
        for u, v, k, kind in sorted(self.graph.edges(keys=True, data='kind'),
                                    key=lambda e: e[2]):
            D.add_node(u)
            D.add_node(v)
            if D.has_edge(u, v, key=kind):
                D[u][v][kind]['multiplicity'] += 1
            else:
                D.add_edge(u, v, key=kind, kind=kind, multiplicity=1, first=k)
        return D

    def __repr__(self):
        return 'FamilyGraph(d={:d}, {:s}: {:d} nodes, {:d} arrows)'.format(
            self.distance, self.pattern.name, self.graph.number_of_nodes(), len(self.arrows))


@lru_cache(maxsize=None)
def build_family_graph(d, pattern):
    return FamilyGraph(d, get_pattern(pattern))


#==============================================================================
# FAMILIES
#==============================================================================

@dataclass
class Family(object):
    """Arrows of the family graph that glue into one family of earth maps"""
    id: int
    graph: FamilyGraph
    arrows: tuple
    parity: object = None
    _descriptor: object = field(default=None, repr=False)

    @property
    def nodes(self):
        return sorted({n for a in self.arrows for n in self.graph.endpoints(a)})

    @property
    def signatures(self):
        return sorted({sig for sig, _ in self.nodes})

    @property
    def descriptor(self):
        if self._descriptor is None:
            self._descriptor = pole_descriptor(self)
        return self._descriptor

    def cycle_graph(self):
        """DiGraph of the family's arrows; each edge lists its arrows"""
        D = nx.DiGraph()
        for a in self.arrows:
            u, v = self.graph.endpoints(a)
            if D.has_edge(u, v):
                D[u][v]['arrows'].append(a)
            else:
                D.add_edge(u, v, arrows=[a])
        return D

    def cycles(self):
        """Simple directed cycles, shortest first, each starting on a timezone
        meridian node
        """
        out = []
        for cycle in nx.simple_cycles(self.cycle_graph()):
            k = min((n, i) for i, n in enumerate(cycle) if n[1] == 0)[1]
            out.append(tuple(cycle[k:] + cycle[:k]))
        return sorted(out, key=lambda c: (len(c), c))

    @property
    def representative(self):
        """Binomial name of the shortest cycle (lowest arrows), see `pole_key`"""
        cycles = self.cycles()
        if not cycles:
            return ''
        D = self.cycle_graph()
        cycle = cycles[0]
        north, south = '', ''
        for u, v in zip(cycle, cycle[1:] + cycle[:1]):
            t = self.graph.arrows[min(D[u][v]['arrows'])]
            north += t.north
            south += t.south
        return pole_key(north, south, label_swap=self.graph.pattern == A2B2C)

    def to_dict(self):
        _, names = self.descriptor
        return {
            'id': self.id,
            'distance': self.graph.distance,
            'pattern': self.graph.pattern.name,
            'parity': self.parity,
            'signatures': [self.graph.node_label(n) for n in self.nodes],
            'arrows': len(self.arrows),
            'poles': list(names),
            'combinations': [list(p) for p in pole_combinations(self)[1]],
            'representative': self.representative,
        }


class _UnionFind(object):
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def _arrow_actions(fg):
    """Per group element, the permutation of arrow indices it induces.

    Distance 4 pairs the meridian-part and core-part elements that flip the
    same way, since a symmetry of the earth map flips both parts alike.
    """
    swap = fg.pattern == A2B2C
    groups = {kind: strip_group(fg.distance, kind, label_swap=swap) for kind in fg.kinds}
    if fg.distance != 4:
        paired = [{'timezone': g} for g in groups['timezone']]
    else:
        paired = []
        for g in groups['meridian_part']:
            for h in groups['core_part']:
                if (g.pole_swap, g.side_swap, g.label_perm) == (h.pole_swap, h.side_swap,
                                                                h.label_perm):
                    paired.append({'meridian_part': g, 'core_part': h})
    actions = []
    for elements in paired:
        perm = {}
        for idx, t in enumerate(fg.arrows):
            image = elements[t.kind].apply(t.labels)
            perm[idx] = fg.arrow_index(t.kind, image)
        actions.append(perm)
    return actions


def _sample_walk(fg, arrows):
    """Arrow indices of one closed walk through the given arrows, starting on
    a timezone meridian
    """
    keep = [fg.endpoints(a) + (a,) for a in arrows]
    cycle = nx.find_cycle(fg.graph.edge_subgraph(keep), source=keep[0][0])
    start = min(i for i, (u, _, _) in enumerate(cycle) if u[1] == 0)
    return [k for _, _, k in cycle[start:] + cycle[:start]]


def _merge_map_images(fg, comp, kept, uf):
    """Join the components whose closed tilings are equal under a symmetry of
    the whole earth map.

    One closed tiling per class is assembled from a closed walk repeated up
    to the minimum number of timezones; every group image of it is cut back
    into timezones and its class is joined with the source class.
    """
    d = fg.distance
    classes = defaultdict(list)
    for a in sorted(kept):
        classes[uf.find(comp[fg.endpoints(a)[0]])].append(a)
    for root, arrows in sorted(classes.items()):
        walk = _sample_walk(fg, [a for a in arrows if comp[fg.endpoints(a)[0]] == root])
        L = len(walk) // fg.steps
        n = L * int(np.ceil(MIN_TIMEZONES[d] / L))
        em = build_earth_map(d, n)
        labeling = assemble(em, [fg.arrows[k] for k in walk * (n // L)], fg.pattern)
        for image in earth_map_group(d, n, fg.pattern).images(labeling.labels):
            first = _decompose_labels(image, em, fg)[0]
            if first is None or first not in kept:
                logger.warning('map symmetry image of a d=%d closed tiling is not on a cycle', d)
                continue
            uf.union(root, comp[fg.endpoints(first)[0]])


@lru_cache(maxsize=None)
def classify_families(d, pattern):
    """Families of earth map tilings at distance d.

    Arrows that lie on no directed cycle are dropped. Two kept arrows are in
    the same family when they lie in the same strongly connected component,
    when a symmetry of the timezone (a<->b included for a2b2c) maps one
    component onto the other, or when a symmetry of the closed earth map
    takes a tiling of one component to a tiling of the other.
    """
    fg = build_family_graph(d, pattern)
    comp = {}
    for i, nodes in enumerate(sorted(nx.strongly_connected_components(fg.graph),
                                     key=lambda c: min(c))):
        for node in nodes:
            comp[node] = i
    kept = [a for a in range(len(fg.arrows))
            if comp[fg.endpoints(a)[0]] == comp[fg.endpoints(a)[1]]]
    uf = _UnionFind()
    for a in kept:
        uf.find(comp[fg.endpoints(a)[0]])
    kept_set = set(kept)
    for perm in _arrow_actions(fg):
        for a in kept:
            b = perm[a]
            if b is None or b not in kept_set:
                logger.warning('symmetry image of arrow %d is not on a cycle', a)
                continue
            uf.union(comp[fg.endpoints(a)[0]], comp[fg.endpoints(b)[0]])
    _merge_map_images(fg, comp, kept_set, uf)
    classes = defaultdict(list)
    for a in kept:
        classes[uf.find(comp[fg.endpoints(a)[0]])].append(a)

    families = []
    for arrows in classes.values():
        parities = {fg.arrows[a].parity for a in arrows}
        parity = parities.pop() if len(parities) == 1 else None
        families.append((parity if parity is not None else -1, min(arrows), arrows, parity))
    families.sort(key=lambda f: (f[0], f[1]))
    out = [Family(i + 1, fg, tuple(sorted(arrows)), parity)
           for i, (_, _, arrows, parity) in enumerate(families)]
    logger.info('d=%d %s: %d families', d, fg.pattern.name, len(out))
    return tuple(out)


def _primitive(north, south):
    """Shortest joint period of a pair of pole strings"""
    size = len(north)
    for p in range(1, size + 1):
        k = size // p
        if size % p == 0 and (north, south) == (north[:p] * k, south[:p] * k):
            return north[:p], south[:p]
    return north, south


def pole_key(north, south, label_swap=False):
    """Binomial name '(north/south)' of a circular product of pole strings.

    The strings are read west to east and reduced to their shortest period.
    The name is the least form under joint rotation, joint reversal
    (horizontal flip), exchange of the poles (vertical flip) and, with
    `label_swap`, the exchange of a and b.
    """
    north, south = _primitive(north, south)
    swap = str.maketrans('ab', 'ba')
    forms = []
    for N, S in ((north, south), (south, north),
                 (north[::-1], south[::-1]), (south[::-1], north[::-1])):
        forms += [(N[k:] + N[:k], S[k:] + S[:k]) for k in range(max(len(N), 1))]
    if label_swap:
        forms += [(N.translate(swap), S.translate(swap)) for N, S in forms]
    return '({:s}/{:s})'.format(*min(forms))


def _cycle_pole_strings(family):
    """{(north, south)} read along every simple cycle of the family"""
    D = family.cycle_graph()
    fg = family.graph
    options = {(u, v): {(fg.arrows[a].north, fg.arrows[a].south) for a in arrows}
               for u, v, arrows in D.edges(data='arrows')}
    out = set()
    for cycle in nx.simple_cycles(D):
        states = {('', '')}
        for u, v in zip(cycle, cycle[1:] + cycle[:1]):
            states = {(N + n, S + s) for N, S in states for n, s in options[(u, v)]}
        out |= states
    return out


def pole_descriptor(family):
    """(distance, sorted binomial names of the family's simple cycles).

    Each simple cycle is named by its pole strings in cyclic order, see
    `pole_key`; a2b2c names are also taken up to a<->b.
    """
    swap = family.graph.pattern == A2B2C
    names = {pole_key(N, S, label_swap=swap) for N, S in _cycle_pole_strings(family)}
    return family.graph.distance, tuple(sorted(names))


def pole_combinations(family):
    """(distance, sorted pairs of pole label sets) over the family's simple
    cycles. A pair joins the set of labels at one pole with the set at the
    other, both written as sorted strings; the pair itself is unordered.
    """
    pairs = {tuple(sorted((''.join(sorted(set(N))), ''.join(sorted(set(S))))))
             for N, S in _cycle_pole_strings(family)}
    return family.graph.distance, tuple(sorted(pairs))


#==============================================================================
# CLOSED TILINGS
#==============================================================================

@lru_cache(maxsize=None)
def closed_labelings(d, n, pattern):
    """All raw labelings of the closed earth map, by direct search"""
    check_timezones(d, n)
    em = build_earth_map(d, n)
    sols = enumerate_completions(em, get_pattern(pattern))
    logger.info('closed d=%d n=%d %s: %d raw labelings', d, n, get_pattern(pattern).name,
                len(sols))
    return tuple(sols)


@lru_cache(maxsize=None)
def earth_map_group(d, n, pattern):
    return symmetries(build_earth_map(d, n), pattern=pattern)


def enumerate_closed(d, n, pattern):
    """Earth map tilings with n timezones up to the symmetries of the map"""
    pattern = get_pattern(pattern)
    return orbit_reduce(closed_labelings(d, n, pattern), earth_map_group(d, n, pattern))


def assemble(earth_map, arrows, pattern=None):
    """Labeling of the earth map from one arrow per strip, west to east
    (meridian part then core part in each timezone at distance 4).
    """
    steps = 2 if earth_map.distance == 4 else 1
    if len(arrows) != steps * earth_map.timezones:
        raise InputError('{:d} arrows do not fill {:d} timezones'.format(
            len(arrows), earth_map.timezones))
    pattern = get_pattern(pattern or arrows[0].pattern)
    labels = np.full(earth_map.num_edges, UNASSIGNED, dtype=np.int8)
    for i, t in enumerate(arrows):
        k = i // steps
        local = np.arange(t.template.fragment.num_edges)
        parent = t.template.parent_edges if t.template.parent_edges is not None else local
        target = earth_map.edge_maps[k, parent]
        clash = (labels[target] != UNASSIGNED) & (labels[target] != t.labels)
        if np.any(clash):
            raise InputError('arrow {:d} does not glue to its neighbors'.format(i))
        labels[target] = t.labels
    return Labeling(earth_map, pattern, labels)


def decompose(labeling, fg):
    """Arrow indices of a closed labeling, strip by strip"""
    return _decompose_labels(labeling.labels, labeling.host, fg)


def _decompose_labels(labels, em, fg):
    out = []
    for k in range(em.timezones):
        for kind in fg.kinds:
            template = strip_template(em.distance, kind)
            local = np.arange(template.fragment.num_edges)
            parent = template.parent_edges if template.parent_edges is not None else local
            out.append(fg.arrow_index(kind, labels[em.edge_maps[k, parent]]))
    return tuple(out)


def cycle_labelings(d, n, pattern):
    """Closed labelings assembled from the closed walks of the family graph"""
    fg = build_family_graph(d, pattern)
    em = build_earth_map(d, n)
    return [assemble(em, [fg.arrows[k] for k in walk], fg.pattern)
            for walk in fg.closed_walks(n)]


def specialize(labeling, substitution, pattern=None):
    """Relabel edgewise, e.g. substitution={'c': 'a'}. The result is tagged
    with `pattern` (default: the source pattern) and is not checked.
    """
    codes = np.arange(len(LABELS) + 1, dtype=np.int8)
    codes[-1] = UNASSIGNED
    for src, dst in substitution.items():
        codes[label_index(src)] = label_index(dst)
    labels = codes[labeling.labels]
    return Labeling(labeling.host, pattern or labeling.pattern, labels)


def core_tile_types(labeling):
    """{face: neighborhood type} for the core tiles of a closed labeling"""
    from pentaglobe.neighborhood import classify_face
    em = labeling.host
    core = set(em.template.core_faces)
    return {f: classify_face(labeling, f)
            for f, (_, tf) in enumerate(em.decomposition) if tf in core}


def timezone_specializations(d, kind='timezone'):
    """(canonical a3b2 tilings that lie on a closed walk, canonical valid c->a
    specializations of a2b2c tilings), both as sets of label bytes. At
    distance 4 `kind` picks the meridian or core part.
    """
    from pentaglobe.search import is_valid_labeling
    group = strip_group(d, kind)
    fg = build_family_graph(d, 'a3b2')
    on_cycle = {a for fam in classify_families(d, 'a3b2') for a in fam.arrows}
    direct = {canonicalize(fg.arrows[a].labeling, group).key for a in on_cycle
              if fg.arrows[a].kind == kind}
    special = set()
    for t in strip_tilings(d, 'a2b2c', kind):
        lab = specialize(t.labeling, {'c': 'a'}, pattern='a3b2')
        if is_valid_labeling(lab):
            special.add(canonicalize(lab, group).key)
    return direct, special
