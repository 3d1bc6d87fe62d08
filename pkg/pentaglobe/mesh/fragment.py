# Copyright 2024 pentaglobe developers

# Licensed under the Apache License, Version 2.0 (the "License"); you may not use
# this file except in compliance with the License. You may obtain a copy of the
# License at http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software distributed
# under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
# CONDITIONS OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the License.

"""
Combinatorial incidence structures for pentagonal tilings.

A Fragment stores vertices, edges (pairs of vertices, parallel edges allowed)
and faces (cyclic sequences of edge ids). Ids are dense integers assigned in
the order the builder lists them. EarthMap is a closed Fragment with two
poles and a decomposition into timezones; TimezoneTemplate wraps the
fragment of a single timezone (or, at distance 4, of one of its two parts).
"""
from collections import Counter

import numpy as np
import pandas as pd
import networkx as nx


class Fragment(object):
    """Tiling of a disk (boundary present) or of the sphere (no boundary).

    Sample usage:

        frag = Fragment.from_vertex_cycles([('u','v','w','x','y'), ...])
        frag.faces[0]            # edge ids of face 0, in cyclic order
        frag.face_vertices[0]    # vertex ids, edge k joins vertex k and k+1
        frag.boundary_edges      # closed walk along the boundary

    """
    def __init__(self, vertex_names, edges, faces, edge_names=None, name='fragment'):
        """
        Parameters
        ----------
        vertex_names : list of str
            One name per vertex; vertex ids are list positions
        edges : list of (int, int)
            Vertex ids of the edge endpoints; edge ids are list positions
        faces : list of list of int
            Edge ids around each face, in cyclic order
        """
        self.name = name
        self.vertex_names = tuple(vertex_names)
        self.edges = np.array(edges, dtype=int).reshape(-1, 2)
        self.faces = tuple(tuple(int(e) for e in f) for f in faces)
        if edge_names is None:
            edge_names = ['{:s}{:s}'.format(self.vertex_names[u], self.vertex_names[v])
                          for u, v in self.edges]
        self.edge_names = tuple(edge_names)
        self._index()

    @classmethod
    def from_vertex_cycles(cls, cycles, edge_order=None, parallel=None, name='fragment'):
        """Build a fragment from faces written as cycles of vertex names.

        Edges are identified by their unordered pair of endpoints. Parallel
        edges are told apart by a tag: `parallel` maps a face index to
        {(u, v): tag}, and that face then uses the edge (u, v, tag).

        Parameters
        ----------
        cycles : list of sequences of str
            Vertex names around each face
        edge_order : list of (str, str) or (str, str, tag), optional
            Edges that receive the lowest ids, in this order; the remaining
            edges follow in order of first appearance
        parallel : dict, optional
        """
        parallel = parallel or {}
        vnames = []
        vindex = {}
        def vid(vname):
            if vname not in vindex:
                vindex[vname] = len(vnames)
                vnames.append(vname)
            return vindex[vname]

        ekeys = []
        eindex = {}
        def eid(key):
            if key not in eindex:
                eindex[key] = len(ekeys)
                ekeys.append(key)
            return eindex[key]

        def edge_key(u, v, tag=None):
            pair = frozenset((u, v))
            return pair if tag is None else (pair, tag)

        if edge_order is not None:
            for item in edge_order:
                vid(item[0]); vid(item[1])
                eid(edge_key(*item))
        for cycle in cycles:
            for vname in cycle:
                vid(vname)

        faces = []
        for iface, cycle in enumerate(cycles):
            tags = parallel.get(iface, {})
            face = []
            for k in range(len(cycle)):
                u, v = cycle[k], cycle[(k+1) % len(cycle)]
                tag = tags.get((u, v), tags.get((v, u)))
                face.append(eid(edge_key(u, v, tag)))
            faces.append(face)

        edges = []
        names = []
        for key in ekeys:
            pair, tag = (key, None) if isinstance(key, frozenset) else key
            u, v = sorted(pair, key=lambda s: vindex[s])
            edges.append((vindex[u], vindex[v]))
            names.append(u + v if tag is None else '{:s}{:s}:{:s}'.format(u, v, str(tag)))
        frag = cls(vnames, edges, faces, edge_names=names, name=name)
        frag._edge_keys = {key: i for i, key in enumerate(ekeys)}
        return frag

    #==========================================================================
    # INDEXING
    #==========================================================================

    def _index(self):
        nv = len(self.vertex_names)
        self.vertex_edges = [[] for _ in range(nv)]
        for e, (u, v) in enumerate(self.edges):
            self.vertex_edges[u].append(e)
            if v != u:
                self.vertex_edges[v].append(e)
        self.edge_faces = [[] for _ in range(len(self.edges))]
        for f, face in enumerate(self.faces):
            for e in face:
                self.edge_faces[e].append(f)
        self.face_vertices = tuple(self._face_cycle(face) for face in self.faces)
        self._vertex_lookup = {name: i for i, name in enumerate(self.vertex_names)}
        self._edge_lookup = {}
        for e, (u, v) in enumerate(self.edges):
            self._edge_lookup.setdefault(frozenset((int(u), int(v))), []).append(e)

    def _face_cycle(self, face):
        """Vertices around a face such that edge k joins vertex k and k+1.
        Entries are -1 where consecutive edges share no vertex.
        """
        m = len(face)
        verts = []
        for k in range(m):
            prev_e = set(self.edges[face[k-1]].tolist())
            this_e = self.edges[face[k]].tolist()
            common = [v for v in this_e if v in prev_e]
            if len(common) == 0:
                verts.append(-1)
            elif len(common) == 1:
                verts.append(common[0])
            else:
                # parallel consecutive edges; fall back on the next edge
                nxt = set(self.edges[face[(k+1) % m]].tolist())
                other = [v for v in common if v not in nxt]
                verts.append(other[0] if other else common[0])
        return tuple(verts)

    @property
    def num_vertices(self):
        return len(self.vertex_names)

    @property
    def num_edges(self):
        return len(self.edges)

    @property
    def num_faces(self):
        return len(self.faces)

    def degree(self, v):
        return len(self.vertex_edges[v])

    def degrees(self):
        return np.array([len(es) for es in self.vertex_edges], dtype=int)

    def vertex_id(self, name):
        return self._vertex_lookup[name]

    def edge_id(self, u, v):
        """Edge id joining two vertices given by name or id. Raises KeyError
        when there is no such edge, ValueError when it is not unique.
        """
        if isinstance(u, str):
            u = self.vertex_id(u)
        if isinstance(v, str):
            v = self.vertex_id(v)
        found = self._edge_lookup[frozenset((u, v))]
        if len(found) > 1:
            raise ValueError('{:d} parallel edges join {:s} and {:s}'.format(
                len(found), self.vertex_names[u], self.vertex_names[v]))
        return found[0]

    def edge_by_name(self, name):
        """Look up an edge from a concatenated name such as 'A1B1' or 'B1A1'"""
        try:
            return self.edge_names.index(name)
        except ValueError:
            pass
        half = len(name) // 2
        return self.edge_id(name[:half], name[half:])

    def other_vertex(self, e, v):
        u, w = self.edges[e]
        return int(w) if u == v else int(u)

    def other_face(self, e, f):
        """Face across edge e from face f, or None on the boundary"""
        others = [g for g in self.edge_faces[e] if g != f]
        return others[0] if others else None

    @property
    def boundary_edges(self):
        """Boundary edges as a closed walk, starting from the lowest id.
        Empty for closed tilings.
        """
        if not hasattr(self, '_boundary'):
            self._boundary = self._trace_boundary()
        return self._boundary

    def _trace_boundary(self):
        bdry = [e for e, fs in enumerate(self.edge_faces) if len(fs) == 1]
        if not bdry:
            return ()
        bset = set(bdry)
        walk = [bdry[0]]
        used = {bdry[0]}
        v = int(self.edges[bdry[0]][1])
        while True:
            nxt = [e for e in self.vertex_edges[v] if e in bset and e not in used]
            if not nxt:
                break
            e = min(nxt)
            walk.append(e)
            used.add(e)
            v = self.other_vertex(e, v)
        # any boundary edges not reached (not a single closed walk) follow in id order
        walk += [e for e in bdry if e not in used]
        return tuple(walk)

    @property
    def interior_vertices(self):
        """Boolean flags, True for vertices not touching a boundary edge"""
        flags = np.ones(self.num_vertices, dtype=bool)
        for e in self.boundary_edges:
            flags[self.edges[e]] = False
        return flags

    def face_graph(self):
        """Face adjacency graph (faces sharing an edge)"""
        G = nx.Graph()
        G.add_nodes_from(range(self.num_faces))
        for fs in self.edge_faces:
            if len(fs) == 2:
                G.add_edge(*fs)
        return G

    def to_dict(self):
        """Plain-data form used by the JSON writer"""
        return {
            'vertices': list(range(self.num_vertices)),
            'edges': [[e, int(u), int(v)] for e, (u, v) in enumerate(self.edges)],
            'faces': [[f, list(face)] for f, face in enumerate(self.faces)],
            'boundary': list(self.boundary_edges),
        }

    def __repr__(self):
        return '{:s} {:s}: {:d} vertices, {:d} edges, {:d} faces'.format(
            type(self).__name__, self.name, self.num_vertices, self.num_edges,
            self.num_faces)


class TimezoneTemplate(object):
    """One timezone (or, at distance 4, a meridian or core part) with its
    two boundary meridians oriented north to south.

    Attributes
    ----------
    fragment : Fragment
    distance : int
    kind : str
        'timezone', 'meridian_part' or 'core_part'
    left_meridian, right_meridian : tuple of int
        Edge ids, north to south
    left_vertices, right_vertices : tuple of int
        Vertex ids along each meridian, north pole first
    north, south : int
        Pole vertex ids
    north_fan, south_fan : tuple of int
        Pole-incident edges ordered from the left meridian to the right one
    gluing_map : dict
        {'edges': {right edge: left edge}, 'vertices': {right vertex: left vertex}}
    core_faces : tuple of int
        Tiles all of whose vertices have degree 3 after closure
    meridian_part, core_part : tuple of int
        Distance 4 timezone only: partition of the faces
    parent_edges : ndarray or None
        For a part, the id of each edge in the full distance-4 template
    """
    def __init__(self, fragment, distance, left_vertices, right_vertices,
                 kind='timezone', core_faces=(), meridian_part=(), core_part=(),
                 parent_edges=None, coords=None, seam_vertices=()):
        self.fragment = fragment
        self.distance = distance
        self.kind = kind
        self.left_vertices = tuple(left_vertices)
        self.right_vertices = tuple(right_vertices)
        self.north = self.left_vertices[0]
        self.south = self.left_vertices[-1]
        assert self.right_vertices[0] == self.north and self.right_vertices[-1] == self.south, \
            'both meridians must run between the same poles'
        self.left_meridian = self._path_edges(self.left_vertices, side=0)
        self.right_meridian = self._path_edges(self.right_vertices, side=1)
        self.core_faces = tuple(core_faces)
        self.meridian_part = tuple(meridian_part)
        self.core_part = tuple(core_part)
        self.parent_edges = parent_edges
        self.seam_vertices = tuple(seam_vertices)
        self.coords = coords or {}
        self.north_fan = self._fan(self.north)
        self.south_fan = self._fan(self.south)
        self.gluing_map = {
            'edges': dict(zip(self.right_meridian, self.left_meridian)),
            'vertices': dict(zip(self.right_vertices[1:-1], self.left_vertices[1:-1])),
        }

    def _path_edges(self, path, side):
        """Edge ids along a vertex path. Where parallel edges join two
        consecutive vertices, the left meridian takes the lower id and the
        right meridian the higher one.
        """
        frag = self.fragment
        out = []
        for u, v in zip(path[:-1], path[1:]):
            found = [e for e in frag._edge_lookup[frozenset((u, v))]
                     if len(frag.edge_faces[e]) == 1]
            found.sort()
            out.append(found[0] if side == 0 or len(found) == 1 else found[-1])
        return tuple(out)

    def _fan(self, pole):
        """Edges at a pole, walking the faces around it from the left meridian
        to the right meridian.
        """
        frag = self.fragment
        start = self.left_meridian[0] if pole == self.north else self.left_meridian[-1]
        stop = self.right_meridian[0] if pole == self.north else self.right_meridian[-1]
        fan = [start]
        face = frag.edge_faces[start][0]
        e = start
        while e != stop:
            nxt = [x for x in frag.faces[face] if x != e and pole in frag.edges[x]]
            assert len(nxt) == 1, 'face {:d} does not turn around the pole'.format(face)
            e = nxt[0]
            fan.append(e)
            if e == stop:
                break
            face = frag.other_face(e, face)
            assert face is not None, 'pole fan left the template at edge {:d}'.format(e)
        return tuple(fan)

    @property
    def pole_edges(self):
        """(north, south) pole edges owned by this strip: the fans without the
        right meridian's edge, which belongs to the next strip.
        """
        return self.north_fan[:-1], self.south_fan[:-1]

    def __repr__(self):
        return 'TimezoneTemplate(d={:d}, {:s}, {:d} faces, {:d} edges)'.format(
            self.distance, self.kind, self.fragment.num_faces, self.fragment.num_edges)


class EarthMap(Fragment):
    """Closed tiling made of n copies of a timezone glued in a ring.

    Attributes
    ----------
    distance, timezones : int
    poles : tuple of int
        (north, south) vertex ids
    decomposition : list of (int, int)
        For every face, (timezone index, template face id)
    edge_maps, vertex_maps : ndarray
        Shape (n, template size); global id of each template item per copy
    """
    def __init__(self, template, timezones, vertex_names, edges, faces,
                 edge_maps, vertex_maps, decomposition):
        super().__init__(vertex_names, edges, faces,
                         name='earthmap-d{:d}-n{:d}'.format(template.distance, timezones))
        self.template = template
        self.distance = template.distance
        self.timezones = timezones
        self.edge_maps = np.array(edge_maps, dtype=int)
        self.vertex_maps = np.array(vertex_maps, dtype=int)
        self.decomposition = list(decomposition)
        self.poles = (int(self.vertex_maps[0, template.north]),
                      int(self.vertex_maps[0, template.south]))

    def timezone_faces(self, k):
        return [f for f, (tz, _) in enumerate(self.decomposition) if tz == k]

    def to_dict(self):
        out = super().to_dict()
        out.pop('boundary')
        out['poles'] = list(self.poles)
        out['meridians'] = [self.edge_maps[k, list(self.template.left_meridian)].tolist()
                            for k in range(self.timezones)]
        return out


#==============================================================================
# VALIDATION
#==============================================================================

class ValidationReport(object):
    """List of invariant checks with pass/fail flags and offending ids.

    Sample usage:

        report = validate(build_earth_map(2, 3))
        report.passed          # True when every check passes
        report.df              # one row per check
        report['pole_degree']  # a single row as a dict

    """
    def __init__(self, subject):
        self.subject = repr(subject)
        self.rows = []

    def add(self, check, passed, detail='', offending=()):
        self.rows.append({
            'check': check,
            'passed': bool(passed),
            'detail': detail,
            'offending': tuple(int(i) for i in offending),
        })

    @property
    def passed(self):
        return all(row['passed'] for row in self.rows)

    @property
    def failures(self):
        return [row for row in self.rows if not row['passed']]

    @property
    def df(self):
        return pd.DataFrame(self.rows, columns=['check', 'passed', 'detail', 'offending'])

    def __getitem__(self, check):
        for row in self.rows:
            if row['check'] == check:
                return row
        raise KeyError(check)

    def __repr__(self):
        lines = ['Validation of ' + self.subject]
        for row in self.rows:
            lines.append('  {:<18s} {:s} {:s}'.format(
                row['check'], 'ok  ' if row['passed'] else 'FAIL', row['detail']))
        return '\n'.join(lines)


def validate(tiling):
    """Check the structural invariants of a Fragment, TimezoneTemplate or
    EarthMap. Failures are reported, never raised.
    """
    template = None
    if isinstance(tiling, TimezoneTemplate):
        template = tiling
        frag = tiling.fragment
    else:
        frag = tiling
    report = ValidationReport(tiling)

    bad = [f for f, face in enumerate(frag.faces) if len(face) != 5 or len(set(face)) != 5]
    report.add('face_size', not bad, 'faces without exactly 5 distinct edges', bad)

    bad = [f for f, verts in enumerate(frag.face_vertices)
           if -1 in verts or len(set(verts)) != len(verts)]
    report.add('face_walk', not bad, 'faces whose edges are not a simple closed walk', bad)

    counts = [len(fs) for fs in frag.edge_faces]
    closed = isinstance(frag, EarthMap)
    if closed:
        bad = [e for e, c in enumerate(counts) if c != 2]
    else:
        bad = [e for e, c in enumerate(counts) if c not in (1, 2)]
    report.add('edge_faces', not bad, 'edges bordering the wrong number of faces', bad)

    connected = frag.num_faces > 0 and nx.is_connected(frag.face_graph())
    report.add('connected', connected, 'face adjacency graph connected')

    degrees = frag.degrees()
    if closed:
        _validate_earth_map(frag, degrees, report)
    else:
        interior = frag.interior_vertices
        bad = [v for v in range(frag.num_vertices) if interior[v] and degrees[v] != 3]
        report.add('interior_degree', not bad, 'interior vertices of degree other than 3', bad)

    if template is not None:
        _validate_template(template, report)
    return report


def _validate_earth_map(em, degrees, report):
    high = [v for v in range(em.num_vertices) if degrees[v] > 3]
    report.add('two_poles', len(high) == 2,
               '{:d} vertices of degree > 3'.format(len(high)), high)
    low = [v for v in range(em.num_vertices) if degrees[v] < 3]
    report.add('min_degree', not low, 'vertices of degree < 3', low)

    expected = em.timezones if em.distance == 5 else 3*em.timezones
    pole_deg = [int(degrees[p]) for p in em.poles]
    report.add('pole_degree', pole_deg == [expected, expected],
               'pole degrees {}, expected {:d}'.format(pole_deg, expected), em.poles)

    v, e, f = em.num_vertices, em.num_edges, em.num_faces
    report.add('euler', v - e + f == 2, 'v-e+f = {:d}-{:d}+{:d} = {:d}'.format(v, e, f, v-e+f))
    report.add('edge_count', 2*e == 5*f, 'e = {:d}, 5f/2 = {:g}'.format(e, 2.5*f))

    census = Counter(int(d) for d in degrees)
    rhs = 20 + sum((3*i - 10)*census[i] for i in census if i >= 4)
    report.add('census', census[3] == rhs,
               'v3 = {:d}, 20 + sum (3i-10) v_i = {:d}'.format(census[3], rhs))
    report.add('tile_count', f > 12, '{:d} tiles'.format(f))


def _validate_template(template, report):
    d = template.distance
    frag = template.fragment
    nl, nr = len(template.left_meridian), len(template.right_meridian)
    report.add('meridian_length', nl == d and nr == d,
               'left {:d}, right {:d}, distance {:d}'.format(nl, nr, d))
    if template.kind == 'timezone':
        expected = 4 if d == 5 else 12
        report.add('timezone_faces', frag.num_faces == expected,
                   '{:d} faces, expected {:d}'.format(frag.num_faces, expected))
    if template.meridian_part or template.core_part:
        parts = set(template.meridian_part) | set(template.core_part)
        ok = (len(parts) == frag.num_faces
              and not set(template.meridian_part) & set(template.core_part))
        report.add('part_partition', ok, 'meridian and core parts partition the faces')
    if template.kind != 'timezone':
        return
    # each glued meridian vertex keeps both meridian edges and one more
    ldeg = [frag.degree(v) for v in template.left_vertices[1:-1]]
    rdeg = [frag.degree(v) for v in template.right_vertices[1:-1]]
    ok = all(a + b == 5 for a, b in zip(ldeg, rdeg))
    report.add('gluing', ok, 'meridian vertex degrees add up to 3 after gluing')
