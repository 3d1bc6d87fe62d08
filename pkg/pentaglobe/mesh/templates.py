# Copyright 2024 pentaglobe developers

# Licensed under the Apache License, Version 2.0 (the "License"); you may not use
# this file except in compliance with the License. You may obtain a copy of the
# License at http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software distributed
# under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
# CONDITIONS OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the License.

"""
Hardcoded incidence tables and builders for the three fragment shapes:

- the neighborhood of a tile whose vertices all have degree 3
- the timezone of an earth map tiling at distances 1 to 5
- the closed earth map obtained by gluing n timezones in a ring

Every face is written as a cycle of vertex names. Meridians run from the
north pole 'N' to the south pole 'S'; a timezone's left meridian has the
timezone's faces on its east side. Coordinates are only used for drawing.
"""
import logging
from functools import lru_cache

import numpy as np

from pentaglobe.common import check_distance, check_timezones
from pentaglobe.mesh.fragment import Fragment, TimezoneTemplate, EarthMap

logger = logging.getLogger(__name__)


#==============================================================================
# NEIGHBORHOOD
#==============================================================================

class NeighborhoodFragment(Fragment):
    """Center tile P (face 0) and its five neighbors P1..P5 (faces 1-5).

    Vertex ids: A1..A5 = 0-4 on the center, B1..B5 = 5-9 at the outer ends
    of the spokes, C1..C5 = 10-14 at the apexes of the neighbors.
    Edge ids: 0-4 center edges A_i A_{i+1} (shared with P_i), 5-9 spokes
    A_i B_i, 10-19 outer edges B_i C_i and C_i B_{i+1}.
    """
    def center_face(self):
        return 0

    def neighbor(self, i):
        """Face id of P_i, i = 1..5"""
        assert 1 <= i <= 5, 'neighbors are numbered 1 to 5'
        return i

    def center_edge(self, i):
        """E(P, P_i)"""
        assert 1 <= i <= 5, 'neighbors are numbered 1 to 5'
        return i - 1

    def spoke(self, k):
        """Edge A_k B_k"""
        return 5 + (k - 1) % 5

    def shared_edge(self, i, j):
        """E(P_i, P_j) for adjacent neighbors"""
        i, j = sorted((i, j))
        if (i, j) == (1, 5):
            return self.spoke(1)
        assert j == i + 1, 'P{:d} and P{:d} are not adjacent'.format(i, j)
        return self.spoke(j)

    def outer_edges(self, i):
        """(B_i C_i, C_i B_{i+1})"""
        return 10 + 2*(i - 1), 11 + 2*(i - 1)

    def boundary_vertex(self, name):
        """Vertex id of a boundary vertex named 'B1'..'B5' or 'C1'..'C5'"""
        assert name[0] in 'BC', '{:s} is not on the boundary'.format(name)
        return self.vertex_id(name)


def _nb(prefix, i):
    return '{:s}{:d}'.format(prefix, (i - 1) % 5 + 1)


def neighborhood_edge_order():
    """Edge endpoints in neighborhood id order"""
    order = [(_nb('A', i), _nb('A', i+1)) for i in range(1, 6)]
    order += [(_nb('A', i), _nb('B', i)) for i in range(1, 6)]
    for i in range(1, 6):
        order += [(_nb('B', i), _nb('C', i)), (_nb('C', i), _nb('B', i+1))]
    return order


def neighborhood_cycles():
    cycles = [tuple(_nb('A', i) for i in range(1, 6))]
    for i in range(1, 6):
        cycles.append((_nb('A', i), _nb('A', i+1), _nb('B', i+1), _nb('C', i), _nb('B', i)))
    return cycles


@lru_cache(maxsize=None)
def build_neighborhood_fragment():
    """Build the 6-face neighborhood of a tile with all vertices of degree 3"""
    vnames = ([_nb('A', i) for i in range(1, 6)] + [_nb('B', i) for i in range(1, 6)]
              + [_nb('C', i) for i in range(1, 6)])
    frag = NeighborhoodFragment.from_vertex_cycles(
        neighborhood_cycles(), edge_order=neighborhood_edge_order(),
        name='neighborhood')
    assert list(frag.vertex_names) == vnames, 'unexpected neighborhood vertex order'
    return frag


@lru_cache(maxsize=None)
def build_extended_fragment(i):
    """Neighborhood of P extended by the two tiles that complete the
    neighborhood of P_i. The first 20 edges keep the neighborhood ids.

    New vertices D (apex beyond C_i), F and G; new faces
    X_i = (B_i, C_i, D, G, C_{i-1}) and X_{i+1} = (B_{i+1}, C_{i+1}, F, D, C_i).
    """
    assert 1 <= i <= 5, 'neighbors are numbered 1 to 5'
    ci, cprev, cnext = _nb('C', i), _nb('C', i-1), _nb('C', i+1)
    cycles = neighborhood_cycles() + [
        (_nb('B', i), ci, 'D', 'G', cprev),
        (_nb('B', i+1), cnext, 'F', 'D', ci),
    ]
    frag = NeighborhoodFragment.from_vertex_cycles(
        cycles, edge_order=neighborhood_edge_order(), name='neighborhood+P{:d}'.format(i))
    return frag


def neighborhood_coords():
    """Drawing coordinates: A on radius 0.5, B on radius 1, C on radius 1.3"""
    coords = {}
    for i in range(1, 6):
        t = np.radians(-54 + 72*(i - 1))
        s = np.radians(-18 + 72*(i - 1))
        coords[_nb('A', i)] = (0.5*np.cos(t), 0.5*np.sin(t))
        coords[_nb('B', i)] = (np.cos(t), np.sin(t))
        coords[_nb('C', i)] = (1.3*np.cos(s), 1.3*np.sin(s))
    return coords


#==============================================================================
# TIMEZONE TABLES
#==============================================================================

# Each entry lists the faces west to east, the two meridians (north to south),
# the core tiles (face indices) and drawing coordinates of non-pole vertices.

def _zig(k):
    """Zigzag vertex along the equator at distance 3 (k != 0)"""
    return 'z{:d}'.format(k) if k > 0 else 'zm{:d}'.format(-k)


def _zig_xy(k):
    x = 0.32*abs(k) + 0.16
    y = -0.16 if abs(k) % 2 else 0.16
    return (x, y) if k > 0 else (-x, -y)


TIMEZONES = {
    5: {
        'faces': [
            ('N', 'B0', 'G0', 'C1', 'B1'),
            ('B0', 'C0', 'D0', 'H0', 'G0'),
            ('G0', 'H0', 'E1', 'D1', 'C1'),
            ('D0', 'E0', 'S', 'E1', 'H0'),
        ],
        'left': ('N', 'B0', 'C0', 'D0', 'E0', 'S'),
        'right': ('N', 'B1', 'C1', 'D1', 'E1', 'S'),
        'core': (1, 2),
        'coords': {
            'B0': (-0.3, 0.7), 'C0': (-0.6, 0.3), 'D0': (-0.6, -0.3), 'E0': (-0.9, -0.7),
            'B1': (0.9, 0.7), 'C1': (0.6, 0.3), 'D1': (0.6, -0.3), 'E1': (0.3, -0.7),
            'G0': (0.0, 0.3), 'H0': (0.0, -0.3),
        },
    },
    4: {
        'faces': [
            # meridian part
            ('N', 'r', 'm', "p6'", "p5'"),
            ('S', "r'", 'm', "p6'", "q5'"),
            # core part
            ('N', "p5'", "p4'", "p2'", 'p1'),
            ('S', "q5'", "q4'", "q2'", 'q1'),
            ("p5'", "p6'", "q5'", "q4'", "p4'"),
            ("p4'", "q4'", "q2'", "p3'", "p2'"),
            ('p1', "p2'", "p3'", 'p3', 'p2'),
            ('q1', "q2'", "p3'", 'p3', 'q2'),
            ('N', 'p1', 'p2', 'p4', 'p5'),
            ('S', 'q1', 'q2', 'q4', 'q5'),
            ('p2', 'p4', 'q4', 'q2', 'p3'),
            ('p4', 'p5', 'p6', 'q5', 'q4'),
        ],
        'left': ('N', 'r', 'm', "r'", 'S'),
        'right': ('N', 'p5', 'p6', 'q5', 'S'),
        'seam': ('N', "p5'", "p6'", "q5'", 'S'),
        'meridian_part': (0, 1),
        'core': (6, 7),
        'coords': {
            'p1': (0.0, 0.8), 'p2': (0.4, 0.5), 'p3': (0.3, 0.0), "p3'": (-0.3, 0.0),
            "p2'": (-0.4, 0.5), 'q1': (0.0, -0.8), 'q2': (0.4, -0.5), "q2'": (-0.4, -0.5),
            'p4': (0.9, 0.4), 'q4': (0.9, -0.4), 'p5': (1.2, 0.7), 'p6': (1.4, 0.0),
            'q5': (1.2, -0.7), "p4'": (-0.9, 0.4), "q4'": (-0.9, -0.4), "p5'": (-1.2, 0.7),
            "p6'": (-1.4, 0.0), "q5'": (-1.2, -0.7), 'm': (-1.7, 0.0), 'r': (-1.9, 0.7),
            "r'": (-1.9, -0.7),
        },
    },
    3: {
        'faces': [
            ('N', 'zm5', 'zm4', 'zm3', 'u4'),
            ('l1', 'zm2', 'zm3', 'zm4', 'S'),
            ('u4', 'zm3', 'zm2', 'zm1', 'u3'),
            ('l2', 'z0w', 'zm1', 'zm2', 'l1'),
            ('N', 'u4', 'u3', 'u2', 'u1'),
            ('u3', 'zm1', 'z0w', 'z0e', 'u2'),
            ('l3', 'z1', 'z0e', 'z0w', 'l2'),
            ('S', 'l1', 'l2', 'l3', 'l4'),
            ('u2', 'z0e', 'z1', 'z2', 'u1'),
            ('l4', 'z3', 'z2', 'z1', 'l3'),
            ('u1', 'z2', 'z3', 'z4', 'N'),
            ('S', 'z5', 'z4', 'z3', 'l4'),
        ],
        'left': ('N', 'zm5', 'zm4', 'S'),
        'right': ('N', 'z4', 'z5', 'S'),
        'core': (5, 6),
        'coords': dict(
            [('u1', (0.64, 0.7)), ('u2', (0.16, 0.6)), ('u3', (-0.48, 0.6)), ('u4', (-0.96, 0.7)),
             ('l1', (-0.64, -0.7)), ('l2', (-0.16, -0.6)), ('l3', (0.48, -0.6)),
             ('l4', (0.96, -0.7)), ('z0w', (-0.16, -0.16)), ('z0e', (0.16, 0.16))]
            + [(_zig(k), _zig_xy(k))
               for k in (-5, -4, -3, -2, -1, 1, 2, 3, 4, 5)]),
    },
    2: {
        'faces': [
            ('bn', 'cn', 'N', 'l', 'k'),
            ('bs', 'cs', 'S', 'l', 'k'),
            ('an', 'bn', 'k', 'bs', 'as'),
            ('an', 'bn', 'cn', 'dn', 'en'),
            ('as', 'bs', 'cs', 'ds', 'es'),
            ('an', 'en', 'f', 'es', 'as'),
            ('cn', 'dn', 'hn', 'in', 'N'),
            ('cs', 'ds', 'hs', 'is', 'S'),
            ('dn', 'en', 'f', 'g', 'hn'),
            ('ds', 'es', 'f', 'g', 'hs'),
            ('g', 'hn', 'in', 'is', 'hs'),
            ('N', 'in', 'is', 'S', 'j'),
        ],
        'left': ('N', 'l', 'S'),
        'right': ('N', 'j', 'S'),
        'core': (5,),
        'coords': {
            'f': (0.6, 0.0), 'g': (0.9, 0.0), 'j': (1.8, 0.0), 'k': (-0.6, 0.0), 'l': (-0.9, 0.0),
            'an': (0.0, 0.2), 'bn': (-0.4, 0.4), 'cn': (-0.1, 0.8), 'dn': (0.4, 0.7),
            'en': (0.4, 0.4), 'hn': (1.0, 0.5), 'in': (1.3, 0.6),
            'as': (0.0, -0.2), 'bs': (-0.4, -0.4), 'cs': (-0.1, -0.8), 'ds': (0.4, -0.7),
            'es': (0.4, -0.4), 'hs': (1.0, -0.5), 'is': (1.3, -0.6),
        },
    },
    1: {
        'faces': [
            ('N', 'h_nw', 'g_w', 'h_sw', 'S'),
            ('e_nw', 'f_w', 'g_w', 'h_nw', 'd_nw'),
            ('e_sw', 'f_w', 'g_w', 'h_sw', 'd_sw'),
            ('a_n', 'e_nw', 'f_w', 'e_sw', 'a_s'),
            ('d_nw', 'd_ne', 'h_ne', 'N', 'h_nw'),
            ('a_n', 'e_ne', 'd_ne', 'd_nw', 'e_nw'),
            ('a_s', 'e_se', 'd_se', 'd_sw', 'e_sw'),
            ('d_sw', 'd_se', 'h_se', 'S', 'h_sw'),
            ('a_n', 'e_ne', 'f_e', 'e_se', 'a_s'),
            ('e_ne', 'f_e', 'g_e', 'h_ne', 'd_ne'),
            ('e_se', 'f_e', 'g_e', 'h_se', 'd_se'),
            ('N', 'h_ne', 'g_e', 'h_se', 'S'),
        ],
        # the two meridians are parallel edges; the last face uses the right one
        'parallel': {11: {('S', 'N'): 'R'}},
        'left': ('N', 'S'),
        'right': ('N', 'S'),
        'core': (3, 8),
        'coords': dict(
            [('a_n', (0.0, 0.2)), ('a_s', (0.0, -0.2)), ('f_e', (0.6, 0.0)), ('f_w', (-0.6, 0.0)),
             ('g_e', (0.9, 0.0)), ('g_w', (-0.9, 0.0))]
            + [('{:s}_{:s}{:s}'.format(v, ns, ew), (sx*x, sy*y))
               for v, x, y in (('e', 0.4, 0.4), ('h', 1.0, 0.8), ('d', 0.4, 0.7))
               for ns, sy in (('n', 1), ('s', -1)) for ew, sx in (('e', 1), ('w', -1))]),
    },
}


def _check_table(d):
    """Sanity checks on a hardcoded table"""
    table = TIMEZONES[d]
    expected = 4 if d == 5 else 12
    assert len(table['faces']) == expected, \
        'distance {:d} table has {:d} faces'.format(d, len(table['faces']))
    assert all(len(face) == 5 for face in table['faces']), \
        'distance {:d} table has a non-pentagonal face'.format(d)


@lru_cache(maxsize=None)
def build_timezone_template(d):
    """Build the combinatorial timezone for distance d (1-5).

    At distance 4 the timezone is the meridian part glued on the left of
    the core part; their common meridian is available as `seam_vertices`.
    """
    check_distance(d)
    _check_table(d)
    table = TIMEZONES[d]
    frag = Fragment.from_vertex_cycles(table['faces'], parallel=table.get('parallel'),
                                       name='timezone-d{:d}'.format(d))
    vid = frag.vertex_id
    kwargs = {}
    if d == 4:
        kwargs['meridian_part'] = table['meridian_part']
        kwargs['core_part'] = tuple(f for f in range(frag.num_faces)
                                    if f not in table['meridian_part'])
        kwargs['seam_vertices'] = [vid(v) for v in table['seam']]
    template = TimezoneTemplate(
        frag, d,
        left_vertices=[vid(v) for v in table['left']],
        right_vertices=[vid(v) for v in table['right']],
        core_faces=table['core'],
        coords=table['coords'],
        **kwargs)
    logger.debug('built %s', template)
    return template


@lru_cache(maxsize=None)
def build_part_template(kind):
    """Distance 4 meridian part ('meridian_part') or core part ('core_part')
    as a strip of its own, with `parent_edges` mapping its edge ids to the
    full timezone's edge ids.
    """
    table = TIMEZONES[4]
    full = build_timezone_template(4)
    if kind == 'meridian_part':
        faces = table['meridian_part']
        left, right = table['left'], table['seam']
    elif kind == 'core_part':
        faces = full.core_part
        left, right = table['seam'], table['right']
    else:
        raise ValueError('unknown part {!r}'.format(kind))
    cycles = [table['faces'][f] for f in faces]
    frag = Fragment.from_vertex_cycles(cycles, name='{:s}-d4'.format(kind))
    vid = frag.vertex_id
    parent_edges = np.array([full.fragment.edge_id(frag.vertex_names[u], frag.vertex_names[v])
                             for u, v in frag.edges], dtype=int)
    core = [faces.index(f) for f in table['core'] if f in faces]
    return TimezoneTemplate(frag, 4,
                            left_vertices=[vid(v) for v in left],
                            right_vertices=[vid(v) for v in right],
                            kind=kind, core_faces=core, parent_edges=parent_edges,
                            coords=table['coords'])


#==============================================================================
# EARTH MAP
#==============================================================================

@lru_cache(maxsize=None)
def build_earth_map(d, n):
    """Glue n copies of the distance-d timezone in a ring and close it with
    the two poles.

    Copy k's right meridian is identified with copy k+1's left meridian, and
    the last copy's right meridian with copy 0's left one. Ids are assigned
    copy by copy in template order, skipping identified items.
    """
    check_timezones(d, n)
    template = build_timezone_template(d)
    frag = template.fragment
    nv, ne = frag.num_vertices, frag.num_edges
    left_v = template.left_vertices[1:-1]
    right_v = template.right_vertices[1:-1]
    vmaps = -np.ones((n, nv), dtype=int)
    emaps = -np.ones((n, ne), dtype=int)
    vnames = []
    edges = []

    for k in range(n):
        if k > 0:
            for lv, rv in zip(left_v, right_v):
                vmaps[k, lv] = vmaps[k-1, rv]
            for le, re in zip(template.left_meridian, template.right_meridian):
                emaps[k, le] = emaps[k-1, re]
            vmaps[k, template.north] = vmaps[0, template.north]
            vmaps[k, template.south] = vmaps[0, template.south]
        if k == n - 1:
            for lv, rv in zip(left_v, right_v):
                vmaps[k, rv] = vmaps[0, lv]
            for le, re in zip(template.left_meridian, template.right_meridian):
                emaps[k, re] = emaps[0, le]
        for v in range(nv):
            if vmaps[k, v] < 0:
                vmaps[k, v] = len(vnames)
                name = frag.vertex_names[v]
                vnames.append(name if v in (template.north, template.south)
                              else '{:s}.{:d}'.format(name, k))
        for e in range(ne):
            if emaps[k, e] < 0:
                emaps[k, e] = len(edges)
                u, v = frag.edges[e]
                edges.append((vmaps[k, u], vmaps[k, v]))

    faces = []
    decomposition = []
    for k in range(n):
        for f, face in enumerate(frag.faces):
            faces.append([emaps[k, e] for e in face])
            decomposition.append((k, f))
    em = EarthMap(template, n, vnames, edges, faces, emaps, vmaps, decomposition)
    logger.debug('built %s', em)
    return em
