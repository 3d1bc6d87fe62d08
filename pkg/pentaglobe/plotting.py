# Copyright 2024 pentaglobe developers

# Licensed under the Apache License, Version 2.0 (the "License"); you may not use
# this file except in compliance with the License. You may obtain a copy of the
# License at http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software distributed
# under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
# CONDITIONS OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the License.

"""
Drawings of labeled fragments and family graphs.

Edges labeled a are thin solid lines, b thick solid lines and c dashed
lines. Layouts use fixed coordinates so that repeated runs produce the same
SVG bytes.
"""
import io

import numpy as np
import matplotlib as mpl
import matplotlib.pyplot as plt
from matplotlib.patches import Circle
import networkx as nx

from pentaglobe.common import InputError, OutputError, LABELS
from pentaglobe.mesh import NeighborhoodFragment
from pentaglobe.mesh.templates import neighborhood_coords
from pentaglobe.search import Labeling

# Line conventions per label
edge_styles = {
    'a': dict(color='k', linewidth=0.8, linestyle='-'),
    'b': dict(color='k', linewidth=2.6, linestyle='-'),
    'c': dict(color='k', linewidth=1.2, linestyle=(0, (4, 2))),
    None: dict(color='0.6', linewidth=0.6, linestyle=':'),
}

# y coordinate at which pole edges end
pole_height = 1.2

# x coordinate of the single-edge meridians at distance 1
meridian_x = 1.4

mpl.rcParams['svg.hashsalt'] = 'pentaglobe'


def _segments(host, coords, template=None):
    """Endpoints of each edge. Pole-incident edges run vertically from the
    other endpoint to the pole height.
    """
    names = host.vertex_names
    segs = []
    for e, (u, v) in enumerate(host.edges):
        nu, nv = names[u], names[v]
        if {nu, nv} == {'N', 'S'}:
            side = -1 if template is not None and e in template.left_meridian else 1
            x = side * meridian_x
            segs.append(((x, pole_height), (x, -pole_height)))
            continue
        if nu in ('N', 'S'):
            nu, nv = nv, nu
        p = coords[nu]
        if nv in ('N', 'S'):
            q = (p[0], pole_height if nv == 'N' else -pole_height)
        else:
            q = coords[nv]
        segs.append((p, q))
    return segs


def plot_labeling(labeling, coords, template=None, fig=None, ax=None, title=None):
    """Draw every edge of a labeled host with its label style.

    Parameters
    ----------
    labeling : Labeling
    coords : dict
        Vertex name -> (x, y); poles may be omitted
    template : TimezoneTemplate, optional
        Used to place the distance-1 meridians
    """
    if ax is None:
        fig, ax = plt.subplots(figsize=(4, 4))
    host = labeling.host
    for e, (p, q) in enumerate(_segments(host, coords, template)):
        code = int(labeling.labels[e])
        style = edge_styles[LABELS[code] if code >= 0 else None]
        line, = ax.plot([p[0], q[0]], [p[1], q[1]], solid_capstyle='round', **style)
        line.set_gid('edge{:d}'.format(e))
    ax.set_aspect('equal')
    ax.axis('off')
    if title:
        ax.set_title(title, fontsize=9)
    return fig, ax


def plot_family_graph(fg, fig=None, ax=None):
    """Draw a family graph on a circle, one arrow per (source, target, kind)
    labeled with the number of tilings.
    """
    if ax is None:
        fig, ax = plt.subplots(figsize=(6, 6))
    ax.set_aspect('equal')
    ax.axis('off')
    collapsed = fg.collapsed()
    nodes = sorted(collapsed.nodes)
    ax.set_title('d={:d} {:s}'.format(fg.distance, fg.pattern.name), fontsize=10)
    if not nodes:
        ax.text(0.5, 0.5, 'no tilings', ha='center', va='center', transform=ax.transAxes)
        return fig, ax
    G = nx.DiGraph()
    G.add_nodes_from(nodes)
    pos = nx.circular_layout(G)
    for node in nodes:
        x, y = pos[node]
        ax.text(x, y, fg.node_label(node), ha='center', va='center', fontsize=8,
                family='monospace', bbox=dict(boxstyle='round', fc='w', ec='k', lw=0.6))
    for u, v, kind, data in sorted(collapsed.edges(keys=True, data=True),
                                   key=lambda e: (e[0], e[1], e[2])):
        label = '×{:d}'.format(data['multiplicity'])
        style = '--' if kind == 'meridian_part' else '-'
        p, q = np.asarray(pos[u]), np.asarray(pos[v])
        if u == v:
            center = p * 1.18
            ax.add_patch(Circle(center, 0.1, fill=False, lw=0.8, ls=style))
            ax.text(*(p * 1.38), label, ha='center', va='center', fontsize=7)
            continue
        ax.annotate('', xy=q, xytext=p,
                    arrowprops=dict(arrowstyle='->', lw=0.8, ls=style, shrinkA=14, shrinkB=14,
                                    connectionstyle='arc3,rad=0.15'))
        mid = (p + q) / 2 + 0.08 * np.array([q[1] - p[1], p[0] - q[0]])
        ax.text(mid[0], mid[1], label, ha='center', va='center', fontsize=7)
    ax.set_xlim(-1.6, 1.6)
    ax.set_ylim(-1.6, 1.6)
    return fig, ax


def _figure_for(subject):
    from pentaglobe.neighborhood import NeighborhoodTiling
    from pentaglobe.earthmap import TimezoneTiling, FamilyGraph
    if isinstance(subject, NeighborhoodTiling):
        title = '{:s} type {:s}'.format(subject.pattern.name, subject.type_id or '?')
        return plot_labeling(subject.labeling, neighborhood_coords(), title=title)
    if isinstance(subject, TimezoneTiling):
        title = '{:s} -> {:s}'.format(subject.left, subject.right)
        return plot_labeling(subject.labeling, subject.template.coords, subject.template,
                             title=title)
    if isinstance(subject, FamilyGraph):
        return plot_family_graph(subject)
    if isinstance(subject, Labeling):
        if isinstance(subject.host, NeighborhoodFragment):
            return plot_labeling(subject, neighborhood_coords())
        raise InputError('labelings can only be drawn on the neighborhood fragment')
    raise InputError('cannot render {!r}'.format(type(subject).__name__))


def render(subject, fpath=None, verbose=True):
    """SVG drawing of a neighborhood tiling, timezone tiling, neighborhood
    labeling or family graph. Returns the SVG text and writes it to `fpath`
    when given.
    """
    fig, ax = _figure_for(subject)
    buf = io.StringIO()
    fig.savefig(buf, format='svg', metadata={'Date': None})
    plt.close(fig)
    svg = buf.getvalue()
    if fpath is not None:
        try:
            with open(fpath, 'w', encoding='utf-8') as f:
                f.write(svg)
        except OSError as err:
            raise OutputError('cannot write {:s}: {:s}'.format(str(fpath),
                                                             err.strerror or str(err)))
        if verbose:
            print('Wrote', fpath)
    return svg
