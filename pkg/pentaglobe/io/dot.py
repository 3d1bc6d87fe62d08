# Copyright 2024 pentaglobe developers

# Licensed under the Apache License, Version 2.0 (the "License"); you may not use
# this file except in compliance with the License. You may obtain a copy of the
# License at http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software distributed
# under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
# CONDITIONS OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the License.

"""Family graphs in the DOT language"""
import io

from pentaglobe.common import OutputError


class Registrar(object):
    """Assigns small ids to hashable objects in order of first request"""
    def __init__(self):
        self._ids = {}

    def get_id(self, obj):
        if obj not in self._ids:
            self._ids[obj] = len(self._ids) + 1
        return self._ids[obj]


def _quote(s):
    return '"' + s.replace('\\', '\\\\').replace('"', '\\"') + '"'


def family_graph_dot(fg):
    """DOT text of a family graph. Arrows between the same two nodes with the
    same kind are drawn once, labeled 'tiling#<lowest arrow> x<count> [kind]'.
    Node labels are signatures; seam nodes at distance 4 carry a prime.
    """
    collapsed = fg.collapsed()
    registrar = Registrar()
    out = io.StringIO()
    out.write('digraph "d{:d}_{:s}" {{\n'.format(fg.distance, fg.pattern.name))
    out.write('  node [shape=box, fontname="monospace"];\n')
    if collapsed.number_of_nodes() == 0:
        out.write('  empty [shape=plaintext, label="no tilings"];\n')
    for node in sorted(collapsed.nodes):
        out.write('  n{:d} [label={:s}];\n'.format(registrar.get_id(node),
                                                   _quote(fg.node_label(node))))
    edges = sorted(collapsed.edges(keys=True, data=True),
                   key=lambda e: (e[0], e[1], e[3]['first']))
    for u, v, kind, data in edges:
        label = 'tiling#{:d} ×{:d} [{:s}]'.format(data['first'], data['multiplicity'], kind)
        style = ', style=dashed' if kind == 'meridian_part' else ''
        out.write('  n{:d} -> n{:d} [label={:s}{:s}];\n'.format(
            registrar.get_id(u), registrar.get_id(v), _quote(label), style))
    out.write('}\n')
    return out.getvalue()


def write_dot(fg, fpath, verbose=True):
    try:
        with open(fpath, 'w', encoding='utf-8') as f:
            f.write(family_graph_dot(fg))
    except OSError as err:
        raise OutputError('cannot write {:s}: {:s}'.format(str(fpath), err.strerror or str(err)))
    if verbose:
        print('Wrote', fpath)
