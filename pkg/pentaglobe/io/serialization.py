# Copyright 2024 pentaglobe developers

# Licensed under the Apache License, Version 2.0 (the "License"); you may not use
# this file except in compliance with the License. You may obtain a copy of the
# License at http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software distributed
# under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
# CONDITIONS OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the License.

"""
JSON forms of fragments, labelings and enumeration results.

Fragments use the fields 'vertices', 'edges' ([id, v1, v2]), 'faces'
([id, [e1..e5]]) and, when present, 'boundary', 'poles' and 'meridians'.
Labelings are {"pattern": "a4b", "labels": {"<edge id>": "a"|"b"|"c"}}.
"""
import json

import numpy as np

from pentaglobe.common import InputError, OutputError
from pentaglobe.mesh import Fragment, TimezoneTemplate
from pentaglobe.search import Labeling, OrbitRepresentative


def as_data(obj):
    """Plain lists and dicts for the objects pentaglobe produces"""
    if isinstance(obj, TimezoneTemplate):
        data = obj.fragment.to_dict()
        data['distance'] = obj.distance
        data['kind'] = obj.kind
        data['meridians'] = [list(obj.left_meridian), list(obj.right_meridian)]
        data['poles'] = [obj.north, obj.south]
        data['core_faces'] = list(obj.core_faces)
        return data
    if isinstance(obj, OrbitRepresentative):
        data = obj.labeling.to_dict()
        data['multiplicity'] = obj.multiplicity
        return data
    if hasattr(obj, 'to_dict'):
        return as_data(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): as_data(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [as_data(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(as_data(v) for v in obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def to_json(obj):
    return json.dumps(as_data(obj), indent=1, ensure_ascii=False) + '\n'


def write_json(obj, fpath, verbose=True):
    try:
        with open(fpath, 'w', encoding='utf-8') as f:
            f.write(to_json(obj))
    except OSError as err:
        raise OutputError('cannot write {:s}: {:s}'.format(str(fpath), err.strerror or str(err)))
    if verbose:
        print('Wrote', fpath)


def read_json(fpath):
    with open(fpath, encoding='utf-8') as f:
        return json.load(f)


def fragment_from_dict(data):
    """Rebuild a Fragment from its JSON form (vertex names are the ids)"""
    try:
        vertices = sorted(data['vertices'])
        edges = sorted(data['edges'])
        faces = sorted(data['faces'], key=lambda f: f[0])
    except (KeyError, TypeError) as err:
        raise InputError('not a fragment document: {!s}'.format(err))
    if vertices != list(range(len(vertices))) or [e[0] for e in edges] != list(range(len(edges))):
        raise InputError('fragment ids must be dense and start at 0')
    return Fragment([str(v) for v in vertices], [(u, v) for _, u, v in edges],
                    [face for _, face in faces])


def labeling_from_dict(data, host):
    try:
        return Labeling.from_mapping(host, data['pattern'], data['labels'])
    except KeyError as err:
        raise InputError('not a labeling document: missing {!s}'.format(err))
