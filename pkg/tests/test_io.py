import json

import pytest

from pentaglobe.common import InputError, OutputError
from pentaglobe.earthmap import build_family_graph, strip_tilings
from pentaglobe.io import (family_graph_dot, fragment_from_dict, labeling_from_dict, read_json,
                           to_json, write_dot, write_json)
from pentaglobe.mesh import build_timezone_template
from pentaglobe.neighborhood import by_type, classify_neighborhoods, transcribed_labeling
from pentaglobe.plotting import render


def test_fragment_json(neighborhood):
    data = json.loads(to_json(neighborhood))
    assert len(data['edges']) == 20
    assert data['boundary'] == list(neighborhood.boundary_edges)
    frag = fragment_from_dict(data)
    assert frag.faces == neighborhood.faces
    assert frag.edges.tolist() == neighborhood.edges.tolist()


def test_template_json():
    data = json.loads(to_json(build_timezone_template(3)))
    assert data['distance'] == 3
    assert len(data['meridians'][0]) == 3
    assert len(data['core_faces']) == 2


def test_bad_fragment_document():
    with pytest.raises(InputError):
        fragment_from_dict({'vertices': [0, 1]})


def test_labeling_json(tmp_path, neighborhood):
    labeling = transcribed_labeling('a4b', '7')
    fpath = tmp_path / 'type7.json'
    write_json(labeling, fpath, verbose=False)
    back = labeling_from_dict(read_json(fpath), neighborhood)
    assert back == labeling
    with pytest.raises(InputError):
        labeling_from_dict({'labels': {}}, neighborhood)


def test_write_json_unwritable(tmp_path):
    with pytest.raises(OutputError):
        write_json({}, tmp_path / 'no' / 'such.json', verbose=False)


def test_dot_labels():
    fg = build_family_graph(1, 'a4b')
    text = family_graph_dot(fg)
    assert "×100 [timezone]" in text
    assert text.count('->') == 2


def test_dot_empty_graph(tmp_path):
    fg = build_family_graph(3, 'a3bc')
    assert 'no tilings' in family_graph_dot(fg)
    fpath = tmp_path / 'empty.dot'
    write_dot(fg, fpath, verbose=False)
    assert fpath.read_text().startswith('digraph')


def test_render_neighborhood_tiling(tmp_path):
    nt = by_type(classify_neighborhoods('a4b'))['1']
    fpath = tmp_path / 'type1.svg'
    svg = render(nt, fpath, verbose=False)
    assert svg.count('id="edge') == 20
    assert fpath.read_text() == svg
    assert render(nt, verbose=False) == svg


def test_render_timezone_and_graph():
    t = strip_tilings(3, 'a4b')[0]
    assert render(t, verbose=False).count('id="edge') == build_timezone_template(3).fragment.num_edges
    assert '<svg' in render(build_family_graph(3, 'a4b'), verbose=False)


def test_render_unknown_subject():
    with pytest.raises(InputError):
        render(42, verbose=False)
