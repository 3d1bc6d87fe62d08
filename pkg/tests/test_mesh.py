import numpy as np
import pytest

from pentaglobe.common import InputError, MIN_TIMEZONES
from pentaglobe.mesh import (build_earth_map, build_extended_fragment, build_part_template,
                             build_timezone_template, is_automorphism, symmetries, validate)
from pentaglobe.mesh.fragment import Fragment


def test_neighborhood_ids(neighborhood):
    assert (neighborhood.num_vertices, neighborhood.num_edges, neighborhood.num_faces) == (15, 20, 6)
    assert neighborhood.vertex_names[:5] == ('A1', 'A2', 'A3', 'A4', 'A5')
    assert neighborhood.edge_by_name('A1A2') == 0
    assert neighborhood.edge_by_name('B1A1') == 5
    assert neighborhood.edge_by_name('B1C1') == 10
    assert neighborhood.edge_by_name('C1B2') == 11
    assert neighborhood.edge_by_name('C5B1') == 19
    assert neighborhood.center_edge(4) == 3
    assert neighborhood.outer_edges(3) == (14, 15)
    assert neighborhood.shared_edge(5, 1) == neighborhood.spoke(1)
    assert neighborhood.shared_edge(2, 3) == neighborhood.spoke(3)


def test_neighborhood_faces(neighborhood):
    assert neighborhood.faces[0] == (0, 1, 2, 3, 4)
    for i in range(1, 6):
        face = set(neighborhood.faces[neighborhood.neighbor(i)])
        assert neighborhood.center_edge(i) in face
        assert set(neighborhood.outer_edges(i)) <= face


def test_neighborhood_boundary(neighborhood):
    assert sorted(neighborhood.boundary_edges) == list(range(10, 20))
    interior = neighborhood.interior_vertices
    assert interior[:5].all() and not interior[5:].any()
    assert validate(neighborhood).passed


@pytest.mark.parametrize("i", [1, 2, 3, 4, 5])
def test_extended_fragment(neighborhood, i):
    ext = build_extended_fragment(i)
    assert ext.num_faces == 8
    assert ext.num_edges == 25
    assert ext.edge_names[:20] == neighborhood.edge_names
    # the neighborhood vertices of P_i all have degree 3 in the extension
    for v in ext.face_vertices[ext.neighbor(i)]:
        assert ext.degree(v) == 3


def test_template_structure(template):
    report = validate(template)
    assert report.passed, report.failures
    d = template.distance
    assert len(template.left_meridian) == d
    assert len(template.right_meridian) == d
    assert template.fragment.num_faces == (4 if d == 5 else 12)
    assert set(template.left_meridian).isdisjoint(template.right_meridian)


def test_template_fans(template):
    north, south = template.pole_edges
    assert template.north_fan[0] == template.left_meridian[0]
    assert template.north_fan[-1] == template.right_meridian[0]
    assert template.south_fan[-1] == template.right_meridian[-1]
    assert len(north) == (1 if template.distance == 5 else 3)
    assert len(south) == len(north)


def test_template_gluing_map(template):
    edges = template.gluing_map['edges']
    assert sorted(edges.values()) == sorted(template.left_meridian)
    assert len(template.gluing_map['vertices']) == template.distance - 1


def test_distance4_parts():
    full = build_timezone_template(4)
    assert len(full.meridian_part) == 2
    assert len(full.core_part) == 10
    for kind, nfaces in (('meridian_part', 2), ('core_part', 10)):
        part = build_part_template(kind)
        assert part.kind == kind
        assert part.fragment.num_faces == nfaces
        assert len(part.left_meridian) == 4 and len(part.right_meridian) == 4
        assert len(set(part.parent_edges.tolist())) == part.fragment.num_edges
        assert validate(part).passed
    meridian = build_part_template('meridian_part')
    core = build_part_template('core_part')
    seam_m = meridian.parent_edges[list(meridian.right_meridian)].tolist()
    seam_c = core.parent_edges[list(core.left_meridian)].tolist()
    assert seam_m == seam_c


def test_unknown_part():
    with pytest.raises(ValueError):
        build_part_template('equator')


EARTH_MAP_COUNTS = [
    (5, 4, 16, 40, 26),
    (3, 2, 24, 60, 38),
    (1, 2, 24, 60, 38),
    (2, 3, 36, 90, 56),
]


@pytest.mark.parametrize("d, n, f, e, v", EARTH_MAP_COUNTS)
def test_earth_map_counts(d, n, f, e, v):
    em = build_earth_map(d, n)
    assert (em.num_faces, em.num_edges, em.num_vertices) == (f, e, v)
    assert validate(em).passed


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("extra", [0, 1, 2])
def test_earth_map_invariants(d, extra):
    n = MIN_TIMEZONES[d] + extra
    em = build_earth_map(d, n)
    report = validate(em)
    assert report.passed, report.failures
    degrees = em.degrees()
    expected = n if d == 5 else 3*n
    assert [degrees[p] for p in em.poles] == [expected, expected]
    assert len(em.timezone_faces(0)) == em.template.fragment.num_faces


def test_pole_degree_distance4():
    em = build_earth_map(4, 2)
    report = validate(em)
    assert report['pole_degree']['passed']
    assert [int(em.degree(p)) for p in em.poles] == [6, 6]


@pytest.mark.parametrize("d, n", [(5, 3), (3, 1), (2, 0)])
def test_earth_map_too_few_timezones(d, n):
    with pytest.raises(InputError):
        build_earth_map(d, n)


def test_earth_map_is_shared():
    em = build_earth_map(2, 3)
    assert build_earth_map(2, 3) is em
    assert build_earth_map(2, 4) is not em


def test_validate_reports_bad_face():
    frag = Fragment(['u', 'v', 'w', 'x'], [(0, 1), (1, 2), (2, 3), (3, 0)], [[0, 1, 2, 3]])
    report = validate(frag)
    assert not report.passed
    assert not report['face_size']['passed']
    assert 'face_size' in set(report.df['check'])


def test_earth_map_to_dict():
    em = build_earth_map(3, 2)
    data = em.to_dict()
    assert 'boundary' not in data
    assert data['poles'] == list(em.poles)
    assert len(data['meridians']) == 2
    assert len(data['faces']) == 24


def test_neighborhood_group(neighborhood):
    group = symmetries(neighborhood)
    assert group.order == 10
    assert group.elements[0].is_identity
    assert group.is_closed()
    for g in group:
        assert is_automorphism(neighborhood, g)


def test_template_groups(template):
    group = symmetries(template)
    assert group.order >= 2
    assert group.is_closed()
    assert any(g.pole_swap for g in group)
    for g in group:
        assert is_automorphism(template.fragment, g)
        assert {g.vertex_perm[template.north], g.vertex_perm[template.south]} == \
            {template.north, template.south}


@pytest.mark.parametrize("kind", ['meridian_part', 'core_part'])
def test_part_groups(kind):
    part = build_part_template(kind)
    group = symmetries(part)
    assert group.is_closed()
    assert any(g.pole_swap for g in group)


def test_label_swap_doubles_group(neighborhood):
    plain = symmetries(neighborhood)
    swapped = symmetries(neighborhood, pattern='a2b2c')
    assert swapped.order == 2*plain.order
    assert swapped.is_closed()


def test_group_images(neighborhood):
    group = symmetries(neighborhood)
    labels = np.zeros(20, dtype=np.int8)
    labels[3] = 1
    images = group.images(labels)
    assert images.shape == (10, 20)
    # the b edge visits every center edge
    assert sorted({int(np.flatnonzero(row)[0]) for row in images}) == [0, 1, 2, 3, 4]
