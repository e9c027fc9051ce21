import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gonforge.complex import (ComplexError, Face, Polyhedron, build_polyhedron, cell_census,
                              census_json, check_link_condition, vertex_links)
from gonforge.incidence import is_generalized_m_gon
from gonforge.presentation import PolygonalPresentation, reconstruct_link_graph
from gonforge.symmetry import find_isomorphism


def one_face():
    return PolygonalPresentation(3, 3, ((1, 2, 3),))


def test_one_vertex_for_builtins(t1, t2):
    for p in (t1, t2):
        poly = build_polyhedron(p)
        assert len(poly.vertices) == 1 and len(poly.edges) == 15 and len(poly.faces) == 15
        assert all(e.tail == e.head == 0 for e in poly.edges)


def test_one_face_by_hand():
    # corners glue end(3)~start(1), end(1)~start(2), end(2)~start(3): three distinct points
    poly = build_polyhedron(one_face())
    c = cell_census(poly)
    assert (c.V, c.E, c.F, c.euler_characteristic) == (3, 3, 1, 1)
    assert [(e.tail, e.head) for e in poly.edges] == [(0, 1), (1, 2), (2, 0)]
    for link in vertex_links(poly):
        assert len(link) == 2 and len(link.edges) == 1


def test_self_glued_faces(t2):
    poly = build_polyhedron(t2)
    assert Face(0, (1, 1, 10)) in poly.faces


def test_invalid_input_refused():
    with pytest.raises(ComplexError):
        build_polyhedron(PolygonalPresentation(4, 3, ((1, 2, 3), (1, 2, 4))))


def test_corner_link_equals_forced_link(t1, t2):
    for p in (t1, t2):
        (link,) = vertex_links(build_polyhedron(p))
        forced = reconstruct_link_graph(p)
        assert link.edge_set == forced.edge_set
        m = find_isomorphism(link, forced)
        assert m is not None and m.is_isomorphism(link, forced)
        assert is_generalized_m_gon(link, 4).verdict


def test_census(t1, t2):
    for p in (t1, t2):
        c = cell_census(build_polyhedron(p))
        assert (c.V, c.E, c.F, c.euler_characteristic, c.links) == (1, 15, 15, 1, [(30, 45)])
        # the closed-form cell counts do not reproduce the computed ones
        assert (c.formula_edges, c.formula_faces) == (90, 45)


def test_census_json_stable(t1):
    a = census_json(build_polyhedron(t1))
    assert a == census_json(build_polyhedron(t1))
    assert '"schema_version": 1' in a and '"matches_computed": false' in a


def test_empty_presentation():
    c = cell_census(build_polyhedron(PolygonalPresentation(0, 3, ())))
    assert (c.V, c.E, c.F) == (0, 0, 0)


@settings(max_examples=25, deadline=None)
@given(st.permutations(list(range(1, 16))))
def test_counts_invariant_under_relabeling(t1, perm):
    sigma = dict(zip(range(1, 16), perm))
    poly = build_polyhedron(t1.relabel(sigma))
    c = cell_census(poly)
    assert (c.V, c.E, c.F, c.euler_characteristic) == (1, 15, 15, 1)
    corners = poly.corners()
    assert len(corners) == 3 * c.F == sum(t for _, t in c.links)
    assert 2 * c.E == sum(s for s, _ in c.links)


def test_curvature_quadrangle_triangles(t1):
    poly = build_polyhedron(t1)
    r = check_link_condition(poly, 3, 4)
    assert r.link_girths == [8] and r.gromov and r.hyperbolic_strict and not r.euclidean_boundary
    assert r.mn_inequality  # 8*3 >= 2*(8+3)


def test_curvature_euclidean_boundary(t1):
    r = check_link_condition(build_polyhedron(t1), 3, 3)
    assert not r.hyperbolic_strict and r.euclidean_boundary and r.gromov


def test_curvature_gromov_fails_for_large_m(t1):
    assert not check_link_condition(build_polyhedron(t1), 3, 5).gromov


def test_curvature_forest_links():
    r = check_link_condition(build_polyhedron(one_face()), 3, 4)
    assert r.gromov and r.mn_inequality and r.notes


def test_square_faces_arithmetic():
    poly = build_polyhedron(PolygonalPresentation(4, 4, ((1, 2, 3, 4),)))
    r = check_link_condition(poly, 4, 3)
    assert r.hyperbolic_strict  # 12 > 10
    assert not check_link_condition(poly, 4, 2).hyperbolic_strict
    assert check_link_condition(poly, 4, 2).euclidean_boundary  # 8 == 8


def test_mixed_arities_rejected():
    poly = Polyhedron((0,), (), (Face(0, (1, 2, 3)), Face(1, (1, 2, 3, 4))))
    with pytest.raises(ComplexError):
        check_link_condition(poly, 3, 4)


def test_side_count_mismatch_rejected(t1):
    with pytest.raises(ComplexError):
        check_link_condition(build_polyhedron(t1), 4, 4)
