from fractions import Fraction
from itertools import product

import pytest

from normsurf.cone import ConeSystem, extreme_rays, filter_admissible
from normsurf.detect import enumerate_spanning_central
from normsurf.errors import DimensionMismatch, NotAdmissible, UnsupportedVector
from normsurf.gadgets import build_T_G, complete_k4, node_gadget, triangular_pillow, triangular_solid_torus
from normsurf.normal import (
    arc_coordinates,
    disc_arc,
    euler_functional,
    euler_value,
    is_admissible,
    is_trivial,
    matching_system,
    quad_pattern,
    surface_complex,
    vector_from_text,
    vector_of,
    vector_to_text,
    vertex_link_vector,
)
from normsurf.triangulation import Triangulation, all_face_gluings, face_vertices

PILLOW_QUAD_DISCS = [(0, 0), (1, 2), (2, 1)]


def gadget():
    return node_gadget()[0]


def constructed():
    return {
        "pillow": triangular_pillow(),
        "torus": triangular_solid_torus(),
        "gadget": gadget(),
        "t_g_k4": build_T_G(complete_k4()).triangulation,
    }


def test_matching_system_sizes():
    ms = matching_system(triangular_pillow())
    assert (len(ms.rows), ms.dim) == (9, 14)
    assert len(matching_system(Triangulation(1)).rows) == 0
    ms = matching_system(gadget())
    assert (len(ms.rows), ms.dim) == (45, 63)


@pytest.mark.parametrize("name", ["pillow", "torus", "gadget", "t_g_k4"])
def test_rows_have_matching_shape(name):
    T = constructed()[name]
    ms = matching_system(T)
    assert len(ms.rows) == 3 * len(T.gluings)
    for row in ms.rows:
        assert sum(c for _, c in row) == 0
        assert sum(abs(c) for _, c in row) <= 4


def test_arc_algebra_by_hand():
    # the triangle at vertex 1 leaves an arc cutting off 1 in faces 0, 2, 3
    assert [disc_arc(4, f) for f in range(4)] == [1, None, 1, 1]
    # quad 1 separates {0,1} from {2,3}; in face 3 (vertices 0,1,2) it cuts off 2
    assert disc_arc(0, 3) == 2
    assert disc_arc(0, 0) == 1  # face 0 = 123, cuts off 1 (partner 0 is missing)
    tri, quad = arc_coordinates(0, 3, 2)
    assert (tri, quad) == (5, 0)


def test_admissibility_examples():
    T = triangular_pillow()
    internal = next(v.index for v in T.skeleton.vertices if not v.boundary)
    assert is_admissible(T, vertex_link_vector(T, internal))
    assert is_admissible(T, [0] * 14)
    x = [0] * 14
    x[0] = x[1] = 1
    assert not is_admissible(T, x)
    with pytest.raises(DimensionMismatch):
        is_admissible(T, [0] * 13)


@pytest.mark.parametrize("name", ["pillow", "torus", "gadget", "t_g_k4"])
def test_vertex_links_are_admissible_with_right_euler(name):
    T = constructed()[name]
    chi = euler_functional(T)
    for vc in T.skeleton.vertices:
        x = vertex_link_vector(T, vc.index)
        assert is_admissible(T, x)
        assert is_trivial(T, x)
        assert euler_value(T, chi, x) == (1 if vc.boundary else 2)


def test_euler_value_rejects_inadmissible():
    T = triangular_pillow()
    x = [0] * 14
    x[0] = x[1] = 1
    with pytest.raises(NotAdmissible):
        euler_value(T, None, x)


def test_one_vertex_link_is_all_triangles():
    # search all closed one-tetrahedron gluings for one with a single vertex
    found = None
    gl = list(all_face_gluings(1))
    for a, b in product(gl, gl):
        if {(a.tet, a.face), (a.other_tet, a.other_face)} & {(b.tet, b.face), (b.other_tet, b.other_face)}:
            continue
        T = Triangulation(1, [a, b])
        if len(T.skeleton.vertices) == 1:
            found = T
            break
    assert found is not None
    x = vertex_link_vector(found, 0)
    assert x == [0, 0, 0, 1, 1, 1, 1]


def test_unglued_vertex_link():
    x = vertex_link_vector(Triangulation(1), 0)
    assert sum(x) == 1 and x[3] == 1


def test_pillow_internal_link_vector():
    T = triangular_pillow()
    vc = next(v for v in T.skeleton.vertices if not v.boundary)
    x = vertex_link_vector(T, vc.index)
    # the internal vertex is vertex 3 of tetrahedron 0 and vertex 2 of tetrahedron 1
    assert x == [0, 0, 0, 0, 0, 0, 1] + [0, 0, 0, 0, 0, 1, 0]


def test_triviality():
    T = triangular_pillow()
    assert is_trivial(T, [0] * 14)
    assert not is_trivial(T, vector_of([0, 0]))


def test_surface_complex_on_the_pillow():
    T = triangular_pillow()
    for d0, d1 in PILLOW_QUAD_DISCS:
        info = surface_complex(T, vector_of([d0, d1]))
        assert (info.euler, info.orientable, info.connected, info.boundary_components) == (1, True, True, 1)
    with pytest.raises(UnsupportedVector):
        surface_complex(T, [2] + [0] * 13)


def test_surface_complex_on_gadget_kinds():
    T = gadget()
    seen = set()
    for x in enumerate_spanning_central(T):
        info = surface_complex(T, x)
        if not info.connected:
            continue
        quads_only = all(x[7 * t + 3: 7 * t + 7] == [0, 0, 0, 0] for t in range(T.n))
        seen.add((info.euler, info.orientable, quads_only))
    # tubes, and the all-quadrilateral Moebius strip
    assert (0, True, False) in seen
    assert (0, False, True) in seen


@pytest.mark.parametrize("name", ["pillow", "torus", "gadget"])
def test_surface_complex_matches_functional(name):
    T = constructed()[name]
    chi = euler_functional(T)
    xs = enumerate_spanning_central(T)
    assert xs
    for x in xs:
        assert surface_complex(T, x).euler == chi(x)


def test_functional_scale_makes_integers():
    chi = euler_functional(gadget())
    assert all(Fraction(w).denominator == 1 for w in chi.integer_weights())
    assert all((w * chi.scale).denominator == 1 for w in chi.weights)


def test_single_quad_has_euler_one():
    T = Triangulation(1)
    assert euler_functional(T)(vector_of([0])) == 1


@pytest.mark.parametrize("name", ["pillow", "torus"])
def test_arc_counts_agree_across_faces_on_rays(name):
    T = constructed()[name]
    ms = matching_system(T)
    sys_ = ConeSystem.from_sparse(ms.dim, ms.rows, quad_pattern=quad_pattern(T.n))
    for x in filter_admissible(extreme_rays(sys_), sys_.quad_pattern):
        for g in T.gluings:
            for v in face_vertices(g.face):
                here = sum(x[i] for i in arc_coordinates(g.tet, g.face, v))
                there = sum(x[i] for i in arc_coordinates(g.other_tet, g.other_face, g.perm[v]))
                assert here == there


def test_vector_text_round_trip():
    x = list(range(14))
    assert vector_from_text(vector_to_text(x)) == x
