import random

import pytest

from normsurf.errors import (
    Disconnected,
    InvalidEdgePresent,
    MalformedPermutation,
    SelfFaceGluing,
    SlotAlreadyGlued,
    TriangulationError,
)
from normsurf.gadgets import build_T_G, complete_k4, node_gadget, triangular_pillow, triangular_solid_torus
from normsurf.normal import euler_functional, vertex_link_vector
from normsurf.triangulation import (
    Gluing,
    Triangulation,
    compute_skeleton,
    from_text,
    glue,
    is_3manifold,
    is_orientable,
    orientation,
    perm_sign,
    to_text,
    vertex_links,
)

from oracles import one_tet_gluings, random_triangulation


def test_pillow_first_gluing_is_accepted():
    T = glue(Triangulation(2), Gluing(0, 2, 1, 3, (0, 1, 3, 2)))
    assert T.neighbour(0, 2) == (1, 3, (0, 1, 3, 2))
    # inverse direction is stored too
    assert T.neighbour(1, 3) == (0, 2, (0, 1, 3, 2))


def test_gluing_same_slot_twice():
    T = Triangulation(2, [Gluing(0, 2, 1, 3, (0, 1, 3, 2))])
    with pytest.raises(SlotAlreadyGlued):
        glue(T, Gluing(0, 2, 1, 2, (0, 1, 2, 3)))


def test_self_gluing_of_two_faces():
    T = Triangulation(1, [Gluing(0, 0, 0, 1, (1, 0, 2, 3))])
    assert len(T.gluings) == 1
    assert T.neighbour(0, 1) == (0, 0, (1, 0, 2, 3))


def test_malformed_gluings():
    with pytest.raises(MalformedPermutation):
        Gluing(0, 0, 1, 1, (0, 1, 2, 3))  # perm[0] must be 1
    with pytest.raises(MalformedPermutation):
        Gluing(0, 0, 1, 1, (1, 1, 2, 3))
    with pytest.raises(SelfFaceGluing):
        Gluing(0, 2, 0, 2, (1, 0, 2, 3))
    with pytest.raises(TriangulationError):
        Triangulation(0)


def test_torus_skeleton():
    sk = compute_skeleton(triangular_solid_torus())
    assert len(sk.edges) == 9
    assert all(e.boundary for e in sk.edges)
    assert sk.degree_multiset() == [1, 1, 1, 2, 2, 2, 3, 3, 3]
    assert len(sk.vertices) == 3 and all(v.boundary for v in sk.vertices)


def test_pillow_skeleton():
    T = triangular_pillow()
    sk = T.skeleton
    assert len(sk.vertices) == 4
    assert sorted(v.boundary for v in sk.vertices) == [False, True, True, True]
    assert len(sk.edges) == 6
    assert sum(e.boundary for e in sk.edges) == 3
    assert all(e.degree == 2 for e in sk.edges)
    assert len(T.gluings) == 3
    assert T.boundary_faces() == [(0, 3), (1, 2)]


def test_single_tetrahedron():
    T = Triangulation(1)
    sk = T.skeleton
    assert [e.degree for e in sk.edges] == [1] * 6
    assert len(sk.vertices) == 4
    assert all(e.boundary and e.valid for e in sk.edges)
    assert [l.classification for l in vertex_links(T)] == ["disc"] * 4
    assert is_3manifold(T)
    assert is_orientable(T)


def test_pillow_internal_vertex_is_a_sphere():
    T = triangular_pillow()
    kinds = {vc.boundary: l.classification for vc, l in zip(T.skeleton.vertices, vertex_links(T))}
    assert kinds == {False: "sphere", True: "disc"}


def test_invalid_edge_from_one_tetrahedron():
    # found by exhaustive search; checked by hand below
    invalid = [T for T in one_tet_gluings() if not T.skeleton.valid]
    assert invalid
    # face 0 (vertices 1,2,3) onto face 1 (vertices 0,2,3) with 2<->3 swapped:
    # edge 23 is sent to edge 32, i.e. to itself reversed
    T = Triangulation(1, [Gluing(0, 0, 0, 1, (1, 0, 3, 2))])
    assert not T.skeleton.valid
    assert T in invalid
    assert not is_3manifold(T)
    with pytest.raises(InvalidEdgePresent):
        vertex_links(T)


def test_t_g_k4_is_a_closed_orientable_manifold():
    T = build_T_G(complete_k4()).triangulation
    assert T.is_closed()
    assert is_3manifold(T)
    assert is_orientable(T)
    assert {l.classification for l in vertex_links(T)} == {"sphere"}


def test_torus_orientation_by_hand():
    # perms 2103 and 0321 are transpositions (odd), 1023 as well, so
    # all-equal signs are consistent
    T = triangular_solid_torus()
    assert [perm_sign(g.perm) for g in T.gluings] == [-1, -1, -1]
    assert orientation(T) == [1, 1, 1]


def test_orientability_needs_connected_input():
    with pytest.raises(Disconnected):
        is_orientable(Triangulation(2))


def test_non_orientable_example():
    # gluing with an even permutation between a tetrahedron and itself
    T = Triangulation(1, [Gluing(0, 0, 0, 1, (1, 0, 3, 2))])
    assert not is_orientable(T)


@pytest.mark.parametrize("seed", range(30))
def test_counting_invariants(seed):
    rng = random.Random(seed)
    T = random_triangulation(rng, rng.randint(1, 6))
    sk = T.skeleton
    assert sum(e.degree for e in sk.edges) == 6 * T.n
    assert sum(len(v.slots) for v in sk.vertices) == 4 * T.n
    assert len(sk.internal_faces) == len(T.gluings)
    assert len(sk.boundary_faces) == 4 * T.n - 2 * len(T.gluings)


@pytest.mark.parametrize("seed", range(20))
def test_skeleton_survives_relabelling(seed):
    rng = random.Random(100 + seed)
    T = random_triangulation(rng, rng.randint(2, 6))
    order = list(range(T.n))
    rng.shuffle(order)
    U = T.relabel(order)
    a, b = T.skeleton, U.skeleton
    assert a.degree_multiset() == b.degree_multiset()
    assert len(a.vertices) == len(b.vertices)
    assert a.valid == b.valid
    if T.is_connected():
        assert is_orientable(T) == is_orientable(U)


@pytest.mark.parametrize("seed", range(20))
def test_link_euler_two_ways(seed):
    rng = random.Random(200 + seed)
    T = random_triangulation(rng, rng.randint(1, 5))
    if not T.skeleton.valid:
        return
    direct = sum(l.euler for l in vertex_links(T))
    chi = euler_functional(T)
    via_normal = sum(chi(vertex_link_vector(T, v)) for v in range(len(T.skeleton.vertices)))
    assert direct == via_normal


@pytest.mark.parametrize("build", [triangular_pillow, triangular_solid_torus, lambda: node_gadget()[0]])
def test_text_round_trip(build):
    T = build()
    text = to_text(T)
    U = from_text(text)
    assert U == T
    assert to_text(U) == text


def test_text_round_trip_random():
    rng = random.Random(5)
    for _ in range(20):
        T = random_triangulation(rng, rng.randint(1, 5))
        assert from_text(to_text(T)) == T


def test_gluing_inverse_is_same_identification():
    g = Gluing(1, 2, 0, 3, (0, 1, 3, 2))
    assert g.inverse().canonical() == g.canonical()
    assert Triangulation(2, [g]) == Triangulation(2, [g.inverse()])
