import random

import pytest

from normsurf.abstract import (
    AbstractEquation,
    AbstractInstance,
    ClauseSet,
    Layout,
    brute_force_sat,
    build_M1,
    build_M2,
    check_compatible,
    clauses_from_text,
    clauses_to_text,
    construct_witness,
    decide_concrete,
    decide_instance,
    extract_assignment,
    flat,
    instance_from_text,
    instance_to_text,
    is_M_admissible,
    reduce_sat,
)
from normsurf.cone import ConeSystem, extreme_rays, filter_admissible
from normsurf.errors import (
    AssignmentDoesNotSatisfy,
    BadCoordinate,
    PreconditionViolated,
    RoleViolation,
    TooFewClauses,
    TooManyVariables,
)
from normsurf.gadgets import triangular_pillow
from normsurf.normal import euler_functional, matching_system, quad_pattern
from normsurf.triangulation import Gluing, Triangulation

from oracles import canonical_clause_sets, cone_rays_by_support, one_in_three_by_enumeration

UNSAT4 = ClauseSet((("a", "b", "c"), ("a", "b", "d"), ("a", "c", "d"), ("b", "c", "d")))
TWO = ClauseSet((("a", "b", "c"), ("a", "d", "e")))


# -- compatibility -------------------------------------------------------------

def test_reduction_output_is_compatible():
    I = reduce_sat(TWO)
    assert check_compatible(I.M).compatible


def test_quad_in_five_equations_is_incompatible():
    q, t = flat(0, 1), flat(0, 4)
    M = [AbstractEquation(q, t, flat(1, k), flat(1, 4)) for k in (1, 2, 3)]
    M += [AbstractEquation(q, flat(2, 5), flat(2, 1), flat(2, 6)), AbstractEquation(q, flat(3, 5), flat(3, 1), flat(3, 6))]
    assert check_compatible(M).counts[q] == 5
    assert not check_compatible(M).compatible


def test_empty_is_compatible():
    c = check_compatible([])
    assert c.compatible and c.counts == {}


def test_coincidences_count_twice():
    e = AbstractEquation(flat(0, 1), flat(0, 4), flat(0, 1), flat(0, 5))
    assert check_compatible([e]).counts[flat(0, 1)] == 2


def test_roles_are_checked():
    with pytest.raises(RoleViolation):
        AbstractEquation(flat(0, 4), flat(0, 4), flat(0, 1), flat(0, 5))
    with pytest.raises(RoleViolation):
        AbstractEquation(flat(0, 1), flat(0, 2), flat(0, 1), flat(0, 5))


# -- M1 ----------------------------------------------------------------------

def test_m1_single_clause_is_empty():
    assert build_M1(ClauseSet((("a", "b", "c"),))) == []


def test_m1_two_clauses_by_hand():
    L = Layout(2)
    M = build_M1(TWO)
    assert len(M) == 4
    w = lambda i: L.w(1, i)  # noqa: E731
    assert M[:3] == [
        AbstractEquation(w(1), w(4), w(1), w(5)),
        AbstractEquation(w(2), w(4), w(2), w(7)),
        AbstractEquation(w(3), w(6), w(3), w(7)),
    ]
    assert M[3] == AbstractEquation(L.x(1, 1), w(4), L.x(2, 1), w(5))


@pytest.mark.parametrize("seed", range(25))
def test_m1_occurrence_bounds(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    C = ClauseSet(tuple(tuple(rng.sample("abcdefg", 3)) for _ in range(n)))
    L = Layout(n)
    counts = check_compatible(build_M1(C)).counts
    for k in range(1, n):
        for i in (1, 2, 3):
            assert counts.get(L.w(k, i), 0) == 2
        for i in (4, 5, 6, 7):
            assert counts.get(L.w(k, i), 0) <= 3
    for k in range(1, n + 1):
        for i in (1, 2, 3):
            assert counts.get(L.x(k, i), 0) <= 2
        for i in (4, 5, 6, 7):
            assert counts.get(L.x(k, i), 0) == 0


@pytest.mark.parametrize("clauses", [
    TWO,
    ClauseSet((("a", "b", "c"), ("c", "b", "d"), ("a", "d", "e"))),
    ClauseSet((("a", "b", "c"), ("a", "b", "c"))),
])
def test_m1_forces_repeated_variables_equal(clauses):
    n = len(clauses)
    L = Layout(n)
    dim = 7 * L.p
    M = build_M1(clauses)
    rays = extreme_rays(ConeSystem(dim, tuple(e.dense(dim) for e in M)))
    occurrences = {}
    for k, c in enumerate(clauses.clauses, start=1):
        for i, v in enumerate(c, start=1):
            occurrences.setdefault(v, []).append(L.x(k, i))
    # every point of the cone is a non-negative combination of the rays
    for r in rays:
        for idx in occurrences.values():
            assert len({r[i] for i in idx}) == 1
        for k in range(1, n):
            assert len({r[L.w(k, i)] for i in (4, 5, 6, 7)}) == 1


# -- M2 ----------------------------------------------------------------------

def test_m2_sizes():
    assert len(build_M2(2)) == 7
    assert len(build_M2(3)) == 15
    for n in range(2, 9):
        assert len(build_M2(n)) == (n - 2) + 7 * (n - 1)
    with pytest.raises(TooFewClauses):
        build_M2(1)


@pytest.mark.parametrize("n", range(2, 8))
def test_m2_occurrence_bounds(n):
    L = Layout(n)
    M = build_M2(n)
    counts = check_compatible(M).counts
    for k in range(1, n + 1):
        for i in range(1, 8):
            assert counts.get(L.x(k, i), 0) <= 2
    for k in range(1, n):
        for i in (1, 2, 3):
            assert counts.get(L.y(k, i), 0) <= 4
        for i in (4, 5, 6, 7):
            assert counts.get(L.y(k, i), 0) <= 3
        assert counts.get(L.y(k, 7), 0) == 0
        # y_{k,3} appears exactly twice, both times in the same equation
        assert counts[L.y(k, 3)] == 2
        assert sum(1 for e in M if e.q == e.q2 == L.y(k, 3)) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_m2_reduced_identities_on_rays(n):
    L = Layout(n)
    dim = 7 * L.p
    sys_ = ConeSystem(
        dim, tuple(e.dense(dim) for e in build_M2(n)),
        quad_pattern=tuple(quad_pattern(L.p)), zero_fixed=frozenset({L.y(1, 5)}),
    )
    rays = filter_admissible(extreme_rays(sys_, prune_quads=True), sys_.quad_pattern)
    assert rays
    x, y = L.x, L.y
    for r in rays:
        for k in range(1, n):
            assert r[y(k, 1)] == r[y(k, 2)] == r[y(k, 5)] == r[y(k, 6)] == 0
            assert r[x(k, 4)] == r[x(k, 3)]
            assert r[x(k + 1, 6)] == r[x(k + 1, 3)]
            assert r[x(k, 5)] == r[x(k, 2)] + r[x(k, 3)]
            assert r[x(k + 1, 7)] == r[x(k + 1, 2)] + r[x(k + 1, 3)]
            assert sum(r[x(k, i)] for i in (1, 2, 3)) == sum(r[x(k + 1, i)] for i in (1, 2, 3))


# -- the reduction -------------------------------------------------------------

def test_reduce_sizes():
    C = ClauseSet((("a", "b", "c"), ("a", "d", "e"), ("b", "d", "f")))
    I = reduce_sat(C)
    assert (I.p, I.dim) == (7, 49)
    assert check_compatible(I.M).compatible
    assert I.fixed_zero == Layout(3).y(1, 5)
    with pytest.raises(TooFewClauses):
        reduce_sat(ClauseSet((("a", "b", "c"),)))


def test_decide_examples():
    assert decide_instance(reduce_sat(TWO)).verdict
    assert not decide_instance(reduce_sat(UNSAT4)).verdict
    I = reduce_sat(TWO)
    flat_chi = AbstractInstance(I.p, I.M, (0,) * I.dim, I.fixed_zero)
    assert not decide_instance(flat_chi).verdict


def test_brute_force_sat_examples():
    assert brute_force_sat(ClauseSet((("a", "b", "c"),))) is not None
    assert brute_force_sat(UNSAT4) is None
    assert brute_force_sat(ClauseSet(())) == {}
    many = ClauseSet(tuple((f"a{i}", f"b{i}", f"c{i}") for i in range(9)))
    with pytest.raises(TooManyVariables):
        brute_force_sat(many)


def test_brute_force_first_assignment():
    a = brute_force_sat(ClauseSet((("a", "b", "c"),)))
    assert ClauseSet((("a", "b", "c"),)).satisfied_by(a)
    assert sum(a.values()) == 1


def test_witness_by_hand():
    L = Layout(2)
    a = {"a": 1, "b": 0, "c": 0, "d": 0, "e": 0}
    w = construct_witness(TWO, a)
    block = lambda k: w[L.x(k, 1): L.x(k, 1) + 7]  # noqa: E731
    assert block(1) == [1, 0, 0, 0, 0, 0, 0]
    assert block(2) == [1, 0, 0, 0, 0, 0, 0]
    assert sum(w) == 2
    I = reduce_sat(TWO)
    assert I.is_M_admissible(w) and I.chi_value(w) == 2 and w[I.fixed_zero] == 0
    with pytest.raises(AssignmentDoesNotSatisfy):
        construct_witness(TWO, {"a": 1, "b": 1, "c": 0, "d": 0, "e": 0})


def test_extract_rejects_bad_vectors():
    I = reduce_sat(TWO)
    L = Layout(2)
    w = construct_witness(TWO, {"a": 1, "b": 0, "c": 0, "d": 0, "e": 0})
    bad = list(w)
    bad[L.x(1, 2)] = 1  # two quads in T_1
    assert not I.is_M_admissible(bad)
    with pytest.raises(PreconditionViolated):
        extract_assignment(TWO, bad, I)
    with pytest.raises(PreconditionViolated):
        extract_assignment(TWO, [0] * I.dim, I)


def _check_instance(C):
    expected = one_in_three_by_enumeration(C.clauses)
    assert (brute_force_sat(C) is None) == (expected is None)
    I = reduce_sat(C)
    d = decide_instance(I)
    assert d.verdict == (expected is not None)
    if d.verdict:
        a = extract_assignment(C, d.witness, I)
        assert C.satisfied_by(a)
        w = construct_witness(C, a)
        assert I.is_M_admissible(w) and w[I.fixed_zero] == 0 and I.chi_value(w) == len(C)
        assert extract_assignment(C, w, I) == a


@pytest.mark.parametrize("C", list(canonical_clause_sets(2)), ids=str)
def test_reduction_two_clauses(C):
    _check_instance(C)


def test_reduction_three_clauses():
    family = list(canonical_clause_sets(3))
    assert len(family) > 100
    for C in family:
        _check_instance(C)


def test_reduction_random_four_clauses():
    rng = random.Random(4)
    for _ in range(100):
        C = ClauseSet(tuple(tuple(rng.sample("abcdefgh", 3)) for _ in range(4)))
        _check_instance(C)


# -- concrete problem ----------------------------------------------------------

def test_concrete_pillow_is_true():
    T = triangular_pillow()
    for t in range(T.n):
        for i in range(3, 7):
            d = decide_concrete(T, 7 * t + i)
            assert d.verdict and d.witness[7 * t + i] == 0


def test_concrete_single_tetrahedron():
    T = Triangulation(1)
    assert all(decide_concrete(T, i).verdict for i in range(3, 7))
    with pytest.raises(BadCoordinate):
        decide_concrete(T, 0)


def test_concrete_false_case_with_oracle():
    # a closed one-vertex one-tetrahedron 3-manifold found by search
    T = Triangulation(1, [Gluing(0, 0, 0, 1, (1, 0, 2, 3)), Gluing(0, 2, 0, 3, (1, 2, 3, 0))])
    assert T.is_closed() and len(T.skeleton.vertices) == 1
    ms = matching_system(T)
    chi = euler_functional(T)
    for t in range(3, 7):
        assert not decide_concrete(T, t).verdict
        rays = cone_rays_by_support(7, ms.dense_rows(), zero_fixed={t})
        adm = filter_admissible(rays, quad_pattern(1))
        assert all(chi(r) <= 0 for r in adm)


# -- file formats --------------------------------------------------------------

def test_clause_and_instance_text():
    assert clauses_from_text(clauses_to_text(UNSAT4)) == UNSAT4
    I = reduce_sat(UNSAT4)
    J = instance_from_text(instance_to_text(I))
    assert J == I
    assert instance_to_text(J) == instance_to_text(I)
