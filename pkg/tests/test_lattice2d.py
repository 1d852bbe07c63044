from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import OCTAGON, P1xP1, P2, P112, P113, P116
from fanoq import kernels
from fanoq.errors import FanoqError
from fanoq.lattice2d import (FanoPolygon, Vec, canonical_form, cone_data, convex_hull,
                             cyclic_class_key, det, dual_degree, dual_polygon,
                             enumerate_fano_polygons, is_primitive, maximal_cones, mutate_polygon,
                             mutation_factor, normalized_volume, pair, polygons_equivalent,
                             primitive, primitive_points, standard_refinement)



def _unimodular(steps, flip):
    # product of elementary shears, optionally times a reflection
    a, b, c, d = 1, 0, 0, 1
    for k, lower in steps:
        if lower:
            c, d = c + k * a, d + k * b
        else:
            a, b = a + k * c, b + k * d
    if flip:
        c, d = -c, -d
    return (a, b, c, d)


UNIMODULAR = st.builds(_unimodular, st.lists(st.tuples(st.integers(-3, 3), st.booleans()),
                                              max_size=4), st.booleans())


def as_matrix(t):
    return ((t[0], t[1]), (t[2], t[3]))


@pytest.fixture(scope="module")
def small_polygons(corpus2):
    return corpus2


# -- vectors and polygons ---------------------------------------------------

def test_primitive_vectors():
    assert is_primitive((3, -2)) and is_primitive((0, 1))
    assert not is_primitive((0, 0)) and not is_primitive((2, 4))
    assert primitive((4, -6)) == Vec(2, -3)
    with pytest.raises(FanoqError):
        primitive((0, 0))


def test_det_orientation_and_bilinearity():
    assert det((1, 0), (0, 1)) == 1
    assert det((1, 0), (0, 1), -1) == -1
    assert det((2, 3), (5, 7)) == -det((5, 7), (2, 3))


@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)),
       st.tuples(st.integers(-9, 9), st.integers(-9, 9)),
       st.tuples(st.integers(-9, 9), st.integers(-9, 9)), st.integers(-5, 5))
def test_det_is_bilinear(u, v, w, k):
    s = (u[0] + k * w[0], u[1] + k * w[1])
    assert det(s, v) == det(u, v) + k * det(w, v)
    assert det(u, u) == 0


def test_polygon_validation():
    with pytest.raises(FanoqError):
        FanoPolygon.from_vertices([(1, 0), (0, 1)])
    with pytest.raises(FanoqError):
        FanoPolygon.from_vertices([(2, 0), (0, 1), (-1, -1)])  # imprimitive
    with pytest.raises(FanoqError):
        FanoPolygon.from_vertices([(1, 0), (0, 1), (1, 1)])  # origin outside
    with pytest.raises(FanoqError):
        FanoPolygon.from_vertices([(3, 2), (1, 1), (0, 1), (-1, 0), (0, -1)])  # not convex
    with pytest.raises(FanoqError):
        FanoPolygon(((0, 1), (1, 0), (-1, -1)))  # clockwise
    with pytest.raises(FanoqError):
        FanoPolygon.from_vertices([(1, 0), (0, 1), (-1, 0), (0, -1), (1, 0)])  # repeated


def test_star_polygon_rejected():
    # convex vertices listed in a self-crossing order
    with pytest.raises(FanoqError):
        FanoPolygon(((1, 0), (-1, 1), (0, -1), (1, 1), (-1, 0)))


def test_loader_resorts_and_defaults_orientation():
    P = FanoPolygon.from_json({"vertices": [[0, 1], [-1, -1], [1, 0]]})
    assert P.orientation == 1
    assert P.vertices == (Vec(0, 1), Vec(-1, -1), Vec(1, 0))
    assert FanoPolygon.from_json(P.to_json()) == P
    with pytest.raises(FanoqError):
        FanoPolygon.from_json({"verts": []})


def test_negative_orientation_polygon():
    Q = P116.reoriented()
    assert Q.orientation == -1
    assert normalized_volume(Q) == normalized_volume(P116)
    assert sorted((c.w, c.ell) for c in maximal_cones(Q)) == sorted(
        (c.w, c.ell) for c in maximal_cones(P116))


def test_convex_hull_with_fractions():
    pts = [(0, 0), (2, 0), (Fraction(1, 2), Fraction(1, 2)), (0, 2), (1, 1)]
    assert convex_hull(pts) == [(0, 0), (2, 0), (0, 2)]


# -- cones --------------------------------------------------------------------

def test_cone_examples():
    c = cone_data((2, -1), (0, 1))
    assert (c.w, c.ell, c.r, c.type_key) == (2, 1, 2, (2, 1))
    c = cone_data((1, 0), (0, 1))
    assert (c.w, c.ell, c.m) == (1, 1, (-1, -1))
    assert c.kind == "T"
    # the P(1,1,6) cone, positively ordered
    c = cone_data((-1, -6), (1, 0))
    assert (c.w, c.ell, c.m, c.kind) == (2, 3, (-3, 1), "R")
    assert oracles.brute_normal((-1, -6), (1, 0)) == ((-3, 1), 3)


def test_cone_errors():
    with pytest.raises(FanoqError):
        cone_data((1, 0), (-1, -6))  # negatively ordered
    with pytest.raises(FanoqError):
        cone_data((2, 0), (0, 1))
    with pytest.raises(FanoqError):
        cone_data((1, 0), (-1, 0))


primitive_pair = st.tuples(st.integers(-7, 7), st.integers(-7, 7), st.integers(-7, 7),
                           st.integers(-7, 7)).filter(
    lambda t: gcd(t[0], t[1]) == 1 and gcd(t[2], t[3]) == 1 and t[0] * t[3] - t[1] * t[2] > 0)


@given(primitive_pair)
def test_cone_data_against_brute_force(t):
    u, v = (t[0], t[1]), (t[2], t[3])
    c = cone_data(u, v)
    m, ell = oracles.brute_normal(u, v)
    assert (c.m, c.ell) == (m, ell)
    assert c.w == oracles.lattice_length(u, v)
    assert -pair(c.m, u) == -pair(c.m, v) == c.ell
    assert c.w * c.ell == c.r == det(u, v)
    r, admissible = oracles.brute_cyclic_type(u, v)
    assert c.r == r and c.a in admissible
    if r > 1:
        assert gcd(c.a, r) == 1
        assert {cyclic_class_key(r, a) for a in admissible} == {c.type_key}


def test_cyclic_class_key_identifies_inverse():
    assert cyclic_class_key(7, 3) == cyclic_class_key(7, 5) == (7, 3)
    assert cyclic_class_key(1, 0) == (1, 0)


# -- refinement, volume, dual ----------------------------------------------------

def test_refinement_examples():
    ref = standard_refinement(P112)
    assert len(ref.cones) == 4
    rays = {tuple(c.u) for c in ref.cones}
    assert rays == {(-1, 0), (2, -1), (1, 0), (0, 1)}
    assert all(c.is_t for c in ref.cones)
    assert [tuple(c.m) for c in standard_refinement(P2).cones] == [
        tuple(c.m) for c in maximal_cones(P2)]
    ref = standard_refinement(P116)
    assert sorted((c.w, c.ell, c.kind) for c in ref.cones) == [(1, 1, "T"), (1, 1, "T"), (2, 3, "R")]


def test_refinement_placement_invariance(small_polygons):
    for P in small_polygons:
        a = standard_refinement(P, "last")
        b = standard_refinement(P, "first")
        assert sorted((c.w, c.ell, c.kind) for c in a.cones) == sorted(
            (c.w, c.ell, c.kind) for c in b.cones)
        for c in a.cones:
            assert -pair(c.m, c.u) == -pair(c.m, c.v) == c.ell
            assert det(c.u, c.v) == c.w * c.ell
        # consecutive cones share a ray
        cs = a.cones
        assert all(cs[i].v == cs[(i + 1) % len(cs)].u for i in range(len(cs)))


def test_refinement_division():
    P = FanoPolygon.from_vertices([(-1, -1), (5, -1), (-1, 2)])
    for c in maximal_cones(P):
        sub = [k for k, p in zip(standard_refinement(P).cones, standard_refinement(P).parents)
               if maximal_cones(P).index(c) == p]
        alpha, rho = divmod(c.w, c.ell)
        assert sum(k.is_t for k in sub) == alpha
        assert sum(not k.is_t for k in sub) == (1 if rho else 0)


def test_volume_examples():
    assert normalized_volume(FanoPolygon.from_vertices([(0, -1), (-1, -1), (1, 4)])) == 5
    assert normalized_volume(P2) == 3
    assert normalized_volume(P112) == 4


def test_volume_against_pick(small_polygons):
    for P in small_polygons:
        assert normalized_volume(P) == oracles.pick_volume(P.vertices) == oracles.shoelace2(P.vertices)


def test_dual_degree_examples():
    assert dual_degree(P112) == 8
    assert dual_degree(P116) == Fraction(32, 3)
    assert dual_degree(P2) == 9


def test_dual_degree_against_half_planes(small_polygons):
    for P in small_polygons:
        assert dual_degree(P) == oracles.dual_degree_oracle(P.vertices)
        assert sorted(dual_polygon(P)) == sorted(oracles.brute_dual_vertices(P.vertices))


@given(UNIMODULAR)
def test_dual_degree_unimodular_invariance(t):
    for P in (P116, P113, OCTAGON):
        Q = P.transform(as_matrix(t))
        assert dual_degree(Q) == dual_degree(P)
        assert normalized_volume(Q) == normalized_volume(P)
        assert polygons_equivalent(Q, P)


# -- mutation -----------------------------------------------------------------------

def test_mutation_p1xp1_gives_p112():
    Q = mutate_polygon(P1xP1, (1, 1))
    assert polygons_equivalent(Q, P112)


def test_mutation_p116_smooth_normal():
    m = next(c.m for c in maximal_cones(P116) if c.is_t)
    Q = mutate_polygon(P116, m)
    # the construction gives volume 56, with degree and content unchanged
    assert normalized_volume(Q) == 56
    assert dual_degree(Q) == dual_degree(P116)
    f = mutation_factor(P116, m)
    verts, _ = oracles.mutation_by_dual_map(P116.vertices, m, f)
    assert polygons_equivalent(Q, FanoPolygon.from_points(verts))


def test_mutation_matches_dual_map(small_polygons):
    count = 0
    for P in small_polygons:
        for c in maximal_cones(P):
            if c.w < c.ell:
                continue
            Q = mutate_polygon(P, c.m)
            verts, raw = oracles.mutation_by_dual_map(P.vertices, c.m, mutation_factor(P, c.m))
            assert len(verts) == len(raw)  # the polar is a lattice polygon
            assert set(Q.vertices) == set(verts)
            assert polygons_equivalent(mutate_polygon(Q, -c.m), P)
            count += 1
    assert count > 300


def test_mutation_errors():
    with pytest.raises(FanoqError):
        mutate_polygon(P116, (-3, 1))  # R-cone normal
    with pytest.raises(FanoqError):
        mutate_polygon(P116, (5, 7))


# -- equivalence and enumeration ------------------------------------------------------

def test_equivalence_examples():
    A = FanoPolygon.from_vertices([(0, -1), (-1, -1), (1, 4)])
    B = FanoPolygon.from_vertices([(0, -1), (1, -1), (-3, 4)])
    assert polygons_equivalent(A, B, "GL")
    assert polygons_equivalent(P112, P112)
    assert not polygons_equivalent(P2, P112)
    assert polygons_equivalent(A, P113)


def test_sl_versus_gl():
    # a polygon that is not equivalent to its mirror image under SL2(Z)
    P = FanoPolygon.from_vertices([(1, 0), (1, 2), (-1, 1), (-1, -2)])
    M = P.transform(((1, 0), (0, -1))).reoriented()
    assert polygons_equivalent(P, M, "GL")
    assert not polygons_equivalent(P, M, "SL")
    assert not oracles.brute_equivalent(P.vertices, M.vertices, allow_reflection=False)


@given(UNIMODULAR)
def test_canonical_form_is_invariant(t):
    for P in (P113, OCTAGON, P112):
        Q = P.transform(as_matrix(t))
        assert canonical_form(Q) == canonical_form(P)
        sl_det = t[0] * t[3] - t[1] * t[2]
        if sl_det == 1:
            assert canonical_form(Q, "SL") == canonical_form(P, "SL")


def test_canonical_form_against_search(corpus2):
    sample = corpus2[::9]
    for i, P in enumerate(sample):
        for Q in sample[i:i + 4]:
            for group, refl in (("GL", True), ("SL", False)):
                assert polygons_equivalent(P, Q, group) == oracles.brute_equivalent(
                    P.vertices, Q.vertices, refl)


@pytest.mark.parametrize("bound", [1, 2])
def test_enumeration_against_subset_oracle(bound):
    polys = list(enumerate_fano_polygons(bound))
    sets = oracles.brute_fano_vertex_sets(bound)
    assert len(polys) == oracles.count_gl_classes(sets)
    keys = {oracles.gl_class_key(s) for s in sets}
    assert {oracles.gl_class_key(P.vertices) for P in polys} == keys
    # the raw search finds exactly the oracle's vertex sets
    pts = [tuple(p) for p in primitive_points(bound)]
    cycles = kernels.fano_cycles(pts)
    assert {frozenset(pts[i] for i in c) for c in cycles} == set(sets)
    assert len(cycles) == len(sets)


def test_enumeration_bound1():
    polys = list(enumerate_fano_polygons(1))
    assert len(polys) == 11
    assert any(polygons_equivalent(P, P2) for P in polys)
    # one interior point: every polygon in the unit box is reflexive
    assert all(c.ell == 1 for P in polys for c in maximal_cones(P))


def test_enumeration_counts_and_order(corpus2):
    assert len(corpus2) == 156
    assert len(list(enumerate_fano_polygons(2, "SL"))) == 270
    keys = [(P.n, normalized_volume(P)) for P in corpus2]
    assert keys == sorted(keys)
    assert len({canonical_form(P) for P in corpus2}) == len(corpus2)
    assert list(enumerate_fano_polygons(2)) == corpus2
    with pytest.raises(FanoqError):
        list(enumerate_fano_polygons(0))


def test_enumeration_bound3(corpus3):
    # frozen after an independent recount by tests/oracles.py
    assert len(corpus3) == 13660
    assert len({canonical_form(P) for P in corpus3}) == 13660
