import numpy as np
import pytest

from polycover.cover import facet_label
from polycover.exact import ExactMatrix4, Q_ONE, Quaternion, es, matrix_from_pair
from polycover.polytopes import PolytopeKind as K, get_polytope
from polycover.symmetry import (
    AD_P, AD_Q, GROUP_ORDERS, MINUS_ID, Rotor, SymmetryError, census_edge_fixing, cell8_generators,
    check_relations_downstairs, cycles_of, edge_stabilizer, element_order, facet_permutation, fixed_plane,
    generate_group, permutation_of, plane_edge_partition, presentation_for, presentation_generates,
    realize_from_vertex_permutation, rotation_group, same_span, transitivity_report, vertex_cycles,
)

SPLIT = [K.CELL5, K.CELL8, K.CELL24, K.CELL120, K.CELL600]


@pytest.mark.parametrize("kind", SPLIT + [K.CELL16])
def test_group_orders(kind):
    assert rotation_group(kind).order == GROUP_ORDERS[kind]


def test_cell8_generators_close_to_192():
    assert generate_group(cell8_generators(), get_polytope(K.CELL8)).order == 192


def test_cell8_first_generator_is_quarter_turn():
    s1 = cell8_generators()[0].matrix
    assert s1.apply([es(1), es(2), es(3), es(4)]) == (es(-2), es(1), es(3), es(4))


def test_generator_must_preserve_vertices():
    with pytest.raises(SymmetryError):
        generate_group([AD_P], get_polytope(K.CELL8))


def test_closure_cap():
    with pytest.raises(SymmetryError):
        generate_group(rotation_group(K.CELL24).generators, get_polytope(K.CELL24), cap=100)


def test_cell5_three_cycle_is_ad_q():
    r = realize_from_vertex_permutation(get_polytope(K.CELL5), [0, 1, 3, 4, 2])
    assert r.matrix == AD_Q.matrix


def test_identity_permutation_realizes_identity():
    assert realize_from_vertex_permutation(get_polytope(K.CELL5), list(range(5))).matrix.is_identity()


def test_transposition_is_rejected():
    with pytest.raises(SymmetryError):
        realize_from_vertex_permutation(get_polytope(K.CELL5), [1, 0, 2, 3, 4])


def test_element_orders():
    assert element_order(AD_Q) == 3
    assert element_order(AD_P) == 5
    assert element_order(Rotor(matrix_from_pair(-Q_ONE, -Q_ONE))) == 1


def test_fixed_planes():
    f = fixed_plane(AD_Q)
    assert f.tag == "plane" and same_span(f.basis, [(1, 0, 0, 0), (0, 1, 1, 1)])
    assert fixed_plane(MINUS_ID).tag == "empty-on-sphere"
    g = rotation_group(K.CELL8)
    s1, s2, _ = cell8_generators()
    f12 = fixed_plane(s1.matrix @ s2.matrix)
    assert same_span(f12.basis, [(0, 1, 1, 0), (0, 0, 0, 1)]) or same_span(f12.basis, [(0, 1, 1, 0), (1, 0, 0, 0)])
    assert all(v[0] == 0 or v[1] == v[2] for v in f12.basis)


def test_cell8_sigma12_fixed_plane_equations():
    s1, s2, _ = cell8_generators()
    basis = fixed_plane(s1.matrix @ s2.matrix).basis
    assert len(basis) == 2
    assert all(v[0] == 0 and v[1] == v[2] for v in basis)


@pytest.mark.parametrize("kind,edge,r", [(K.CELL5, (0, 1), 3), (K.CELL24, None, 3), (K.CELL600, None, 5)])
def test_edge_stabilizers_are_cyclic(kind, edge, r):
    g = rotation_group(kind)
    edge = edge or g.poly.edges[0]
    st = edge_stabilizer(g, edge)
    assert st.order == r and len(st.elements) == r


def test_cell5_edge_stabilizer_generated_by_ad_q():
    g = rotation_group(K.CELL5)
    st = edge_stabilizer(g, (0, 1))
    q = g.index_of(permutation_of(AD_Q.matrix, g.poly))
    assert q in st.elements


@pytest.mark.parametrize("kind,m,count", [(K.CELL5, 3, 20), (K.CELL8, 3, 32), (K.CELL24, 3, 32),
                                          (K.CELL120, 3, 400), (K.CELL600, 5, 288)])
def test_edge_fixing_census(kind, m, count):
    assert census_edge_fixing(rotation_group(kind), m) == count


@pytest.mark.parametrize("kind,planes,size,structure", [(K.CELL24, 16, 6, "closed-polygon"),
                                                        (K.CELL120, 200, 6, "disjoint-edges"),
                                                        (K.CELL600, 72, 10, "closed-polygon")])
def test_plane_partitions(kind, planes, size, structure):
    part = plane_edge_partition(get_polytope(kind))
    assert (part.plane_count, part.polygon_sizes, part.structure) == (planes, [size], structure)


@pytest.mark.parametrize("kind,m", [(K.CELL24, 3), (K.CELL120, 3), (K.CELL600, 5)])
def test_census_equals_planes_times_rotations(kind, m):
    part = plane_edge_partition(get_polytope(kind))
    assert census_edge_fixing(rotation_group(kind), m) == part.plane_count * (m - 1)


def test_ad_q_on_cell24_vertices():
    p = get_polytope(K.CELL24)
    cyc = vertex_cycles(p, permutation_of(AD_Q.matrix, p))
    assert cyc == [(3, 5, 7), (4, 6, 8), (10, 13, 11), (12, 14, 15), (18, 21, 19), (20, 22, 23)]
    fixed = [c[0] for c in cycles_of(permutation_of(AD_Q.matrix, p)) if len(c) == 1]
    assert fixed == [1, 2, 9, 16, 17, 24]


def test_ad_q_on_cell8_facets():
    p = get_polytope(K.CELL8)
    fp = facet_permutation(p, permutation_of(AD_Q.matrix, p))
    labels = [tuple(facet_label(p, f - 1) for f in c) for c in cycles_of(fp)]
    assert labels == [("C1+",), ("C1-",), ("C2+", "C3+", "C4+"), ("C2-", "C3-", "C4-")]


@pytest.mark.parametrize("kind", SPLIT + [K.CELL16])
def test_orbit_stabilizer(kind):
    g = rotation_group(kind)
    tr = transitivity_report(g)
    assert tr.vertex_transitive and tr.edge_transitive
    assert g.order == tr.edge_orbit_size * tr.edge_setwise_stabilizer


@pytest.mark.parametrize("kind", SPLIT)
def test_edge_fixing_elements_fix_the_edge_plane(kind):
    g = rotation_group(kind)
    mask = g.edge_fixing_mask()
    ident = g.identity_index()
    rng = np.random.default_rng(0)
    rows = [i for i in np.nonzero(mask.any(axis=1))[0] if i != ident]
    for i in rng.choice(rows, size=min(12, len(rows)), replace=False):
        e = int(np.nonzero(mask[i])[0][0])
        a, b = g.poly.edges[e]
        plane = fixed_plane(g.matrix(int(i)))
        assert plane.tag == "plane"
        assert same_span(plane.basis, [g.poly.vertices[a], g.poly.vertices[b]])


@pytest.mark.parametrize("kind", [K.CELL5, K.CELL8, K.CELL24])
def test_involutions_fix_planes(kind):
    g = rotation_group(kind)
    minus = -ExactMatrix4.identity()
    for i in np.nonzero(g.orders == 2)[0]:
        m = g.matrix(int(i))
        if m != minus:
            assert fixed_plane(m).dim == 2


@pytest.mark.parametrize("kind", SPLIT)
def test_presentations_hold_downstairs(kind):
    g = rotation_group(kind)
    pres = presentation_for(kind)
    assert all(ok for _, ok in check_relations_downstairs(g, pres))
    assert presentation_generates(g, pres)
