import itertools

import pytest

from polycover.exact import PHI_INV, ExactScalar, es, norm2, vec_sub
from polycover.polytopes import (
    FACET_SIZES, PolytopeError, PolytopeKind, build_polytope, enumerate_facets,
    euler_characteristic_check, facet_adjacency, facet_distance_values, get_polytope,
    octahedra_from_edge, radial_graph, valency_profile,
)

K = PolytopeKind
ENUMERATED = [K.CELL5, K.CELL8, K.CELL24, K.CELL600]


def test_kind_parsing():
    assert K.parse("5-cell") is K.CELL5
    assert K.parse("600") is K.CELL600
    assert K.parse("cell_24") is K.CELL24
    with pytest.raises(PolytopeError):
        K.parse("7-cell")


def test_cell5_pairwise_distance():
    p = get_polytope(K.CELL5)
    assert p.n_vertices == 5
    for u, v in itertools.combinations(p.vertices, 2):
        assert norm2(vec_sub(u, v)) == es("5/2")


def test_cell120_vertex_norms():
    p = get_polytope(K.CELL120)
    assert p.n_vertices == 600
    assert all(norm2(v) == 8 for v in p.vertices)


def test_cell600_families():
    p = get_polytope(K.CELL600)
    assert p.n_vertices == 120
    axes = sum(1 for v in p.vertices if sum(1 for c in v if c) == 1)
    halves = sum(1 for v in p.vertices if all(abs(c.to_float()) == 0.5 for c in v))
    assert (axes, halves, p.n_vertices - axes - halves) == (8, 16, 96)


@pytest.mark.parametrize("kind,edges", [(K.CELL8, 32), (K.CELL600, 720), (K.CELL16, 24), (K.CELL120, 1200)])
def test_edge_counts(kind, edges):
    assert len(get_polytope(kind).edges) == edges


def test_cell24_edges_have_unit_length():
    p = get_polytope(K.CELL24)
    assert all(norm2(vec_sub(p.vertices[a], p.vertices[b])) == 1 for a, b in p.edges)


@pytest.mark.parametrize("kind,val", [(K.CELL5, 4), (K.CELL8, 4), (K.CELL16, 6), (K.CELL24, 8),
                                      (K.CELL120, 4), (K.CELL600, 12)])
def test_valency_and_handshake(kind, val):
    p = get_polytope(kind)
    per_vertex, uniform = valency_profile(p)
    assert uniform == val
    assert sum(per_vertex) == 2 * len(p.edges)


@pytest.mark.parametrize("kind", list(K))
def test_vertices_on_sphere(kind):
    p = get_polytope(kind)
    assert all(norm2(v) == p.vertex_norm_sq for v in p.vertices)


def test_vertex_ordering_is_deterministic():
    a = build_polytope(K.CELL24)
    b = build_polytope(K.CELL24)
    assert a.vertices == b.vertices and a.edges == b.edges


def test_cell600_edge_length():
    assert get_polytope(K.CELL600).edge_length_sq == PHI_INV * PHI_INV


def test_cell120_edge_length():
    assert get_polytope(K.CELL120).edge_length_sq == (es(3) - ExactScalar(0, 1)) ** 2


@pytest.mark.parametrize("kind,count", [(K.CELL5, 5), (K.CELL8, 8), (K.CELL24, 24), (K.CELL600, 600)])
def test_facet_counts(kind, count):
    assert len(get_polytope(kind).facets) == count


def test_cell120_facets_are_unsupported():
    with pytest.raises(PolytopeError):
        enumerate_facets(build_polytope(K.CELL120, with_facets=False))


def test_cell24_facet_from_common_neighbours():
    p = get_polytope(K.CELL24)
    assert (0, 6, 8, 10, 12, 14) in octahedra_from_edge(p, 0, 8)


@pytest.mark.parametrize("kind", ENUMERATED)
def test_facets_are_vertex_regular(kind):
    p = get_polytope(kind)
    size = FACET_SIZES[p.schlafli[:2]]
    allowed = None
    for f in p.facets:
        assert len(f) == size
        vals = facet_distance_values(p, f)
        allowed = allowed or vals
        assert vals == allowed
        assert p.edge_length_sq in vals


@pytest.mark.parametrize("kind", ENUMERATED)
def test_euler_characteristic(kind):
    assert euler_characteristic_check(get_polytope(kind))["chi"] == 0


def test_cell5_dual_graph_is_complete():
    adj = facet_adjacency(get_polytope(K.CELL5))
    assert len(adj.pairs) == 10


def test_cell8_facets_meet_iff_different_axes():
    from polycover.cover import facet_label

    p = get_polytope(K.CELL8)
    adj = facet_adjacency(p)
    for a in range(8):
        for b in range(a + 1, 8):
            same_axis = facet_label(p, a)[1] == facet_label(p, b)[1]
            assert (b in adj.neighbors[a]) == (not same_axis)


@pytest.mark.parametrize("kind", ENUMERATED)
def test_edge_cycles_have_length_r(kind):
    p = get_polytope(kind)
    adj = facet_adjacency(p)
    r = p.schlafli[2]
    assert len(adj.edge_cycles) == len(p.edges)
    assert all(len(c) == r for c in adj.edge_cycles.values())


@pytest.mark.parametrize("kind,v,e,val", [(K.CELL5, 5, 10, 4), (K.CELL16, 8, 24, 6), (K.CELL120, 600, 1200, 4)])
def test_radial_graph(kind, v, e, val):
    g = radial_graph(get_polytope(kind))
    assert (g.n_vertices, g.n_edges) == (v, e)
    assert set(g.valency) == {val}
    assert g.is_connected()
