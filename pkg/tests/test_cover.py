import numpy as np
import pytest
from hypothesis import given, strategies as st

from polycover.cover import (
    CoverError, CoverObstruction, OddValencyError, build_cover, check_monodromy_invariance,
    edge_loop_decomposition, fixed_circle_avoids_gamma, fixed_sheet_lift, h1_rank, induced_bundle_sign,
    lift_group_is_product, lift_order, lift_symmetry, monodromy_character, odd_order_lift, verify_splitting,
)
from polycover.exact import ExactMatrix4
from polycover.polytopes import PolytopeKind as K, get_polytope, radial_graph
from polycover.symmetry import AD_Q, cell8_generators, permutation_of, rotation_group

COVER_KINDS = [K.CELL5, K.CELL8, K.CELL24, K.CELL600]


def element(kind, matrix):
    g = rotation_group(kind)
    return g, g.index_of(permutation_of(matrix, g.poly))


def test_h1_rank():
    assert h1_rank(radial_graph(get_polytope(K.CELL5))) == 6
    assert h1_rank((3, [(0, 1), (1, 2), (2, 0)])) == 1
    assert h1_rank(radial_graph(get_polytope(K.CELL600))) == 601
    with pytest.raises(CoverError):
        h1_rank((4, [(0, 1), (2, 3)]))


def test_triangle_is_one_loop():
    dec = edge_loop_decomposition((3, [(0, 1), (1, 2), (2, 0)]))
    assert [len(l) for l in dec.edge_loops] == [3]


def test_odd_valency_is_rejected_with_vertex():
    with pytest.raises(OddValencyError) as info:
        edge_loop_decomposition((4, [(0, 1), (0, 2), (0, 3), (1, 2)]))
    assert info.value.vertex == 0 and info.value.valency == 3


@pytest.mark.parametrize("kind", list(K))
def test_edge_loops_cover_each_edge_once(kind):
    gamma = radial_graph(get_polytope(kind))
    dec = edge_loop_decomposition(gamma)
    used = sorted(k for loop in dec.edge_loops for k in loop)
    assert used == list(range(gamma.n_edges))
    mu = monodromy_character(gamma)
    assert all(mu.meridian(k) == -1 for k in range(gamma.n_edges))
    assert np.all(dec.chain(gamma.n_edges) == 1)


@given(st.lists(st.integers(2, 7), min_size=1, max_size=5))
def test_edge_loops_on_cycle_unions(lengths):
    # a bouquet of cycles through vertex 0 has all valencies even
    edges, n = [], 1
    for L in lengths:
        ring = [0] + list(range(n, n + L - 1))
        n += L - 1
        edges += [(ring[i], ring[(i + 1) % L]) for i in range(L)]
    dec = edge_loop_decomposition((n, edges))
    assert sorted(k for loop in dec.edge_loops for k in loop) == list(range(len(edges)))
    for loop, eloop in zip(dec.loops, dec.edge_loops):
        assert loop[0] == loop[-1] and len(eloop) == len(loop) - 1


@pytest.mark.parametrize("kind", COVER_KINDS)
def test_cover_holonomy(kind):
    cov = build_cover(get_polytope(kind))
    assert set(cov.holonomy.values()) == {-1}
    assert len(cov.holonomy) == len(get_polytope(kind).edges)


def test_cell16_obstruction():
    with pytest.raises(CoverObstruction) as info:
        build_cover(get_polytope(K.CELL16))
    assert info.value.r == 4 and info.value.holonomy == 1


def test_monodromy_invariance():
    g, q = element(K.CELL5, AD_Q.matrix)
    assert check_monodromy_invariance(g, q)
    assert check_monodromy_invariance(g, g.identity_index())
    g600 = rotation_group(K.CELL600)
    assert all(check_monodromy_invariance(g600, i) for i in range(0, g600.order, 7))


def test_identity_lifts():
    cov = build_cover(get_polytope(K.CELL5))
    g = rotation_group(K.CELL5)
    a, b = lift_symmetry(cov, g, g.identity_index())
    assert a.is_identity() and b.is_deck()
    assert lift_order(b) == 2
    assert induced_bundle_sign(a) == 1 and induced_bundle_sign(b) == -1


def test_cell5_ad_q_order_six_lift():
    g, q = element(K.CELL5, AD_Q.matrix)
    cov = build_cover(g.poly)
    six = [l for l in lift_symmetry(cov, g, q) if l.constant_sign() == -1][0]
    assert lift_order(six) == 6
    assert six.sheet_cycles(False) == [["T1+", "T1-"], ["T2+", "T2-"],
                                       ["T3+", "T4-", "T5+", "T3-", "T4+", "T5-"]]
    assert six.power(3).is_deck()
    assert lift_order(odd_order_lift(cov, g, q)) == 3


def test_cell8_ad_q_order_three_lift():
    g, q = element(K.CELL8, AD_Q.matrix)
    cov = build_cover(g.poly)
    three = [l for l in lift_symmetry(cov, g, q) if l.constant_sign() == 1][0]
    assert lift_order(three) == 3
    cyc = three.sheet_cycles(True)
    assert sorted(len(c) for c in cyc) == [1, 1, 1, 1, 3, 3, 3, 3]
    fixed = sorted(c[0] for c in cyc if len(c) == 1)
    assert fixed == ["(C1+)+", "(C1+)-", "(C1-)+", "(C1-)-"]


def test_cell8_involution_has_fixed_sheet_lift_of_order_two():
    s1, s2, _ = cell8_generators()
    g, e = element(K.CELL8, s1.matrix @ s2.matrix)
    cov = build_cover(g.poly)
    lift, wit = fixed_sheet_lift(cov, g, e)
    assert lift_order(lift) == 2


@pytest.mark.parametrize("kind", [K.CELL5, K.CELL8, K.CELL24])
def test_lift_pairs_for_every_element(kind):
    g = rotation_group(kind)
    cov = build_cover(g.poly)
    for e in range(g.order):
        a, b = lift_symmetry(cov, g, e)
        assert b.facet_perm == a.facet_perm and np.all(b.signs == -a.signs)
        assert a.commutes_with_deck() and b.commutes_with_deck()
        m = int(g.orders[e])
        assert {a.order(), b.order()} == ({m, 2 * m} if m % 2 else {m})


@pytest.mark.parametrize("kind", [K.CELL5, K.CELL8])
def test_bundle_sign_is_multiplicative(kind):
    g = rotation_group(kind)
    cov = build_cover(g.poly)
    lifts = [lift_symmetry(cov, g, i)[0] for i in range(0, g.order, max(1, g.order // 12))]
    for a in lifts:
        for b in lifts:
            assert induced_bundle_sign(a @ b) == induced_bundle_sign(a) * induced_bundle_sign(b)
        assert induced_bundle_sign(a.with_deck()) == -induced_bundle_sign(a)


def test_fixed_circle_certificates():
    s1, s2, _ = cell8_generators()
    g, e = element(K.CELL8, s1.matrix @ s2.matrix)
    assert fixed_circle_avoids_gamma(g, e).ok
    g, e = element(K.CELL8, -ExactMatrix4.identity())
    with pytest.raises(CoverError):
        fixed_circle_avoids_gamma(g, e)


def test_cell600_involutions_have_certificates():
    g = rotation_group(K.CELL600)
    minus = -ExactMatrix4.identity()
    invols = [int(i) for i in np.nonzero(g.orders == 2)[0]][:20]
    for i in invols:
        if g.matrix(i) != minus:
            assert fixed_circle_avoids_gamma(g, i).ok


@pytest.mark.parametrize("kind", COVER_KINDS)
def test_model_mode_splits(kind):
    led = verify_splitting(kind, "model")
    assert led.verdict == "split"
    assert all(r.sign == 1 and r.downstairs_identity for r in led.relations)


@pytest.mark.parametrize("kind", COVER_KINDS + [K.CELL120])
def test_certificate_mode_splits(kind):
    assert verify_splitting(kind, "certificate").verdict == "split"


def test_a5_presentation_needs_deck_repair():
    led = verify_splitting(K.CELL5, "model", presentation="a5")
    assert led.verdict == "split"
    assert [r.word for r in led.relations] == ["r^2", "s^3", "(sr)^5"]
    assert any(r.note for r in led.relations)


def test_a5_presentation_only_for_cell5():
    with pytest.raises(CoverError):
        verify_splitting(K.CELL8, "model", presentation="a5")


def test_unknown_mode():
    with pytest.raises(CoverError):
        verify_splitting(K.CELL5, "guess")


@pytest.mark.parametrize("kind", [K.CELL5, K.CELL8, K.CELL24])
def test_lift_group_is_product(kind):
    led = verify_splitting(kind, "model")
    g = rotation_group(kind)
    assert lift_group_is_product(build_cover(g.poly), g, led.lifts)


def test_ledger_serializes():
    d = verify_splitting(K.CELL8, "model").to_dict()
    assert d["verdict"] == "split" and len(d["relations"]) == 6 and "lifts" not in d
