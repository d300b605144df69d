from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import nonneg_rationals
from polycover.exact import ExactScalar, es
from polycover.local_models import (
    EvenOrderError, LocalModelError, beta_exclusion_threshold, exceeds, index_conventions_agree,
    indicial_edge, indicial_vertex, oneform_selection, scalar_selection, selection,
)

odd_m = st.integers(1, 40).map(lambda j: 2 * j + 1)


def test_scalar_menu_m3():
    menu = scalar_selection(3)
    (b,) = menu.branches
    assert b.ks(3) == [2, 5, 8]
    assert menu.min_n0 == Fraction(3, 2)


def test_scalar_menu_m5():
    (b,) = scalar_selection(5).branches
    assert b.residue == 3 and b.min_n0 == Fraction(5, 2)


@pytest.mark.parametrize("m", [2, 4, 10])
def test_even_order_is_rejected(m):
    with pytest.raises(EvenOrderError):
        scalar_selection(m)
    with pytest.raises(EvenOrderError):
        oneform_selection(m)


def test_small_or_bad_m():
    with pytest.raises(LocalModelError):
        scalar_selection(1)
    with pytest.raises(LocalModelError):
        selection(3, "two_form")


def test_oneform_menu_m3():
    closed, generic = oneform_selection(3).branches
    assert closed.tag == "closed" and closed.ks(2) == [1, 4] and closed.min_n0 == Fraction(1, 2)
    assert generic.tag == "generic" and generic.ks(2) == [3, 6] and generic.min_n0 == Fraction(5, 2)


def test_oneform_menu_m5():
    closed, _ = oneform_selection(5).branches
    assert closed.residue == 2 and closed.min_n0 == Fraction(3, 2)


def test_menu_reports_both_conventions():
    d = selection(3, "one-form").to_dict(2)
    assert d["branches"][0]["k"] == [1, 4] and d["branches"][0]["radial_k"] == [0, 3]


@given(odd_m)
def test_minimal_exponents_in_m(m):
    assert scalar_selection(m).min_n0 == Fraction(m, 2)
    closed = oneform_selection(m).branches[0]
    assert closed.min_n0 == Fraction(m - 2, 2)
    for menu in (scalar_selection(m), oneform_selection(m)):
        for b in menu.branches:
            assert all(x.denominator == 2 for x in b.n0_values(4))
    assert scalar_selection(m + 2).min_n0 > scalar_selection(m).min_n0


@pytest.mark.parametrize("m", [3, 5, 7, 9])
def test_index_conventions(m):
    assert index_conventions_agree(m, range(-5 * m, 8 * m))


@pytest.mark.parametrize("lam,pair", [(Fraction(3, 4), ("1/2", "3/2")), (2, ("1", "2")), (0, ("0", "1"))])
def test_indicial_edge_examples(lam, pair):
    p = indicial_edge(lam)
    assert p.exact and (p.mu.to_str(), p.mu_prime.to_str()) == pair


def test_indicial_vertex_examples():
    p = indicial_vertex(1)
    assert p.mu == ExactScalar(Fraction(-3, 2), Fraction(1, 2))
    assert exceeds(p.mu, Fraction(-2, 5))
    assert not exceeds(p.mu, Fraction(-38, 100))
    assert indicial_vertex(Fraction(3, 4)).mu == Fraction(-1, 2)
    assert indicial_vertex(2).mu == 0


def test_negative_lambda():
    with pytest.raises(LocalModelError):
        indicial_edge(-1)
    with pytest.raises(LocalModelError):
        indicial_vertex(-0.5)


def test_irrational_lambda_falls_back_to_float():
    p = indicial_edge(Fraction(1, 3))
    assert not p.exact
    mu, mup = p.floats()
    assert abs(mu * (mu + 1) - 1 / 3) < 1e-12 and abs(mup - mu - 1) < 1e-12


@given(nonneg_rationals)
def test_indicial_identities(lam):
    e, v = indicial_edge(lam), indicial_vertex(lam)
    if e.exact:
        assert e.mu * (e.mu + 1) == lam
        assert e.mu_prime - e.mu == 1
        assert (es(2) * v.mu + 3) ** 2 == 1 + 4 * es(lam)
        assert v.mu_prime - v.mu == 3
    mu, mup = e.floats()
    assert mu < mup and abs(mu * (mu + 1) - float(lam)) < 1e-9


@given(nonneg_rationals)
def test_beta_threshold_matches_mu_prime(lam):
    mup = indicial_edge(lam).mu_prime
    if isinstance(mup, ExactScalar):
        want = (mup - Fraction(3, 2)).sign() >= 0
    else:
        want = mup >= 1.5
    assert beta_exclusion_threshold(lam) == want == (lam >= Fraction(3, 4))


def test_beta_threshold_examples():
    assert beta_exclusion_threshold(Fraction(3, 4))
    assert not beta_exclusion_threshold(Fraction(1, 2))
    assert beta_exclusion_threshold(1)
