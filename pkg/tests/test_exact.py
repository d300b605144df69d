from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from conftest import nonzero_scalars, quaternions, scalars
from polycover.encoded import EncodedArray, gram
from polycover.exact import (
    HALF, ONE, P_ICOSIAN, PHI, PHI_INV, QI, QJ, QK, Q_HURWITZ, Q_ONE,
    ExactArithmeticError, ExactMatrix4, ExactScalar, Quaternion, ad_action, es,
    matrix_from_pair, nullspace,
)

SQRT5 = ExactScalar(0, 1)


def test_phi_minimal_polynomial():
    assert PHI * PHI == PHI + 1


def test_sqrt5_squared():
    assert SQRT5 * SQRT5 == 5


def test_phi_inverse():
    assert PHI.inv() == PHI - 1 == PHI_INV


def test_zero_inverse_is_an_error():
    with pytest.raises(ZeroDivisionError):
        ExactScalar(0).inv()


def test_sign_of_mixed_terms():
    assert (PHI_INV - Fraction(618, 1000)).sign() == 1
    assert (PHI_INV - Fraction(619, 1000)).sign() == -1
    assert es(3) - SQRT5 > 0


@given(scalars, scalars, scalars)
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * (y * z) == (x * y) * z
    assert x - x == 0


@given(nonzero_scalars)
def test_inverse(x):
    assert x * x.inv() == ONE


@given(scalars, scalars)
def test_order_is_trichotomous_and_matches_floats(x, y):
    lt, eq, gt = x < y, x == y, y < x
    assert lt + eq + gt == 1
    if abs(x.to_float() - y.to_float()) > 1e-9:
        assert lt == (x.to_float() < y.to_float())


@given(scalars)
def test_string_roundtrip(x):
    assert ExactScalar.parse(x.to_str()) == x


@given(scalars)
def test_exact_sqrt_of_square(x):
    r = (x * x).sqrt()
    assert r is not None and r * r == x * x and r.sign() >= 0


def test_hamilton_units():
    assert QI * QJ == QK
    assert QI * QI == QJ * QJ == QK * QK == QI * QJ * QK == -Q_ONE


def test_icosian_generator():
    p = P_ICOSIAN
    assert p * p.conj() == Q_ONE * p.norm2()
    assert p.norm2() == 1
    assert p**5 == -Q_ONE


@given(quaternions, quaternions)
def test_conjugate_reverses_products_and_norm_is_multiplicative(p, q):
    assert (p * q).conj() == q.conj() * p.conj()
    assert (p * q).norm2() == p.norm2() * q.norm2()


def test_adjoint_action_examples():
    assert ad_action(Q_HURWITZ, Q_ONE) == Q_ONE
    assert ad_action(Q_HURWITZ, QI) == QJ
    assert ad_action(P_ICOSIAN, QI) == HALF * (QI + PHI * QJ + PHI_INV * QK)


def test_adjoint_rejects_non_unit():
    with pytest.raises(ExactArithmeticError):
        ad_action(Quaternion(1, 1), QI)


def test_matrix_from_pair_examples():
    assert matrix_from_pair(Q_ONE, Q_ONE).is_identity()
    assert matrix_from_pair(-Q_ONE, -Q_ONE).is_identity()
    m = matrix_from_pair(Q_HURWITZ, Q_HURWITZ)
    x = [es(1), es(2), es(3), es(4)]
    assert m.apply(x) == (es(1), es(4), es(2), es(3))


def test_matrix_from_pair_rejects_non_unit():
    with pytest.raises(ExactArithmeticError):
        matrix_from_pair(Quaternion(2), Q_ONE)


UNITS = [Q_ONE, QI, QJ, QK, Q_HURWITZ, P_ICOSIAN, -P_ICOSIAN, P_ICOSIAN * Q_HURWITZ,
         HALF * Quaternion(PHI, PHI_INV, 0, 1), Q_HURWITZ * QI * P_ICOSIAN]


@pytest.mark.parametrize("a", range(len(UNITS)))
@pytest.mark.parametrize("b", range(len(UNITS)))
def test_pair_matrices_are_rotations(a, b):
    qa, qb = UNITS[a], UNITS[b]
    assert qa.is_unit() and qb.is_unit()
    m = matrix_from_pair(qa, qb)
    assert m.is_orthogonal() and m.det() == 1
    assert matrix_from_pair(-qa, -qb) == m


@pytest.mark.parametrize("a", [u for u in UNITS if u not in (Q_ONE, -Q_ONE)], ids=str)
def test_adjoint_fixed_space_is_span_of_one_and_imaginary_part(a):
    m = matrix_from_pair(a, a)
    kernel = nullspace([[m[i, j] - (1 if i == j else 0) for j in range(4)] for i in range(4)])
    assert len(kernel) == 2
    assert m.apply(Q_ONE.vec()) == Q_ONE.vec()
    assert m.apply(a.imag().vec()) == a.imag().vec()


def test_encoded_gram_matches_exact():
    rows = [[PHI, ONE, es(0), HALF], [PHI_INV, es(-1), HALF, es(2)]]
    enc = EncodedArray.from_exact(rows)
    A, B, d2 = gram(enc)
    exact = [[sum((u * v for u, v in zip(r, s)), es(0)) for s in rows] for r in rows]
    for i in range(2):
        for j in range(2):
            assert ExactScalar(Fraction(int(A[i, j]), d2), Fraction(int(B[i, j]), d2)) == exact[i][j]
    assert np.allclose(enc.to_float(), [[float(x) for x in r] for r in rows])
