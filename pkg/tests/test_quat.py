import math

from hypothesis import given, settings
from hypothesis import strategies as st

from qtsolve.quat import (ONE, QI, QJ, QK, EtaAxis, Quaternion, quat_conj,
                          quat_eta_conj, quat_mul)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)


def test_unit_relations():
    # i^2 = j^2 = k^2 = ijk = -1
    minus_one = Quaternion(-1.0)
    assert quat_mul(QI, QI) == minus_one
    assert quat_mul(QJ, QJ) == minus_one
    assert quat_mul(QK, QK) == minus_one
    assert quat_mul(quat_mul(QI, QJ), QK) == minus_one
    assert quat_mul(QI, QJ) == QK
    assert quat_mul(QJ, QI) == Quaternion(0, 0, 0, -1)


def test_identity_element():
    q = Quaternion(1.5, -2.0, 0.25, 3.0)
    assert quat_mul(ONE, q) == q
    assert quat_mul(q, ONE) == q


def test_hand_expanded_product():
    # (1+2i)(3+4j) = 3 + 6i + 4j + 8k, expanded by hand
    assert quat_mul(Quaternion(1, 2, 0, 0), Quaternion(3, 0, 4, 0)) == \
        Quaternion(3, 6, 4, 8)


def test_conj_examples():
    assert quat_conj(QI) == Quaternion(0, -1, 0, 0)
    assert quat_conj(Quaternion(5)) == Quaternion(5)
    assert quat_conj(Quaternion(1, 2, 3, 4)) == Quaternion(1, -2, -3, -4)


def test_eta_conj_examples():
    for axis in EtaAxis:
        assert quat_eta_conj(Quaternion(7.0), axis) == Quaternion(7.0)
    assert quat_eta_conj(Quaternion(1, 2, 3, 4), EtaAxis.I) == Quaternion(1, -2, 3, 4)
    assert quat_eta_conj(Quaternion(1, 2, 3, 4), EtaAxis.J) == Quaternion(1, 2, -3, 4)
    assert quat_eta_conj(Quaternion(1, 2, 3, 4), EtaAxis.K) == Quaternion(1, 2, 3, -4)


@given(quats, st.sampled_from(list(EtaAxis)))
def test_eta_conj_is_involution(q, axis):
    assert quat_eta_conj(quat_eta_conj(q, axis), axis) == q


@given(quats, st.sampled_from(list(EtaAxis)))
def test_eta_conj_matches_sandwich(q, axis):
    # the component flip really is -eta * conj(q) * eta
    eta = axis.unit()
    sandwich = quat_mul(quat_mul(eta, quat_conj(q)), eta).scale(-1.0)
    assert quat_eta_conj(q, axis) == sandwich


@given(quats, quats)
@settings(max_examples=200)
def test_conj_reverses_products(a, b):
    lhs = quat_conj(quat_mul(a, b))
    rhs = quat_mul(quat_conj(b), quat_conj(a))
    tol = 1e-9 * (1.0 + a.norm() * b.norm())
    assert lhs.is_close(rhs, tol)


@given(quats, quats, st.sampled_from(list(EtaAxis)))
@settings(max_examples=200)
def test_eta_conj_reverses_products(a, b, axis):
    lhs = quat_eta_conj(quat_mul(a, b), axis)
    rhs = quat_mul(quat_eta_conj(b, axis), quat_eta_conj(a, axis))
    tol = 1e-9 * (1.0 + a.norm() * b.norm())
    assert lhs.is_close(rhs, tol)


@given(quats)
def test_norm_from_conjugate(q):
    prod = quat_mul(q, quat_conj(q))
    n2 = q.norm2()
    eps = math.ulp(1.0)
    assert abs(prod.w - n2) <= 8 * eps * max(n2, 1.0)
    assert prod.is_close(Quaternion(prod.w), 8 * eps * max(n2, 1.0))


@given(quats, quats, quats)
@settings(max_examples=200)
def test_associativity(a, b, c):
    lhs = quat_mul(quat_mul(a, b), c)
    rhs = quat_mul(a, quat_mul(b, c))
    tol = 1e-8 * (1.0 + a.norm() * b.norm() * c.norm())
    assert lhs.is_close(rhs, tol)
