import numpy as np
import pytest

from qtsolve.qlinalg import (PinvOptions, QMatrix, complex_adjoint, fold,
                             from_complex_adjoint, pinv, proj_left,
                             proj_right, unfold)
from qtsolve.quat import EtaAxis
from qtsolve.qtensor import (QTensor, einstein_product, eta_conj_transpose,
                             frob_norm, identity, naive_einstein_product,
                             random_qtensor, sub, zero)


def rel_err(a, b):
    return frob_norm(sub(a, b)) / (1.0 + max(frob_norm(a), frob_norm(b)))


def test_unfold_identity_and_round_trip():
    i = identity((2, 2))
    m = unfold(i)
    assert m.rows == m.cols == 4
    assert np.allclose(m.comp[..., 0], np.eye(4))
    assert np.allclose(m.comp[..., 1:], 0.0)
    rng = np.random.default_rng(0)
    a = random_qtensor(rng, (2, 3), (2,))
    back = fold(unfold(a), a.left, a.right)
    assert rel_err(back, a) == 0.0


def test_unfold_is_product_homomorphism():
    rng = np.random.default_rng(1)
    a = random_qtensor(rng, (2, 2), (2, 2))
    b = random_qtensor(rng, (2, 2), (2, 2))
    prod = einstein_product(a, b)
    ref = naive_einstein_product(a, b)
    assert rel_err(prod, ref) < 1e-13
    # and the unfolded matrices multiply the same way
    mprod = QTensor((4,), (4,), unfold(prod).comp)
    ma = QTensor((4,), (4,), unfold(a).comp)
    mb = QTensor((4,), (4,), unfold(b).comp)
    assert rel_err(mprod, einstein_product(ma, mb)) < 1e-14


def test_complex_adjoint_examples():
    j = QMatrix(1, 1, np.array([[[0.0, 0.0, 1.0, 0.0]]]))
    chi = complex_adjoint(j)
    assert np.allclose(chi, np.array([[0, 1], [-1, 0]], dtype=complex))
    eye = unfold(identity((3,)))
    assert np.allclose(complex_adjoint(eye), np.eye(6))


def test_complex_adjoint_multiplicative():
    rng = np.random.default_rng(2)
    a = random_qtensor(rng, (3,), (3,))
    b = random_qtensor(rng, (3,), (3,))
    lhs = complex_adjoint(unfold(einstein_product(a, b)))
    rhs = complex_adjoint(unfold(a)) @ complex_adjoint(unfold(b))
    assert np.allclose(lhs, rhs)
    # chi(M*) = chi(M)^H
    from qtsolve.qtensor import conj_transpose
    assert np.allclose(complex_adjoint(unfold(conj_transpose(a))),
                       complex_adjoint(unfold(a)).conj().T)
    # round trip through the block structure
    back = from_complex_adjoint(complex_adjoint(unfold(a)), 3, 3)
    assert np.allclose(back.comp, unfold(a).comp)


def test_pinv_degenerate_cases():
    z = zero((2, 3), (2,))
    pz = pinv(z)
    assert pz.left == (2,) and pz.right == (2, 3)
    assert frob_norm(pz) == 0.0
    i = identity((2, 2))
    assert rel_err(pinv(i), i) < 1e-14


@pytest.mark.parametrize("seed", range(5))
def test_pinv_of_pinv(seed):
    rng = np.random.default_rng(seed)
    d = random_qtensor(rng, (2, 2), (3,))
    assert rel_err(pinv(pinv(d)), d) < 1e-10


def penrose_defects(d, dp):
    prods = einstein_product
    t1 = sub(prods(prods(d, dp), d), d)
    t2 = sub(prods(prods(dp, d), dp), dp)
    ddp = prods(d, dp)
    from qtsolve.qtensor import conj_transpose
    t3 = sub(conj_transpose(ddp), ddp)
    dpd = prods(dp, d)
    t4 = sub(conj_transpose(dpd), dpd)
    scale = 1.0 + max(frob_norm(d), frob_norm(dp))
    return [frob_norm(t) / scale for t in (t1, t2, t3, t4)]


@pytest.mark.parametrize("seed", range(10))
def test_penrose_conditions(seed):
    rng = np.random.default_rng(seed + 100)
    order_l = int(rng.integers(1, 3))
    order_r = int(rng.integers(1, 3))
    left = tuple(int(rng.integers(1, 4)) for _ in range(order_l))
    right = tuple(int(rng.integers(1, 4)) for _ in range(order_r))
    d = random_qtensor(rng, left, right)
    dp = pinv(d)
    assert max(penrose_defects(d, dp)) < 1e-10


def test_projector_properties():
    rng = np.random.default_rng(3)
    d = random_qtensor(rng, (2, 2), (3,))
    ld = proj_left(d)
    rd = proj_right(d)
    dp = pinv(d)
    assert frob_norm(einstein_product(d, ld)) < 1e-12 * (1 + frob_norm(d))
    assert frob_norm(einstein_product(rd, d)) < 1e-12 * (1 + frob_norm(d))
    assert frob_norm(einstein_product(ld, dp)) < 1e-12
    assert frob_norm(einstein_product(dp, rd)) < 1e-12
    assert rel_err(einstein_product(ld, ld), ld) < 1e-11
    assert rel_err(einstein_product(rd, rd), rd) < 1e-11
    assert rel_err(proj_left(identity((2, 2))), zero((2, 2), (2, 2))) == 0.0
    assert rel_err(proj_left(zero((2,), (3,))), identity((3,))) == 0.0


@pytest.mark.parametrize("axis", list(EtaAxis))
def test_pinv_eta_identities(axis):
    rng = np.random.default_rng(4)
    d = random_qtensor(rng, (2, 2), (2, 2))
    from qtsolve.qtensor import conj_transpose
    assert rel_err(pinv(conj_transpose(d)), conj_transpose(pinv(d))) < 1e-10
    assert rel_err(pinv(eta_conj_transpose(d, axis)),
                   eta_conj_transpose(pinv(d), axis)) < 1e-10
    assert rel_err(eta_conj_transpose(proj_left(d), axis),
                   proj_right(eta_conj_transpose(d, axis))) < 1e-10
    assert rel_err(eta_conj_transpose(proj_right(d), axis),
                   proj_left(eta_conj_transpose(d, axis))) < 1e-10


def test_pinv_of_gram_product():
    rng = np.random.default_rng(5)
    d = random_qtensor(rng, (2, 2), (3,))
    from qtsolve.qtensor import conj_transpose
    ds = conj_transpose(d)
    lhs = pinv(einstein_product(ds, d))
    rhs = einstein_product(pinv(d), pinv(ds))
    assert rel_err(lhs, rhs) < 1e-9


def test_zero_floor_kills_noise_pseudoinverse():
    # a numerically-zero tensor must not blow up when the floor is set
    rng = np.random.default_rng(6)
    noise = random_qtensor(rng, (2,), (2,), scale=1e-15)
    assert frob_norm(pinv(noise)) > 1e10  # purely relative cutoff inverts noise
    assert frob_norm(pinv(noise, PinvOptions(zero_floor=1e-9))) == 0.0
