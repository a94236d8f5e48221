import numpy as np
import pytest

from qtsolve.errors import ShapeMismatch
from qtsolve.quat import EtaAxis, Quaternion
from qtsolve.qtensor import (QTensor, add, approx_eq, col_block,
                             conj_transpose, einstein_product,
                             eta_conj_transpose, first_left_block,
                             first_right_block, frob_norm, identity,
                             naive_einstein_product, random_qtensor,
                             row_block, scale, sub, zero)


def rel_err(a, b):
    return frob_norm(sub(a, b)) / (1.0 + max(frob_norm(a), frob_norm(b)))


def random_shapes(rng, max_dim=3, max_order=2):
    order = int(rng.integers(1, max_order + 1))
    return tuple(int(rng.integers(1, max_dim + 1)) for _ in range(order))


def test_unit_tensor_is_neutral():
    rng = np.random.default_rng(0)
    b = random_qtensor(rng, (2, 3), (2, 2))
    assert rel_err(einstein_product(identity((2, 3)), b), b) < 1e-15
    assert rel_err(einstein_product(b, identity((2, 2))), b) < 1e-15


def test_zero_annihilates():
    rng = np.random.default_rng(1)
    a = random_qtensor(rng, (2,), (3, 2))
    z = zero((3, 2), (4,))
    assert frob_norm(einstein_product(a, z)) == 0.0


def test_contraction_shape_mismatch():
    rng = np.random.default_rng(2)
    a = random_qtensor(rng, (2,), (3,))
    b = random_qtensor(rng, (4,), (2,))
    with pytest.raises(ShapeMismatch):
        einstein_product(a, b)
    with pytest.raises(ShapeMismatch):
        einstein_product(a, random_qtensor(rng, (3,), (2,)), n=2)


@pytest.mark.parametrize("seed", range(5))
def test_einstein_matches_naive_loop(seed):
    rng = np.random.default_rng(seed)
    mid = random_shapes(rng)
    a = random_qtensor(rng, random_shapes(rng), mid)
    b = random_qtensor(rng, mid, random_shapes(rng))
    fast = einstein_product(a, b)
    slow = naive_einstein_product(a, b)
    assert rel_err(fast, slow) < 1e-13


@pytest.mark.parametrize("seed", range(3))
def test_associativity(seed):
    rng = np.random.default_rng(seed + 10)
    s1, s2, s3, s4 = (random_shapes(rng) for _ in range(4))
    a = random_qtensor(rng, s1, s2)
    b = random_qtensor(rng, s2, s3)
    c = random_qtensor(rng, s3, s4)
    lhs = einstein_product(einstein_product(a, b), c)
    rhs = einstein_product(a, einstein_product(b, c))
    assert rel_err(lhs, rhs) < 1e-12


def test_conj_transpose_involution_and_identity():
    rng = np.random.default_rng(3)
    a = random_qtensor(rng, (2, 2), (3,))
    assert rel_err(conj_transpose(conj_transpose(a)), a) == 0.0
    i = identity((2, 2))
    assert frob_norm(sub(conj_transpose(i), i)) == 0.0


@pytest.mark.parametrize("seed", range(3))
def test_reversal_law(seed):
    rng = np.random.default_rng(seed + 20)
    a = random_qtensor(rng, (2, 2), (2, 2))
    b = random_qtensor(rng, (2, 2), (2, 2))
    lhs = conj_transpose(einstein_product(a, b))
    rhs = einstein_product(conj_transpose(b), conj_transpose(a))
    assert rel_err(lhs, rhs) < 1e-13


@pytest.mark.parametrize("axis", list(EtaAxis))
def test_eta_transpose_properties(axis):
    rng = np.random.default_rng(4)
    a = random_qtensor(rng, (2, 2), (2, 2))
    b = random_qtensor(rng, (2, 2), (2, 2))
    assert rel_err(eta_conj_transpose(eta_conj_transpose(a, axis), axis), a) == 0.0
    lhs = eta_conj_transpose(einstein_product(a, b), axis)
    rhs = einstein_product(eta_conj_transpose(b, axis), eta_conj_transpose(a, axis))
    assert rel_err(lhs, rhs) < 1e-13
    # real symmetric square tensors are fixed points
    comp = np.zeros((4, 4, 4))
    sym = rng.standard_normal((4, 4))
    comp[..., 0] = sym + sym.T
    t = QTensor((2, 2), (2, 2), comp)
    assert frob_norm(sub(eta_conj_transpose(t, axis), t)) == 0.0


def test_row_block_zero_padding():
    rng = np.random.default_rng(5)
    a = random_qtensor(rng, (2, 2), (2, 2))
    z = zero((2, 2), (2, 2))
    rb = row_block(a, z)
    assert rb.left == (2, 2) and rb.right == (4, 4)
    assert rb.mat.size == 64 * 4
    assert frob_norm(first_right_block(rb, (2, 2))) == frob_norm(a)
    cb = col_block(a, z)
    assert cb.left == (4, 4) and cb.right == (2, 2)
    assert frob_norm(first_left_block(cb, (2, 2))) == frob_norm(a)


def test_row_block_brute_force_index_map():
    # enumerate the defining index map: entries land in their box, all mixed
    # positions are zero
    rng = np.random.default_rng(6)
    a = random_qtensor(rng, (2,), (2, 1))
    b = random_qtensor(rng, (2,), (1, 2))
    out = row_block(a, b)
    assert out.right == (3, 3)
    for i in range(2):
        for l1 in range(3):
            for l2 in range(3):
                got = out.entry((i,), (l1, l2)).components()
                if l1 < 2 and l2 < 1:
                    assert got == a.entry((i,), (l1, l2)).components()
                elif l1 >= 2 and l2 >= 1:
                    assert got == b.entry((i,), (l1 - 2, l2 - 1)).components()
                else:
                    assert got == (0.0, 0.0, 0.0, 0.0)


@pytest.mark.parametrize("seed", range(3))
def test_block_product_law(seed):
    # (A B) *_M (C; D) = A*C + B*D
    rng = np.random.default_rng(seed + 30)
    a = random_qtensor(rng, (2, 2), (2, 2))
    b = random_qtensor(rng, (2, 2), (3, 2))
    c = random_qtensor(rng, (2, 2), (2, 3))
    d = random_qtensor(rng, (3, 2), (2, 3))
    lhs = einstein_product(row_block(a, b), col_block(c, d))
    rhs = add(einstein_product(a, c), einstein_product(b, d))
    assert rel_err(lhs, rhs) < 1e-13


def test_block_distribution():
    # G * (A B) = (G*A  G*B) and (C; D) * G = (C*G; D*G)
    rng = np.random.default_rng(7)
    g = random_qtensor(rng, (2, 2), (2, 2))
    a = random_qtensor(rng, (2, 2), (2, 2))
    b = random_qtensor(rng, (2, 2), (3, 1))
    lhs = einstein_product(g, row_block(a, b))
    rhs = row_block(einstein_product(g, a), einstein_product(g, b))
    assert rel_err(lhs, rhs) < 1e-14
    c = random_qtensor(rng, (2, 2), (2, 2))
    d = random_qtensor(rng, (1, 3), (2, 2))
    lhs2 = einstein_product(col_block(c, d), g)
    rhs2 = col_block(einstein_product(c, g), einstein_product(d, g))
    assert rel_err(lhs2, rhs2) < 1e-14


def test_elementwise_and_norm():
    rng = np.random.default_rng(8)
    a = random_qtensor(rng, (2, 2), (2,))
    assert rel_err(add(a, zero((2, 2), (2,))), a) == 0.0
    assert frob_norm(identity((2, 2))) == 2.0
    assert approx_eq(a, a, 0.0)
    assert not approx_eq(a, scale(a, 1.0 + 1e-3), 1e-9)
    with pytest.raises(ShapeMismatch):
        add(a, zero((2,), (2,)))


def test_entry_and_data_round_trip():
    entries = [Quaternion(float(i), 0.0, 0.0, 0.0) for i in range(8)]
    t = QTensor.from_entries((2,), (2, 2), entries)
    assert t.entry((1,), (0, 1)).w == 5.0  # row-major, last index fastest
    assert [q.w for q in t.data] == list(range(8))
