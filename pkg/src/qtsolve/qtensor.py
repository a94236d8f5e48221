"""Dense even-order quaternion tensors and the Einstein product.

A tensor lives in H^{I(N) x J(M)}: its indices split into a left group of N
modes and a right group of M modes. Entries are linearized row-major over the
concatenated (left, right) index list with the last index varying fastest,
so the internal storage is exactly the unfolded (prod(left) x prod(right))
quaternion matrix and unfolding costs nothing.

Components are held in a float64 array of shape (prod(left), prod(right), 4)
with the last axis ordered (w, x, y, z).
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import ShapeMismatch
from .quat import EtaAxis, Quaternion

Shape = tuple[int, ...]


def _as_shape(dims: Iterable[int]) -> Shape:
    shape = tuple(int(d) for d in dims)
    if any(d < 1 for d in shape):
        raise ShapeMismatch(f"all dims must be >= 1, got {shape}")
    return shape


def _prod(shape: Shape) -> int:
    return math.prod(shape) if shape else 1


class QTensor:
    """Dense quaternion tensor with explicit left/right shape lists."""

    __slots__ = ("left", "right", "mat")

    def __init__(self, left: Iterable[int], right: Iterable[int], mat: np.ndarray):
        self.left = _as_shape(left)
        self.right = _as_shape(right)
        expected = (_prod(self.left), _prod(self.right), 4)
        mat = np.ascontiguousarray(mat, dtype=np.float64)
        if mat.shape != expected:
            raise ShapeMismatch(f"component array shape {mat.shape}, expected {expected}")
        self.mat = mat

    # -- construction -------------------------------------------------

    @classmethod
    def from_entries(cls, left: Iterable[int], right: Iterable[int],
                     entries: Sequence) -> "QTensor":
        """Build from a flat list of quaternions (or 4-sequences) in
        linearization order."""
        left = _as_shape(left)
        right = _as_shape(right)
        n = _prod(left) * _prod(right)
        if len(entries) != n:
            raise ShapeMismatch(f"{len(entries)} entries for {n} positions")
        comp = np.empty((n, 4), dtype=np.float64)
        for idx, e in enumerate(entries):
            if isinstance(e, Quaternion):
                comp[idx] = e.components()
            else:
                comp[idx] = tuple(e)
        return cls(left, right, comp.reshape(_prod(left), _prod(right), 4))

    @property
    def data(self) -> list[Quaternion]:
        """Flat entry list in linearization order."""
        flat = self.mat.reshape(-1, 4)
        return [Quaternion(*row) for row in flat]

    def entry(self, left_idx: Sequence[int], right_idx: Sequence[int]) -> Quaternion:
        """Entry at 0-based multi-indices."""
        r = int(np.ravel_multi_index(tuple(left_idx), self.left)) if self.left else 0
        c = int(np.ravel_multi_index(tuple(right_idx), self.right)) if self.right else 0
        return Quaternion(*self.mat[r, c])

    @property
    def order(self) -> tuple[int, int]:
        return (len(self.left), len(self.right))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"QTensor(left={self.left}, right={self.right})"


# -- basic constructors ----------------------------------------------------


def zero(left: Iterable[int], right: Iterable[int]) -> QTensor:
    left = _as_shape(left)
    right = _as_shape(right)
    return QTensor(left, right, np.zeros((_prod(left), _prod(right), 4)))


def identity(shape: Iterable[int]) -> QTensor:
    """Unit tensor over H^{S x S}: ones on the multi-index diagonal."""
    shape = _as_shape(shape)
    n = _prod(shape)
    mat = np.zeros((n, n, 4))
    mat[np.arange(n), np.arange(n), 0] = 1.0
    return QTensor(shape, shape, mat)


def random_qtensor(rng: np.random.Generator, left: Iterable[int],
                   right: Iterable[int], scale: float = 1.0) -> QTensor:
    left = _as_shape(left)
    right = _as_shape(right)
    mat = scale * rng.standard_normal((_prod(left), _prod(right), 4))
    return QTensor(left, right, mat)


# -- elementwise algebra ----------------------------------------------------


def _require_same_shapes(a: QTensor, b: QTensor) -> None:
    if a.left != b.left or a.right != b.right:
        raise ShapeMismatch(f"shapes {a.left}x{a.right} vs {b.left}x{b.right}")


def add(a: QTensor, b: QTensor) -> QTensor:
    _require_same_shapes(a, b)
    return QTensor(a.left, a.right, a.mat + b.mat)


def sub(a: QTensor, b: QTensor) -> QTensor:
    _require_same_shapes(a, b)
    return QTensor(a.left, a.right, a.mat - b.mat)


def scale(a: QTensor, s: float) -> QTensor:
    """Real scalar multiple."""
    return QTensor(a.left, a.right, float(s) * a.mat)


def neg(a: QTensor) -> QTensor:
    return QTensor(a.left, a.right, -a.mat)


def frob_norm(a: QTensor) -> float:
    return float(np.sqrt(np.sum(a.mat * a.mat)))


def approx_eq(a: QTensor, b: QTensor, tol: float) -> bool:
    """Relative Frobenius test ||a-b|| <= tol * (1 + max(||a||, ||b||))."""
    _require_same_shapes(a, b)
    return frob_norm(sub(a, b)) <= tol * (1.0 + max(frob_norm(a), frob_norm(b)))


# -- products and transpositions --------------------------------------------


def _qmatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Quaternion matrix product on (m,n,4) x (n,p,4) component arrays.

    Uses the split q = (w + x i) + (y + z i) j, under which the product is two
    complex matrix products.
    """
    aa = a[..., 0] + 1j * a[..., 1]
    ab = a[..., 2] + 1j * a[..., 3]
    ba = b[..., 0] + 1j * b[..., 1]
    bb = b[..., 2] + 1j * b[..., 3]
    ca = aa @ ba - ab @ bb.conj()
    cb = aa @ bb + ab @ ba.conj()
    out = np.empty((a.shape[0], b.shape[1], 4))
    out[..., 0] = ca.real
    out[..., 1] = ca.imag
    out[..., 2] = cb.real
    out[..., 3] = cb.imag
    return out


def einstein_product(a: QTensor, b: QTensor, n: int | None = None) -> QTensor:
    """Contraction of a's right index group with b's left index group.

    `n` (the contraction order) must equal both group lengths; it defaults to
    a.right's length. Under the fixed linearization this is a quaternion
    matrix product of the unfoldings.
    """
    if n is None:
        n = len(a.right)
    if n != len(a.right) or n != len(b.left) or a.right != b.left:
        raise ShapeMismatch(
            f"cannot contract {a.left}x{a.right} *_{n} {b.left}x{b.right}")
    return QTensor(a.left, b.right, _qmatmul(a.mat, b.mat))


def conj_transpose(a: QTensor) -> QTensor:
    """Swap index groups and conjugate every entry."""
    mat = np.ascontiguousarray(np.transpose(a.mat, (1, 0, 2))).copy()
    mat[..., 1:] = -mat[..., 1:]
    return QTensor(a.right, a.left, mat)


def eta_conj_transpose(a: QTensor, eta: EtaAxis) -> QTensor:
    """The involution A -> -eta * A^* * eta.

    Entrywise this transposes the index groups and negates the component
    along the chosen axis, so it is exact in floating point.
    """
    mat = np.ascontiguousarray(np.transpose(a.mat, (1, 0, 2))).copy()
    mat[..., eta.component] = -mat[..., eta.component]
    return QTensor(a.right, a.left, mat)


# -- block tensors -----------------------------------------------------------


def row_block(a: QTensor, b: QTensor) -> QTensor:
    """Concatenate along the right index group with explicit zero padding.

    The result's right dims are J_s + K_s per mode; a occupies the low index
    box, b the shifted box, and every mixed position is exactly zero.
    """
    if a.left != b.left or len(a.right) != len(b.right):
        raise ShapeMismatch(f"row_block: {a.left}x{a.right} with {b.left}x{b.right}")
    new_right = tuple(j + k for j, k in zip(a.right, b.right))
    out = np.zeros((_prod(a.left), _prod(new_right), 4))
    view = out.reshape(*a.left, *new_right, 4)
    nl = len(a.left)
    a_box = (slice(None),) * nl + tuple(slice(0, j) for j in a.right)
    b_box = (slice(None),) * nl + tuple(slice(j, j + k) for j, k in zip(a.right, b.right))
    view[a_box] = a.mat.reshape(*a.left, *a.right, 4)
    view[b_box] = b.mat.reshape(*b.left, *b.right, 4)
    return QTensor(a.left, new_right, out)


def col_block(c: QTensor, d: QTensor) -> QTensor:
    """Concatenate along the left index group with explicit zero padding."""
    if c.right != d.right or len(c.left) != len(d.left):
        raise ShapeMismatch(f"col_block: {c.left}x{c.right} with {d.left}x{d.right}")
    new_left = tuple(j + k for j, k in zip(c.left, d.left))
    out = np.zeros((_prod(new_left), _prod(c.right), 4))
    view = out.reshape(*new_left, *c.right, 4)
    nr = len(c.right) + 1  # right modes plus the component axis
    c_box = tuple(slice(0, j) for j in c.left) + (slice(None),) * nr
    d_box = tuple(slice(j, j + k) for j, k in zip(c.left, d.left)) + (slice(None),) * nr
    view[c_box] = c.mat.reshape(*c.left, *c.right, 4)
    view[d_box] = d.mat.reshape(*d.left, *d.right, 4)
    return QTensor(new_left, c.right, out)


def first_left_block(t: QTensor, dims: Iterable[int]) -> QTensor:
    """Extract the leading box along the left group (the (I 0) *_N t part)."""
    dims = _as_shape(dims)
    if len(dims) != len(t.left) or any(d > s for d, s in zip(dims, t.left)):
        raise ShapeMismatch(f"cannot take left block {dims} of {t.left}")
    view = t.mat.reshape(*t.left, *t.right, 4)
    box = tuple(slice(0, d) for d in dims)
    part = np.ascontiguousarray(view[box])
    return QTensor(dims, t.right, part.reshape(_prod(dims), _prod(t.right), 4))


def first_right_block(t: QTensor, dims: Iterable[int]) -> QTensor:
    """Extract the leading box along the right group (the t *_M (I; 0) part)."""
    dims = _as_shape(dims)
    if len(dims) != len(t.right) or any(d > s for d, s in zip(dims, t.right)):
        raise ShapeMismatch(f"cannot take right block {dims} of {t.right}")
    view = t.mat.reshape(*t.left, *t.right, 4)
    box = (slice(None),) * len(t.left) + tuple(slice(0, d) for d in dims)
    part = np.ascontiguousarray(view[box])
    return QTensor(t.left, dims, part.reshape(_prod(t.left), _prod(dims), 4))


def naive_einstein_product(a: QTensor, b: QTensor) -> QTensor:
    """Reference nested-loop contraction over Quaternion scalars.

    Kept only as an independent oracle for tests; quadratically slower than
    einstein_product.
    """
    if a.right != b.left:
        raise ShapeMismatch("contracted dims differ")
    pl, pc, pr = _prod(a.left), _prod(a.right), _prod(b.right)
    entries = []
    a_flat = a.data
    b_flat = b.data
    for i in range(pl):
        for k in range(pr):
            acc = Quaternion()
            for j in range(pc):
                acc = acc + a_flat[i * pc + j] * b_flat[j * pr + k]
            entries.append(acc)
    return QTensor.from_entries(a.left, b.right, entries)
