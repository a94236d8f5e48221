"""Unfolding, complex-adjoint embedding, pseudoinverse, and projectors.

The Moore-Penrose inverse of a quaternion tensor is computed by unfolding to
a quaternion matrix, embedding into the classical complex chi-representation
(which commutes with pseudoinversion), running a complex SVD with a rank
cutoff, and reading the quaternion matrix back from the block structure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatch
from .qtensor import QTensor, einstein_product, identity, sub


@dataclass(frozen=True)
class QMatrix:
    """Unfolded form of a QTensor: a plain quaternion matrix.

    `comp` has shape (rows, cols, 4) with component order (w, x, y, z).
    """

    rows: int
    cols: int
    comp: np.ndarray

    def __post_init__(self):
        if self.comp.shape != (self.rows, self.cols, 4):
            raise ShapeMismatch(
                f"component array {self.comp.shape}, expected {(self.rows, self.cols, 4)}")


@dataclass(frozen=True)
class PinvOptions:
    """Rank-truncation policy for the pseudoinverse SVD.

    A singular value is kept iff it exceeds both cutoffs:

      * rank_tol_factor * max(rows, cols) * sigma_max   (relative), and
      * zero_floor                                      (absolute).

    The absolute floor matters inside solver chains: intermediates that are
    exactly zero in exact arithmetic arrive as rounding noise, and a purely
    relative cutoff would invert that noise into an enormous pseudoinverse.
    Solvers set zero_floor from the problem's coefficient scale; the default
    0.0 keeps standalone pinv purely relative.
    """

    rank_tol_factor: float = 1e-12
    zero_floor: float = 0.0

    def __post_init__(self):
        if self.rank_tol_factor <= 0:
            raise ValueError("rank_tol_factor must be > 0")
        if self.zero_floor < 0:
            raise ValueError("zero_floor must be >= 0")


DEFAULT_PINV = PinvOptions()


def unfold(a: QTensor) -> QMatrix:
    """Reinterpret as a prod(left) x prod(right) quaternion matrix.

    No data moves: the tensor linearization order is already row-major over
    (left, right), so unfold(a *_N b) = unfold(a) @ unfold(b).
    """
    return QMatrix(a.mat.shape[0], a.mat.shape[1], a.mat)


def fold(m: QMatrix, left, right) -> QTensor:
    """Inverse of unfold for the given shape split."""
    return QTensor(left, right, m.comp)


def complex_adjoint(m: QMatrix) -> np.ndarray:
    """Classical chi-representation as a 2r x 2c complex matrix.

    With M = Ma + Mb * j (Ma = w + x i, Mb = y + z i):
    chi(M) = [[Ma, Mb], [-conj(Mb), conj(Ma)]]; chi is multiplicative and
    sends conjugate-transposition to Hermitian transposition.
    """
    ma = m.comp[..., 0] + 1j * m.comp[..., 1]
    mb = m.comp[..., 2] + 1j * m.comp[..., 3]
    top = np.hstack([ma, mb])
    bottom = np.hstack([-mb.conj(), ma.conj()])
    return np.vstack([top, bottom])


def from_complex_adjoint(c: np.ndarray, rows: int, cols: int) -> QMatrix:
    """Read a quaternion matrix back from a chi-structured complex matrix.

    Floating point breaks the exact redundancy between the two block copies,
    so they are averaged.
    """
    if c.shape != (2 * rows, 2 * cols):
        raise ShapeMismatch(f"complex block matrix {c.shape}, expected {(2*rows, 2*cols)}")
    tl = c[:rows, :cols]
    tr = c[:rows, cols:]
    bl = c[rows:, :cols]
    br = c[rows:, cols:]
    ma = 0.5 * (tl + br.conj())
    mb = 0.5 * (tr - bl.conj())
    comp = np.empty((rows, cols, 4))
    comp[..., 0] = ma.real
    comp[..., 1] = ma.imag
    comp[..., 2] = mb.real
    comp[..., 3] = mb.imag
    return QMatrix(rows, cols, comp)


def _pinv_complex(c: np.ndarray, opts: PinvOptions, rows: int, cols: int) -> np.ndarray:
    u, s, vh = np.linalg.svd(c, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((c.shape[1], c.shape[0]), dtype=complex)
    cutoff = max(opts.rank_tol_factor * max(rows, cols) * s[0], opts.zero_floor)
    keep = s > cutoff
    inv = np.where(keep, 1.0 / np.where(keep, s, 1.0), 0.0)
    return (vh.conj().T * inv) @ u.conj().T


def pinv(a: QTensor, opts: PinvOptions | None = None) -> QTensor:
    """Moore-Penrose inverse; left/right shapes swap.

    Satisfies the four Penrose conditions to numerical tolerance; the zero
    tensor maps to the (transpose-shaped) zero tensor.
    """
    opts = opts or DEFAULT_PINV
    m = unfold(a)
    p = _pinv_complex(complex_adjoint(m), opts, m.rows, m.cols)
    return fold(from_complex_adjoint(p, m.cols, m.rows), a.right, a.left)


def proj_left(a: QTensor, opts: PinvOptions | None = None) -> QTensor:
    """L_A = I - A^+ *_N A, the projector onto the null space of A."""
    return sub(identity(a.right), einstein_product(pinv(a, opts), a))


def proj_right(a: QTensor, opts: PinvOptions | None = None) -> QTensor:
    """R_A = I - A *_N A^+, the projector annihilating the range of A."""
    return sub(identity(a.left), einstein_product(a, pinv(a, opts)))
