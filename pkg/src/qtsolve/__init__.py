"""Quaternion tensor algebra and coupled Sylvester-type equation solvers."""

from .errors import (EtaSymmetryViolation, QTSolveError, SchemaError,
                     ShapeMismatch, SizeCapExceeded)
from .quat import EtaAxis, Quaternion, quat_conj, quat_eta_conj, quat_mul
from .qtensor import (QTensor, add, approx_eq, col_block, conj_transpose,
                      einstein_product, eta_conj_transpose, frob_norm,
                      identity, neg, random_qtensor, row_block, scale, sub,
                      zero)
from .qlinalg import PinvOptions, QMatrix, complex_adjoint, fold, pinv, proj_left, proj_right, unfold

__all__ = [
    "EtaAxis", "Quaternion", "quat_mul", "quat_conj", "quat_eta_conj",
    "QTensor", "add", "sub", "scale", "neg", "zero", "identity",
    "einstein_product", "conj_transpose", "eta_conj_transpose",
    "row_block", "col_block", "frob_norm", "approx_eq", "random_qtensor",
    "QMatrix", "PinvOptions", "unfold", "fold", "complex_adjoint",
    "pinv", "proj_left", "proj_right",
    "QTSolveError", "ShapeMismatch", "EtaSymmetryViolation",
    "SizeCapExceeded", "SchemaError",
]
