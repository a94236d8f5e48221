"""Independent verification: equation residuals, condition audits, and a
brute-force least-squares oracle over the real representation.

The oracle never touches the quaternion product or pseudoinverse used by the
solvers. It encodes left and right quaternion multiplication as fixed 4x4
real blocks, vectorizes every equation over the real components of the
unknowns, and asks numpy's least squares whether the stacked linear system
is attainable. Agreement between the oracle verdict and the closed-form
solvability conditions is the cross-check of the whole theory.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import ShapeMismatch, SizeCapExceeded
from .qlinalg import PinvOptions
from .qtensor import QTensor, frob_norm, sub
from .solvers.basic import solver_options
from .solvers.types import DEFAULT_TOL, SolveReport
from .systems import ProblemInstance, Term, eval_equation_lhs

ORACLE_TOL = 1e-8
ORACLE_CAP = 20_000


@dataclass(frozen=True)
class EquationResidual:
    name: str
    absolute: float
    relative: float


@dataclass(frozen=True)
class ResidualReport:
    equations: tuple[EquationResidual, ...]
    max_relative: float

    def to_dict(self) -> dict:
        return {
            "max_relative": self.max_relative,
            "equations": [
                {"name": e.name, "absolute": e.absolute, "relative": e.relative}
                for e in self.equations
            ],
        }


def residual(inst: ProblemInstance, unknowns: Mapping[str, QTensor]) -> ResidualReport:
    """Evaluate every equation of the instance literally against the supplied
    unknowns; relative residuals are ||LHS - RHS|| / (1 + ||RHS||)."""
    spec = inst.spec
    missing = set(spec.unknown_names) - set(unknowns)
    if missing:
        raise ShapeMismatch(f"missing unknowns: {sorted(missing)}")
    rows = []
    for eq in spec.equations:
        lhs = eval_equation_lhs(inst, eq, dict(unknowns))
        rhs = inst.coefficients[eq.rhs]
        absd = frob_norm(sub(lhs, rhs))
        rows.append(EquationResidual(eq.name, absd, absd / (1.0 + frob_norm(rhs))))
    return ResidualReport(tuple(rows), max(r.relative for r in rows))


def audit_conditions(inst: ProblemInstance, tol: float = DEFAULT_TOL,
                     rank_tol: float = 1e-12) -> SolveReport:
    """Evaluate only the solvability conditions (no solution construction)."""
    inst.validate(tol)
    opts = solver_options(inst, rank_tol)
    return SolveReport.from_conditions(_conditions_for(inst, opts), tol)


def _conditions_for(inst: ProblemInstance, opts: PinvOptions):
    from .solvers import CoupledEngine, CoupledInputs
    from .solvers.basic import eq31_conditions, pair11_conditions
    from .solvers.main import eta17_conditions, main15_conditions, sys16_conditions

    kind = inst.system_kind
    if kind == "pair11":
        return pair11_conditions(inst, opts)[0]
    if kind == "eq31":
        return eq31_conditions(inst, opts)
    if kind == "coupled14":
        c = inst.coefficients
        eng = CoupledEngine(
            CoupledInputs(c["A1"], c["B1"], c["E1"], c["A2"], c["B2"], c["E2"],
                          c["A3"], c["E3"], c["B3"], c["E4"],
                          c["A4"], c["B4"], c["C4"], c["D4"], c["P"],
                          c["A5"], c["B5"], c["C5"], c["D5"], c["Q"]), opts)
        return eng.conditions()
    if kind == "main15":
        return main15_conditions(inst, opts)
    if kind == "sys16":
        return sys16_conditions(inst, opts)
    if kind == "eta17":
        return eta17_conditions(inst, opts)
    raise ShapeMismatch(f"unknown system kind {kind!r}")


# -- the real-representation oracle -------------------------------------------


def _left_blocks(comp: np.ndarray) -> np.ndarray:
    """(m, n, 4) components -> (m, n, 4, 4) blocks of left multiplication."""
    w, x, y, z = comp[..., 0], comp[..., 1], comp[..., 2], comp[..., 3]
    rows = [np.stack([w, -x, -y, -z], axis=-1),
            np.stack([x, w, -z, y], axis=-1),
            np.stack([y, z, w, -x], axis=-1),
            np.stack([z, -y, x, w], axis=-1)]
    return np.stack(rows, axis=-2)


def _right_blocks(comp: np.ndarray) -> np.ndarray:
    """(m, n, 4) components -> (m, n, 4, 4) blocks of right multiplication."""
    w, x, y, z = comp[..., 0], comp[..., 1], comp[..., 2], comp[..., 3]
    rows = [np.stack([w, -x, -y, -z], axis=-1),
            np.stack([x, w, z, -y], axis=-1),
            np.stack([y, -z, w, x], axis=-1),
            np.stack([z, y, -x, w], axis=-1)]
    return np.stack(rows, axis=-2)


def _qmat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Quaternion matrix product on raw component arrays via left blocks."""
    return np.einsum("ikab,kjb->ija", _left_blocks(a), b)


def _eye_comp(n: int) -> np.ndarray:
    c = np.zeros((n, n, 4))
    c[np.arange(n), np.arange(n), 0] = 1.0
    return c


def _eta_star_comp(comp: np.ndarray, axis_component: int) -> np.ndarray:
    out = comp.transpose(1, 0, 2).copy()
    out[..., axis_component] = -out[..., axis_component]
    return out


def _coeff_comp(inst: ProblemInstance, ref) -> np.ndarray:
    comp = inst.coefficients[ref.name].mat
    if ref.star:
        comp = _eta_star_comp(comp, inst.eta.component)
    return comp


def _eta_star_matrix(rows: int, cols: int, axis_component: int) -> np.ndarray:
    """Real matrix P with vec(X^eta*) = P vec(X) for X of shape rows x cols."""
    n = rows * cols * 4
    p = np.zeros((n, n))
    sign = np.ones(4)
    sign[axis_component] = -1.0
    for r in range(rows):
        for c in range(cols):
            for comp in range(4):
                src = (r * cols + c) * 4 + comp
                dst = (c * rows + r) * 4 + comp
                p[dst, src] = sign[comp]
    return p


def _term_matrix(inst: ProblemInstance, term: Term,
                 ushape: tuple[tuple[int, ...], tuple[int, ...]]) -> np.ndarray:
    """Real matrix of the linear map vec(unknown) -> vec(term value)."""
    import math
    rows_u = math.prod(ushape[0])
    cols_u = math.prod(ushape[1])
    if term.star:
        slot_rows, slot_cols = cols_u, rows_u
    else:
        slot_rows, slot_cols = rows_u, cols_u
    lc = None
    for ref in term.lefts:
        c = _coeff_comp(inst, ref)
        lc = c if lc is None else _qmat_mul(lc, c)
    if lc is None:
        lc = _eye_comp(slot_rows)
    rc = None
    for ref in term.rights:
        c = _coeff_comp(inst, ref)
        rc = c if rc is None else _qmat_mul(rc, c)
    if rc is None:
        rc = _eye_comp(slot_cols)
    bl = _left_blocks(lc)
    br = _right_blocks(rc)
    t = np.einsum("ijab,klbc->ilajkc", bl, br)
    t = t.reshape(bl.shape[0] * br.shape[1] * 4, bl.shape[1] * br.shape[0] * 4)
    if term.star:
        t = t @ _eta_star_matrix(rows_u, cols_u, inst.eta.component)
    return t


def oracle_consistency(inst: ProblemInstance, tol: float = ORACLE_TOL,
                       cap: int = ORACLE_CAP) -> tuple[bool, float]:
    """Decide solvability by stacking all equations as one real least-squares
    problem over the unknowns' components.

    Returns (consistent, min_residual) with min_residual relative to the
    right-hand side norm. For the eta-Hermitian system the structural
    constraints Z = Z^eta* are appended as extra homogeneous rows.
    """
    inst.validate(tol)
    spec = inst.spec
    ushapes = inst.unknown_shapes()
    import math
    cols = {u: 4 * math.prod(l) * math.prod(r) for u, (l, r) in ushapes.items()}
    total = sum(cols.values())
    if total > cap:
        raise SizeCapExceeded(f"{total} unknown reals exceeds cap {cap}")
    order = list(spec.unknown_names)
    offsets = {}
    off = 0
    for u in order:
        offsets[u] = off
        off += cols[u]

    blocks = []
    rhs = []
    for eq in spec.equations:
        rt = inst.coefficients[eq.rhs]
        m = rt.mat.shape[0] * rt.mat.shape[1] * 4
        a = np.zeros((m, total))
        for term in eq.terms:
            tm = _term_matrix(inst, term, ushapes[term.unknown])
            a[:, offsets[term.unknown]:offsets[term.unknown] + cols[term.unknown]] += tm
        blocks.append(a)
        rhs.append(rt.mat.reshape(-1))
    if spec.needs_eta:
        for u in spec.eta_hermitian_unknowns:
            l, r = ushapes[u]
            n = cols[u]
            p = _eta_star_matrix(math.prod(l), math.prod(r), inst.eta.component)
            a = np.zeros((n, total))
            a[:, offsets[u]:offsets[u] + n] = np.eye(n) - p
            blocks.append(a)
            rhs.append(np.zeros(n))
    amat = np.vstack(blocks)
    bvec = np.concatenate(rhs)
    sol, *_ = np.linalg.lstsq(amat, bvec, rcond=None)
    res = float(np.linalg.norm(amat @ sol - bvec)) / (1.0 + float(np.linalg.norm(bvec)))
    return res <= tol, res
