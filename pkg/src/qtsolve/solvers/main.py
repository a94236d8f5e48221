"""Solvers for the seven-unknown system, its two-sided specialization, and
the eta-Hermitian variant.

The seven-unknown system peels into: four one-sided equations fixing the
particular parts of X1, X2, Y1, Y2; two four-term equations whose elimination
produces the hatted pair equations; and a coupled three-unknown core in
(X3, Y3, W) handled by CoupledEngine. The specialization injects zero and
identity coefficients and reuses the same path; the eta-Hermitian system is
solved through its structured auxiliary system followed by symmetrization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..errors import EtaSymmetryViolation
from ..qlinalg import PinvOptions, pinv, proj_left, proj_right
from ..qtensor import (QTensor, add, eta_conj_transpose, identity, scale,
                       sub, zero)
from ..systems import ProblemInstance
from .basic import _named, solver_options
from .coupled import CoupledEngine, CoupledInputs, CoupledLabels
from .primitives import PairOperators, chain, sum_solve
from .types import DEFAULT_TOL, GeneralSolution, ParamBag, SolveReport

MAIN15_LABELS = CoupledLabels(a4="Ahat4", b4="Bhat4", c4="Chat4", d4="Dhat4",
                              p="G", a5="Ahat5", b5="Bhat5", c5="Chat5",
                              d5="Dhat5", q="F")


class Main15Chain:
    """Hatted reductions of the two four-term equations plus the coupled
    core for (X3, Y3, W)."""

    def __init__(self, inst: ProblemInstance, opts: PinvOptions | None):
        c = inst.coefficients
        self.c = c
        self.opts = opts
        self.a4p, self.b4p = pinv(c["A4"], opts), pinv(c["B4"], opts)
        self.a5p, self.b5p = pinv(c["A5"], opts), pinv(c["B5"], opts)
        self.ahat6 = chain(c["A6"], proj_left(c["A4"], opts))
        self.bhat7 = chain(proj_right(c["B4"], opts), c["B7"])
        self.ehat9 = sub(sub(c["E9"], chain(c["A6"], self.a4p, c["E5"], c["B6"])),
                         chain(c["A7"], c["E6"], self.b4p, c["B7"]))
        self.pair9 = PairOperators(self.ahat6, c["B6"], c["A7"], self.bhat7, opts)
        lbh7 = proj_left(self.bhat7, opts)
        self.ahat4 = chain(self.pair9.m, c["C3"])
        self.chat4 = chain(self.pair9.m, c["C4"])
        self.bhat4 = chain(c["D3"], c["B6"], lbh7)
        self.dhat4 = chain(c["D4"], c["B6"], lbh7)
        self.phat = chain(proj_right(self.ahat6, opts), self.ehat9, lbh7)

        self.ahat8 = chain(c["A8"], proj_left(c["A5"], opts))
        self.bhat9 = chain(proj_right(c["B5"], opts), c["B9"])
        self.ehat10 = sub(sub(c["E10"], chain(c["A8"], self.a5p, c["E7"], c["B8"])),
                          chain(c["A9"], c["E8"], self.b5p, c["B9"]))
        self.pair10 = PairOperators(self.ahat8, c["B8"], c["A9"], self.bhat9, opts)
        lbh9 = proj_left(self.bhat9, opts)
        self.ahat5 = chain(self.pair10.m, c["H3"])
        self.chat5 = chain(self.pair10.m, c["H4"])
        self.bhat5 = chain(c["J3"], c["B8"], lbh9)
        self.dhat5 = chain(c["J4"], c["B8"], lbh9)
        self.qhat = chain(proj_right(self.ahat8, opts), self.ehat10, lbh9)

        self.engine = CoupledEngine(
            CoupledInputs(c["A1"], c["B1"], c["E1"], c["A2"], c["B2"], c["E2"],
                          c["A3"], c["E3"], c["B3"], c["E4"],
                          self.ahat4, self.bhat4, self.chat4, self.dhat4, self.phat,
                          self.ahat5, self.bhat5, self.chat5, self.dhat5, self.qhat),
            opts, MAIN15_LABELS)

    def conditions(self):
        from .primitives import scale_of
        c, opts = self.c, self.opts
        ra4 = proj_right(c["A4"], opts)
        lb4 = proj_left(c["B4"], opts)
        ra5 = proj_right(c["A5"], opts)
        lb5 = proj_left(c["B5"], opts)
        conds = [
            ("R_{A4}*E5", chain(ra4, c["E5"]), scale_of(ra4, c["E5"])),
            ("E6*L_{B4}", chain(c["E6"], lb4), scale_of(c["E6"], lb4)),
            ("R_{A5}*E7", chain(ra5, c["E7"]), scale_of(ra5, c["E7"])),
            ("E8*L_{B5}", chain(c["E8"], lb5), scale_of(c["E8"], lb5)),
        ]
        conds += _named(("R_{M11}*R_{Ahat6}*Ehat9", "Ehat9*L_{B6}*L_{N11}",
                         "R_{A7}*Ehat9*L_{B6}"),
                        self.pair9.outer_conditions(self.ehat9))
        conds += _named(("R_{M22}*R_{Ahat8}*Ehat10", "Ehat10*L_{B8}*L_{N22}",
                         "R_{A9}*Ehat10*L_{B8}"),
                        self.pair10.outer_conditions(self.ehat10))
        conds += self.engine.conditions()
        return conds

    def intermediates(self):
        ivs = {
            "Ahat6": self.ahat6, "Bhat7": self.bhat7, "Ehat9": self.ehat9,
            "M11": self.pair9.m, "N11": self.pair9.n, "S11": self.pair9.s,
            "Ahat4": self.ahat4, "Chat4": self.chat4, "Bhat4": self.bhat4,
            "Dhat4": self.dhat4, "Phat": self.phat,
            "Ahat8": self.ahat8, "Bhat9": self.bhat9, "Ehat10": self.ehat10,
            "M22": self.pair10.m, "N22": self.pair10.n, "S22": self.pair10.s,
            "Ahat5": self.ahat5, "Chat5": self.chat5, "Bhat5": self.bhat5,
            "Dhat5": self.dhat5, "Qhat": self.qhat,
        }
        ivs.update(self.engine.intermediates())
        return ivs

    def solve(self, bag: ParamBag):
        c, opts = self.c, self.opts
        core = self.engine.solve(bag)
        x3, y3, w = core["X"], core["Y"], core["Z"]
        inner1 = add(chain(c["C3"], x3, c["D3"]), chain(c["C4"], w, c["D4"]))
        egrave1 = sub(self.ehat9, chain(c["A7"], inner1, c["B6"]))
        v11, v22 = self.pair9.solve_from_bag(
            egrave1, bag, ("T11", "T21", "T31", "T41", "T51"))
        x1 = add(chain(self.a4p, c["E5"]), chain(proj_left(c["A4"], opts), v11))
        x2 = add(chain(c["E6"], self.b4p), chain(v22, proj_right(c["B4"], opts)))
        inner2 = add(chain(c["H3"], y3, c["J3"]), chain(c["H4"], w, c["J4"]))
        egrave2 = sub(self.ehat10, chain(c["A9"], inner2, c["B8"]))
        v33, v44 = self.pair10.solve_from_bag(
            egrave2, bag, ("J11", "J21", "J31", "J41", "J51"))
        y1 = add(chain(self.a5p, c["E7"]), chain(proj_left(c["A5"], opts), v33))
        y2 = add(chain(c["E8"], self.b5p), chain(v44, proj_right(c["B5"], opts)))
        unknowns = {"X1": x1, "X2": x2, "X3": x3,
                    "Y1": y1, "Y2": y2, "Y3": y3, "W": w}
        extra = {"Egrave1": egrave1, "Egrave2": egrave2,
                 "V11": v11, "V22": v22, "V33": v33, "V44": v44}
        extra.update(self.engine.derived)
        return unknowns, extra


def main15_conditions(inst: ProblemInstance, opts: PinvOptions):
    return Main15Chain(inst, opts).conditions()


def solve_main15(inst: ProblemInstance, params: Mapping[str, QTensor] | None = None,
                 tol: float = DEFAULT_TOL, rank_tol: float = 1e-12):
    """Check all solvability conditions of the seven-unknown system and, when
    they pass, build the general solution for the supplied free parameters."""
    inst.validate(tol)
    opts = solver_options(inst, rank_tol)
    chain15 = Main15Chain(inst, opts)
    report = SolveReport.from_conditions(chain15.conditions(), tol)
    if not report.consistent:
        return report, None
    bag = ParamBag(params)
    unknowns, extra = chain15.solve(bag)
    inter = chain15.intermediates()
    inter.update(extra)
    return report, GeneralSolution(unknowns, bag.used, inter)


# -- the two-sided specialization ---------------------------------------------


def _materialize_sys16(inst: ProblemInstance) -> ProblemInstance:
    """Inject the degenerate coefficients: the one-sided blocks get zero
    coefficients (with conforming shapes) and the four-term equations get
    identity outer factors."""
    c = inst.coefficients
    aa = c["A6"].left
    bb = c["E9"].right
    cc = c["A8"].left
    dd = c["E10"].right
    coeffs = dict(
        A1=c["A1"], B1=c["B1"], E1=c["E1"],
        A2=c["A2"], B2=c["B2"], E2=c["E2"],
        A3=c["A3"], E3=c["E3"], B3=c["B3"], E4=c["E4"],
        A4=zero(c["A6"].left, c["A6"].right), E5=zero(aa, bb),
        B4=zero(c["B7"].left, c["B7"].right), E6=zero(aa, bb),
        A5=zero(c["A8"].left, c["A8"].right), E7=zero(cc, dd),
        B5=zero(c["B9"].left, c["B9"].right), E8=zero(cc, dd),
        A6=c["A6"], B6=identity(bb), A7=identity(aa), B7=c["B7"],
        A8=c["A8"], B8=identity(dd), A9=identity(cc), B9=c["B9"],
        C3=c["C3"], C4=c["C4"], D3=c["D3"], D4=c["D4"],
        H3=c["H3"], H4=c["H4"], J3=c["J3"], J4=c["J4"],
        E9=c["E9"], E10=c["E10"],
    )
    return ProblemInstance("main15", coeffs, eta=inst.eta)


def sys16_conditions(inst: ProblemInstance, opts: PinvOptions):
    return main15_conditions(_materialize_sys16(inst), opts)


def solve_sys16(inst: ProblemInstance, params: Mapping[str, QTensor] | None = None,
                tol: float = DEFAULT_TOL, rank_tol: float = 1e-12):
    """Solve the specialization by delegating to the seven-unknown path on
    the materialized instance."""
    inst.validate(tol)
    full = _materialize_sys16(inst)
    return solve_main15(full, params, tol, rank_tol)


def solve_sys16_direct(inst: ProblemInstance,
                       params: Mapping[str, QTensor] | None = None,
                       tol: float = DEFAULT_TOL, rank_tol: float = 1e-12):
    """Alternate route: same (X3, Y3, W) core, but X1, X2 and Y1, Y2 from the
    explicit sum-form solutions of the specialized equations. Used to
    cross-check the delegation path."""
    inst.validate(tol)
    full = _materialize_sys16(inst)
    opts = solver_options(full, rank_tol)
    chain15 = Main15Chain(full, opts)
    report = SolveReport.from_conditions(chain15.conditions(), tol)
    if not report.consistent:
        return report, None
    bag = ParamBag(params)
    core = chain15.engine.solve(bag)
    x3, y3, w = core["X"], core["Y"], core["Z"]
    c = inst.coefficients
    egrave1 = sub(c["E9"], add(chain(c["C3"], x3, c["D3"]), chain(c["C4"], w, c["D4"])))
    x1, x2 = sum_solve(c["A6"], c["B7"], egrave1,
                       bag.get("T41", c["A6"].right, egrave1.right),
                       bag.get("That21", egrave1.left, c["B7"].left),
                       bag.get("T31", egrave1.left, c["B7"].left), opts)
    egrave2 = sub(c["E10"], add(chain(c["H3"], y3, c["J3"]), chain(c["H4"], w, c["J4"])))
    y1, y2 = sum_solve(c["A8"], c["B9"], egrave2,
                       bag.get("J41", c["A8"].right, egrave2.right),
                       bag.get("Jhat21", egrave2.left, c["B9"].left),
                       bag.get("J31", egrave2.left, c["B9"].left), opts)
    unknowns = {"X1": x1, "X2": x2, "X3": x3, "Y1": y1, "Y2": y2, "Y3": y3, "W": w}
    return report, GeneralSolution(unknowns, bag.used, chain15.engine.intermediates())


# -- the eta-Hermitian system --------------------------------------------------


def _auxiliary_sys16(inst: ProblemInstance) -> ProblemInstance:
    """The unconstrained companion system: every right-side coefficient is the
    eta-conjugate-transpose of its left partner."""
    c = inst.coefficients
    eta = inst.eta

    def star(t: QTensor) -> QTensor:
        return eta_conj_transpose(t, eta)

    coeffs = dict(
        A1=c["A1"], B1=star(c["A1"]), E1=c["E1"],
        A2=c["A2"], B2=star(c["A2"]), E2=c["E2"],
        A3=c["A3"], E3=c["E3"], B3=star(c["A3"]), E4=star(c["E3"]),
        A6=c["A6"], B7=star(c["A6"]),
        A8=c["A8"], B9=star(c["A8"]),
        C3=c["C3"], D3=star(c["C3"]), C4=c["C4"], D4=star(c["C4"]),
        H3=c["H3"], J3=star(c["H3"]), H4=c["H4"], J4=star(c["H4"]),
        E9=c["E9"], E10=c["E10"],
    )
    return ProblemInstance("sys16", coeffs, eta=eta)


def eta17_conditions(inst: ProblemInstance, opts: PinvOptions):
    return sys16_conditions(_auxiliary_sys16(inst), opts)


def solve_eta17(inst: ProblemInstance, params: Mapping[str, QTensor] | None = None,
                tol: float = DEFAULT_TOL, rank_tol: float = 1e-12):
    """Solve the eta-Hermitian system: solve the auxiliary companion system,
    then average each unknown with its involution image. X3, Y3, W come out
    exactly eta-Hermitian by construction."""
    inst.validate(tol)  # raises EtaSymmetryViolation on bad inputs
    eta = inst.eta
    aux = _auxiliary_sys16(inst)
    report, sol = solve_sys16(aux, params, tol, rank_tol)
    if sol is None:
        return report, None

    def sym(t: QTensor) -> QTensor:
        return scale(add(t, eta_conj_transpose(t, eta)), 0.5)

    u = sol.unknowns
    unknowns = {
        "X1": scale(add(u["X1"], eta_conj_transpose(u["X2"], eta)), 0.5),
        "Y1": scale(add(u["Y1"], eta_conj_transpose(u["Y2"], eta)), 0.5),
        "X3": sym(u["X3"]),
        "Y3": sym(u["Y3"]),
        "W": sym(u["W"]),
    }
    return report, GeneralSolution(unknowns, sol.params_used, sol.intermediates)
