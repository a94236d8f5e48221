"""Solvers for the single-equation systems: the two-unknown pair equation
and its four-unknown generalization."""

from __future__ import annotations

from typing import Mapping

from ..qlinalg import PinvOptions, pinv, proj_left, proj_right
from ..qtensor import QTensor, add, sub
from ..systems import ProblemInstance
from .primitives import PairOperators, chain, scale_of
from .types import DEFAULT_TOL, GeneralSolution, ParamBag, SolveReport

# Absolute singular-value floor, relative to the instance's coefficient
# scale. Intermediates that are exact zeros in exact arithmetic arrive as
# rounding noise; without the floor their pseudoinverses explode.
ZERO_FLOOR_FACTOR = 1e-9


def solver_options(inst: ProblemInstance, rank_tol: float) -> PinvOptions:
    return PinvOptions(rank_tol_factor=rank_tol,
                       zero_floor=ZERO_FLOOR_FACTOR * (1.0 + inst.coefficient_scale()))


def _named(names, raw):
    return [(n, v, s) for n, (v, s) in zip(names, raw)]


def pair11_conditions(inst: ProblemInstance, opts: PinvOptions):
    c = inst.coefficients
    ops = PairOperators(c["A"], c["B"], c["C"], c["D"], opts)
    names = ("R_{P}*R_{A}*E", "E*L_{B}*L_{Q}", "R_{A}*E*L_{D}", "R_{C}*E*L_{B}")
    return _named(names, ops.conditions(c["E"])), ops


def solve_pair(inst: ProblemInstance, params: Mapping[str, QTensor] | None = None,
               tol: float = DEFAULT_TOL, rank_tol: float = 1e-12):
    """A X B + C Y D = E: four conditions, then the closed-form (X, Y)."""
    inst.validate(tol)
    opts = solver_options(inst, rank_tol)
    conds, ops = pair11_conditions(inst, opts)
    report = SolveReport.from_conditions(conds, tol)
    if not report.consistent:
        return report, None
    bag = ParamBag(params)
    x, y = ops.solve_from_bag(inst.coefficients["E"], bag, ("U1", "U2", "U3", "U4", "U5"))
    inter = {"P": ops.m, "Q": ops.n, "S": ops.s}
    return report, GeneralSolution({"X": x, "Y": y}, bag.used, inter)


class _Eq31Chain:
    """Operators for A1 X1 B1 + A2 X2 B2 + A2 (C3 X3 D3 + C4 W D4) B1 = E1.

    The outer (X1, X2) pair has operators M1, N1, S1; eliminating it leaves
    the hat pair equation Ahat1 X3 Bhat1 + Ahat2 W Bhat2 = Ehat1.
    """

    def __init__(self, inst: ProblemInstance, opts):
        c = inst.coefficients
        self.c = c
        self.opts = opts
        self.outer = PairOperators(c["A1"], c["B1"], c["A2"], c["B2"], opts)
        m1 = self.outer.m
        lb2 = proj_left(c["B2"], opts)
        self.ahat1 = chain(m1, c["C3"])
        self.ahat2 = chain(m1, c["C4"])
        self.bhat1 = chain(c["D3"], c["B1"], lb2)
        self.bhat2 = chain(c["D4"], c["B1"], lb2)
        self.ehat1 = chain(proj_right(c["A1"], opts), c["E1"], lb2)
        self.hat = PairOperators(self.ahat1, self.bhat1, self.ahat2, self.bhat2, opts)

    def conditions(self):
        c = self.c
        conds = _named(("R_{M1}*R_{A1}*E1", "E1*L_{B1}*L_{N1}", "R_{A2}*E1*L_{B1}"),
                       self.outer.outer_conditions(c["E1"]))
        hat4 = self.hat.conditions(self.ehat1)
        conds += _named(("R_{Mhat1}*R_{Ahat1}*Ehat1", "Ehat1*L_{Bhat1}*L_{Nhat1}",
                         "R_{Ahat1}*Ehat1*L_{Bhat2}", "R_{Ahat2}*Ehat1*L_{Bhat1}"),
                        hat4)
        return conds

    def intermediates(self):
        return {"M1": self.outer.m, "N1": self.outer.n, "S1": self.outer.s,
                "Ahat1": self.ahat1, "Ahat2": self.ahat2,
                "Bhat1": self.bhat1, "Bhat2": self.bhat2, "Ehat1": self.ehat1,
                "Mhat1": self.hat.m, "Nhat1": self.hat.n, "Shat1": self.hat.s}


def eq31_conditions(inst: ProblemInstance, opts: PinvOptions):
    return _Eq31Chain(inst, opts).conditions()


def solve_eq31(inst: ProblemInstance, params: Mapping[str, QTensor] | None = None,
               tol: float = DEFAULT_TOL, rank_tol: float = 1e-12):
    """Solve the four-unknown equation: (X3, W) from the hat pair, then
    back-substitute and solve the reduced (X1, X2) pair."""
    inst.validate(tol)
    opts = solver_options(inst, rank_tol)
    ch = _Eq31Chain(inst, opts)
    report = SolveReport.from_conditions(ch.conditions(), tol)
    if not report.consistent:
        return report, None
    c = inst.coefficients
    bag = ParamBag(params)
    x3, w = ch.hat.solve_from_bag(
        ch.ehat1, bag, ("Uhat1", "Uhat2", "Uhat3", "Uhat4", "Uhat5"))
    inner = add(chain(c["C3"], x3, c["D3"]), chain(c["C4"], w, c["D4"]))
    egrave1 = sub(c["E1"], chain(c["A2"], inner, c["B1"]))
    x1, x2 = ch.outer.solve_from_bag(egrave1, bag, ("U1", "U2", "U3", "U4", "U5"))
    inter = ch.intermediates()
    inter["Egrave1"] = egrave1
    return report, GeneralSolution({"X1": x1, "X2": x2, "X3": x3, "W": w},
                                   bag.used, inter)
