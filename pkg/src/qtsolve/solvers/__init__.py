"""System solvers: consistency checks plus closed-form general solutions."""

from typing import Mapping

from ..qtensor import QTensor
from ..systems import ProblemInstance
from .basic import solve_eq31, solve_pair, solver_options
from .coupled import CoupledEngine, CoupledInputs, CoupledLabels
from .main import solve_eta17, solve_main15, solve_sys16, solve_sys16_direct
from .types import DEFAULT_TOL, ConditionCheck, GeneralSolution, ParamBag, SolveReport


def solve_coupled14(inst: ProblemInstance,
                    params: Mapping[str, QTensor] | None = None,
                    tol: float = DEFAULT_TOL, rank_tol: float = 1e-12):
    """Solve the coupled three-unknown system directly via the engine."""
    inst.validate(tol)
    opts = solver_options(inst, rank_tol)
    c = inst.coefficients
    eng = CoupledEngine(
        CoupledInputs(c["A1"], c["B1"], c["E1"], c["A2"], c["B2"], c["E2"],
                      c["A3"], c["E3"], c["B3"], c["E4"],
                      c["A4"], c["B4"], c["C4"], c["D4"], c["P"],
                      c["A5"], c["B5"], c["C5"], c["D5"], c["Q"]), opts)
    report = SolveReport.from_conditions(eng.conditions(), tol)
    if not report.consistent:
        return report, None
    bag = ParamBag(params)
    unknowns = eng.solve(bag)
    inter = eng.intermediates()
    inter.update(eng.derived)
    return report, GeneralSolution(unknowns, bag.used, inter)


SOLVERS = {
    "pair11": solve_pair,
    "eq31": solve_eq31,
    "coupled14": solve_coupled14,
    "main15": solve_main15,
    "sys16": solve_sys16,
    "eta17": solve_eta17,
}


def solve(inst: ProblemInstance, params=None, tol: float = DEFAULT_TOL,
          rank_tol: float = 1e-12):
    """Dispatch to the solver for the instance's system kind."""
    return SOLVERS[inst.system_kind](inst, params, tol, rank_tol)


__all__ = [
    "solve", "SOLVERS", "solve_pair", "solve_eq31", "solve_coupled14",
    "solve_main15", "solve_sys16", "solve_sys16_direct", "solve_eta17",
    "SolveReport", "ConditionCheck", "GeneralSolution", "ParamBag",
    "CoupledEngine", "CoupledInputs", "CoupledLabels", "DEFAULT_TOL",
]
