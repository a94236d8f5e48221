"""Report, solution, and free-parameter containers shared by all solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..errors import ShapeMismatch
from ..qtensor import QTensor, frob_norm, zero

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class ConditionCheck:
    """One solvability condition: the Frobenius norm of a tensor that the
    theory requires to vanish, against a scale-aware threshold."""

    name: str
    lhs_norm: float
    threshold: float
    passed: bool


@dataclass(frozen=True)
class SolveReport:
    conditions: tuple[ConditionCheck, ...]
    consistent: bool
    tol: float

    @classmethod
    def from_conditions(cls, conds, tol: float) -> "SolveReport":
        """`conds` is a list of (name, value_tensor, scale) triples; a
        condition passes iff ||value|| <= tol * (1 + scale)."""
        checks = []
        for name, value, scl in conds:
            norm = frob_norm(value)
            threshold = tol * (1.0 + scl)
            checks.append(ConditionCheck(name, norm, threshold, norm <= threshold))
        return cls(tuple(checks), all(c.passed for c in checks), tol)

    def to_dict(self) -> dict:
        return {
            "tol": self.tol,
            "consistent": self.consistent,
            "conditions": [
                {"name": c.name, "lhs_norm": c.lhs_norm,
                 "threshold": c.threshold, "pass": c.passed}
                for c in self.conditions
            ],
        }


class ParamBag:
    """Named free-parameter store with zero defaults.

    Solvers request each parameter with its conforming shape; a missing entry
    materializes as the zero tensor. Everything handed out is recorded so the
    caller can see the full slot -> tensor map afterwards.
    """

    def __init__(self, supplied: Mapping[str, QTensor] | None = None):
        self._supplied = dict(supplied or {})
        self.used: dict[str, QTensor] = {}

    def get(self, name: str, left, right) -> QTensor:
        t = self._supplied.get(name)
        if t is None:
            t = zero(left, right)
        elif t.left != tuple(left) or t.right != tuple(right):
            raise ShapeMismatch(
                f"parameter {name}: got {t.left}x{t.right}, need {tuple(left)}x{tuple(right)}")
        self.used[name] = t
        return t

    def unknown_names(self, known: set[str]) -> set[str]:
        return set(self._supplied) - known


@dataclass
class GeneralSolution:
    """Solved unknowns plus the parameter values and intermediates that
    produced them."""

    unknowns: dict[str, QTensor]
    params_used: dict[str, QTensor] = field(default_factory=dict)
    intermediates: dict[str, QTensor] = field(default_factory=dict)
