"""Problem definitions: the supported equation systems, instance containers,
shape validation, and planted-instance generators.

Every supported system is described once here as a list of equations whose
terms are products of named coefficients around a named unknown (optionally
through the eta-involution). This single table drives instance validation,
residual evaluation, right-hand-side generation for planted instances, and
the vectorized least-squares oracle.

The solvers themselves do NOT read these tables; their closed-form chains
are hand-coded, which is what makes residual checks against the tables a
meaningful cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EtaSymmetryViolation, ShapeMismatch
from .quat import EtaAxis
from .qtensor import (QTensor, add, eta_conj_transpose, frob_norm,
                      random_qtensor, scale, sub)
from .qtensor import einstein_product as ein

SYSTEM_KINDS = ("pair11", "eq31", "coupled14", "main15", "sys16", "eta17")


@dataclass(frozen=True)
class CoeffRef:
    """Reference to a named coefficient, optionally eta-conjugate-transposed."""

    name: str
    star: bool = False


def _refs(*specs) -> tuple[CoeffRef, ...]:
    out = []
    for s in specs:
        if isinstance(s, str):
            out.append(CoeffRef(s))
        else:
            out.append(CoeffRef(*s))
    return tuple(out)


@dataclass(frozen=True)
class Term:
    """One product lefts * unknown * rights; `star` applies the
    eta-involution to the unknown itself."""

    lefts: tuple[CoeffRef, ...]
    unknown: str
    rights: tuple[CoeffRef, ...]
    star: bool = False


@dataclass(frozen=True)
class Equation:
    name: str
    terms: tuple[Term, ...]
    rhs: str


def _t(lefts, unknown, rights, star=False) -> Term:
    return Term(_refs(*lefts), unknown, _refs(*rights), star)


# -- per-system tables -------------------------------------------------------
# coeff_shapes / unknown_shapes map names to (left_var, right_var); shape
# variables are unified against the concrete tensors at validation time.

@dataclass(frozen=True)
class SystemSpec:
    kind: str
    coeff_shapes: dict[str, tuple[str, str]]
    unknown_shapes: dict[str, tuple[str, str]]
    equations: tuple[Equation, ...]
    needs_eta: bool = False
    eta_hermitian_inputs: tuple[str, ...] = ()
    eta_hermitian_unknowns: tuple[str, ...] = ()

    @property
    def coefficient_names(self) -> tuple[str, ...]:
        return tuple(self.coeff_shapes)

    @property
    def unknown_names(self) -> tuple[str, ...]:
        return tuple(self.unknown_shapes)


_PAIR11 = SystemSpec(
    kind="pair11",
    coeff_shapes={"A": ("I", "J"), "B": ("K", "L"), "C": ("I", "G"),
                  "D": ("H", "L"), "E": ("I", "L")},
    unknown_shapes={"X": ("J", "K"), "Y": ("G", "H")},
    equations=(
        Equation("A*X*B + C*Y*D = E",
                 (_t(("A",), "X", ("B",)), _t(("C",), "Y", ("D",))), "E"),
    ),
)

_EQ31 = SystemSpec(
    kind="eq31",
    coeff_shapes={"A1": ("I", "J"), "B1": ("K", "L"), "A2": ("I", "G"),
                  "B2": ("H", "L"), "C3": ("G", "Q"), "D3": ("S", "K"),
                  "C4": ("G", "T"), "D4": ("P", "K"), "E1": ("I", "L")},
    unknown_shapes={"X1": ("J", "K"), "X2": ("G", "H"),
                    "X3": ("Q", "S"), "W": ("T", "P")},
    equations=(
        Equation("A1*X1*B1 + A2*X2*B2 + A2*(C3*X3*D3 + C4*W*D4)*B1 = E1",
                 (_t(("A1",), "X1", ("B1",)),
                  _t(("A2",), "X2", ("B2",)),
                  _t(("A2", "C3"), "X3", ("D3", "B1")),
                  _t(("A2", "C4"), "W", ("D4", "B1"))), "E1"),
    ),
)

_COUPLED14 = SystemSpec(
    kind="coupled14",
    coeff_shapes={"A1": ("I1", "J"), "B1": ("L", "K1"), "E1": ("I1", "K1"),
                  "A2": ("I2", "Qs"), "B2": ("S", "K2"), "E2": ("I2", "K2"),
                  "A3": ("I3", "Ps"), "E3": ("I3", "T"),
                  "B3": ("T", "K4"), "E4": ("Ps", "K4"),
                  "A4": ("I5", "J"), "B4": ("L", "K5"),
                  "C4": ("I5", "Ps"), "D4": ("T", "K5"), "P": ("I5", "K5"),
                  "A5": ("I6", "Qs"), "B5": ("S", "K6"),
                  "C5": ("I6", "Ps"), "D5": ("T", "K6"), "Q": ("I6", "K6")},
    unknown_shapes={"X": ("J", "L"), "Y": ("Qs", "S"), "Z": ("Ps", "T")},
    equations=(
        Equation("A1*X*B1 = E1", (_t(("A1",), "X", ("B1",)),), "E1"),
        Equation("A2*Y*B2 = E2", (_t(("A2",), "Y", ("B2",)),), "E2"),
        Equation("A3*Z = E3", (_t(("A3",), "Z", ()),), "E3"),
        Equation("Z*B3 = E4", (_t((), "Z", ("B3",)),), "E4"),
        Equation("A4*X*B4 + C4*Z*D4 = P",
                 (_t(("A4",), "X", ("B4",)), _t(("C4",), "Z", ("D4",))), "P"),
        Equation("A5*Y*B5 + C5*Z*D5 = Q",
                 (_t(("A5",), "Y", ("B5",)), _t(("C5",), "Z", ("D5",))), "Q"),
    ),
)

_MAIN15 = SystemSpec(
    kind="main15",
    # The inner-block row spaces Gx (X side) and Gy (Y side) are kept
    # independent; the published shape table reuses one symbol for both, but
    # nothing couples them and the two-sided specialization needs them free.
    coeff_shapes={
        "A1": ("I", "J"), "A2": ("I", "Q"), "A3": ("I", "P"),
        "A4": ("Aa", "Ee"), "A5": ("Cc", "V"), "A6": ("Aa", "Ee"),
        "A7": ("Aa", "Gx"), "A8": ("Cc", "V"), "A9": ("Cc", "Gy"),
        "B1": ("L", "K"), "B2": ("S", "K"), "B3": ("T", "K"),
        "B4": ("H", "Bb"), "B5": ("U", "Dd"), "B6": ("F", "Bb"),
        "B7": ("H", "Bb"), "B8": ("Dd", "R"), "B9": ("U", "R"),
        "C3": ("Gx", "J"), "C4": ("Gx", "P"), "D3": ("L", "F"), "D4": ("T", "F"),
        "H3": ("Gy", "Q"), "H4": ("Gy", "P"), "J3": ("S", "Dd"), "J4": ("T", "Dd"),
        "E1": ("I", "K"), "E2": ("I", "K"), "E3": ("I", "T"), "E4": ("P", "K"),
        "E5": ("Aa", "F"), "E6": ("Gx", "Bb"), "E7": ("Cc", "Dd"),
        "E8": ("Gy", "Dd"), "E9": ("Aa", "Bb"), "E10": ("Cc", "R"),
    },
    unknown_shapes={"X1": ("Ee", "F"), "X2": ("Gx", "H"), "X3": ("J", "L"),
                    "Y1": ("V", "Dd"), "Y2": ("Gy", "U"), "Y3": ("Q", "S"),
                    "W": ("P", "T")},
    equations=(
        Equation("A1*X3*B1 = E1", (_t(("A1",), "X3", ("B1",)),), "E1"),
        Equation("A2*Y3*B2 = E2", (_t(("A2",), "Y3", ("B2",)),), "E2"),
        Equation("A3*W = E3", (_t(("A3",), "W", ()),), "E3"),
        Equation("W*B3 = E4", (_t((), "W", ("B3",)),), "E4"),
        Equation("A4*X1 = E5", (_t(("A4",), "X1", ()),), "E5"),
        Equation("X2*B4 = E6", (_t((), "X2", ("B4",)),), "E6"),
        Equation("A5*Y1 = E7", (_t(("A5",), "Y1", ()),), "E7"),
        Equation("Y2*B5 = E8", (_t((), "Y2", ("B5",)),), "E8"),
        Equation("A6*X1*B6 + A7*X2*B7 + A7*(C3*X3*D3 + C4*W*D4)*B6 = E9",
                 (_t(("A6",), "X1", ("B6",)),
                  _t(("A7",), "X2", ("B7",)),
                  _t(("A7", "C3"), "X3", ("D3", "B6")),
                  _t(("A7", "C4"), "W", ("D4", "B6"))), "E9"),
        Equation("A8*Y1*B8 + A9*Y2*B9 + A9*(H3*Y3*J3 + H4*W*J4)*B8 = E10",
                 (_t(("A8",), "Y1", ("B8",)),
                  _t(("A9",), "Y2", ("B9",)),
                  _t(("A9", "H3"), "Y3", ("J3", "B8")),
                  _t(("A9", "H4"), "W", ("J4", "B8"))), "E10"),
    ),
)

_SYS16 = SystemSpec(
    kind="sys16",
    coeff_shapes={
        "A1": ("I", "J"), "A2": ("I", "Q"), "A3": ("I", "P"),
        "B1": ("L", "K"), "B2": ("S", "K"), "B3": ("T", "K"),
        "A6": ("Aa", "Ee"), "B7": ("H", "Bb"), "A8": ("Cc", "V"),
        "B9": ("U", "Dd"),
        "C3": ("Aa", "J"), "C4": ("Aa", "P"), "D3": ("L", "Bb"), "D4": ("T", "Bb"),
        "H3": ("Cc", "Q"), "H4": ("Cc", "P"), "J3": ("S", "Dd"), "J4": ("T", "Dd"),
        "E1": ("I", "K"), "E2": ("I", "K"), "E3": ("I", "T"), "E4": ("P", "K"),
        "E9": ("Aa", "Bb"), "E10": ("Cc", "Dd"),
    },
    unknown_shapes={"X1": ("Ee", "Bb"), "X2": ("Aa", "H"), "X3": ("J", "L"),
                    "Y1": ("V", "Dd"), "Y2": ("Cc", "U"), "Y3": ("Q", "S"),
                    "W": ("P", "T")},
    equations=(
        Equation("A1*X3*B1 = E1", (_t(("A1",), "X3", ("B1",)),), "E1"),
        Equation("A2*Y3*B2 = E2", (_t(("A2",), "Y3", ("B2",)),), "E2"),
        Equation("A3*W = E3", (_t(("A3",), "W", ()),), "E3"),
        Equation("W*B3 = E4", (_t((), "W", ("B3",)),), "E4"),
        Equation("A6*X1 + X2*B7 + C3*X3*D3 + C4*W*D4 = E9",
                 (_t(("A6",), "X1", ()),
                  _t((), "X2", ("B7",)),
                  _t(("C3",), "X3", ("D3",)),
                  _t(("C4",), "W", ("D4",))), "E9"),
        Equation("A8*Y1 + Y2*B9 + H3*Y3*J3 + H4*W*J4 = E10",
                 (_t(("A8",), "Y1", ()),
                  _t((), "Y2", ("B9",)),
                  _t(("H3",), "Y3", ("J3",)),
                  _t(("H4",), "W", ("J4",))), "E10"),
    ),
)

_ETA17 = SystemSpec(
    kind="eta17",
    coeff_shapes={
        "A1": ("I", "J"), "A2": ("I", "Q"), "A3": ("I", "P"),
        "A6": ("I", "Ee"), "A8": ("I", "V"),
        "C3": ("I", "J"), "C4": ("I", "P"), "H3": ("I", "Q"), "H4": ("I", "P"),
        "E1": ("I", "I"), "E2": ("I", "I"), "E3": ("I", "P"),
        "E9": ("I", "I"), "E10": ("I", "I"),
    },
    unknown_shapes={"X1": ("Ee", "I"), "Y1": ("V", "I"), "X3": ("J", "J"),
                    "Y3": ("Q", "Q"), "W": ("P", "P")},
    equations=(
        Equation("A1*X3*A1^n = E1",
                 (_t(("A1",), "X3", (("A1", True),)),), "E1"),
        Equation("A2*Y3*A2^n = E2",
                 (_t(("A2",), "Y3", (("A2", True),)),), "E2"),
        Equation("A3*W = E3", (_t(("A3",), "W", ()),), "E3"),
        Equation("A6*X1 + (A6*X1)^n + C3*X3*C3^n + C4*W*C4^n = E9",
                 (_t(("A6",), "X1", ()),
                  _t((), "X1", (("A6", True),), star=True),
                  _t(("C3",), "X3", (("C3", True),)),
                  _t(("C4",), "W", (("C4", True),))), "E9"),
        Equation("A8*Y1 + (A8*Y1)^n + H3*Y3*H3^n + H4*W*H4^n = E10",
                 (_t(("A8",), "Y1", ()),
                  _t((), "Y1", (("A8", True),), star=True),
                  _t(("H3",), "Y3", (("H3", True),)),
                  _t(("H4",), "W", (("H4", True),))), "E10"),
    ),
    needs_eta=True,
    eta_hermitian_inputs=("E1", "E2", "E9", "E10"),
    eta_hermitian_unknowns=("X3", "Y3", "W"),
)

SYSTEMS: dict[str, SystemSpec] = {
    s.kind: s for s in (_PAIR11, _EQ31, _COUPLED14, _MAIN15, _SYS16, _ETA17)
}


# -- problem instances -------------------------------------------------------


@dataclass
class ProblemInstance:
    """A concrete system: kind, coefficient tensors, and (for eta17) the
    involution axis. `validate` enforces name completeness and shape
    conformance against the system's equations."""

    system_kind: str
    coefficients: dict[str, QTensor]
    eta: EtaAxis | None = None

    @property
    def spec(self) -> SystemSpec:
        return SYSTEMS[self.system_kind]

    def coefficient_scale(self) -> float:
        return max(frob_norm(t) for t in self.coefficients.values())

    def validate(self, tol: float = 1e-8) -> None:
        if self.system_kind not in SYSTEMS:
            raise ShapeMismatch(f"unknown system kind {self.system_kind!r}")
        spec = self.spec
        missing = set(spec.coefficient_names) - set(self.coefficients)
        extra = set(self.coefficients) - set(spec.coefficient_names)
        if missing or extra:
            raise ShapeMismatch(
                f"{self.system_kind}: missing tensors {sorted(missing)}, "
                f"unexpected tensors {sorted(extra)}")
        if spec.needs_eta and self.eta is None:
            raise ShapeMismatch("eta17 requires an eta axis")
        env: dict[str, tuple[int, ...]] = {}

        def unify(var: str, shape: tuple[int, ...], name: str, side: str):
            if var in env:
                if env[var] != shape:
                    raise ShapeMismatch(
                        f"tensor {name}: {side} shape {shape} conflicts with "
                        f"{env[var]} required by earlier tensors")
            else:
                env[var] = shape

        for name, (lv, rv) in spec.coeff_shapes.items():
            t = self.coefficients[name]
            unify(lv, t.left, name, "left")
            unify(rv, t.right, name, "right")
        if spec.needs_eta:
            for name in spec.eta_hermitian_inputs:
                t = self.coefficients[name]
                d = frob_norm(sub(t, eta_conj_transpose(t, self.eta)))
                if d > tol * (1.0 + frob_norm(t)):
                    raise EtaSymmetryViolation(
                        f"{name} is not eta-Hermitian (defect {d:.3e})")

    def unknown_shapes(self) -> dict[str, tuple[tuple[int, ...], tuple[int, ...]]]:
        """Concrete (left, right) shapes of every unknown, inferred from the
        coefficients."""
        spec = self.spec
        env: dict[str, tuple[int, ...]] = {}
        for name, (lv, rv) in spec.coeff_shapes.items():
            t = self.coefficients[name]
            env[lv] = t.left
            env[rv] = t.right
        return {u: (env[lv], env[rv]) for u, (lv, rv) in spec.unknown_shapes.items()}


def _resolve(inst: ProblemInstance, ref: CoeffRef) -> QTensor:
    t = inst.coefficients[ref.name]
    if ref.star:
        return eta_conj_transpose(t, inst.eta)
    return t


def eval_term(inst: ProblemInstance, term: Term, unknowns: dict[str, QTensor]) -> QTensor:
    v = unknowns[term.unknown]
    if term.star:
        v = eta_conj_transpose(v, inst.eta)
    for ref in reversed(term.lefts):
        v = ein(_resolve(inst, ref), v)
    for ref in term.rights:
        v = ein(v, _resolve(inst, ref))
    return v


def eval_equation_lhs(inst: ProblemInstance, eq: Equation,
                      unknowns: dict[str, QTensor]) -> QTensor:
    out = eval_term(inst, eq.terms[0], unknowns)
    for term in eq.terms[1:]:
        out = add(out, eval_term(inst, term, unknowns))
    return out


# -- instance generation ------------------------------------------------------


def shape_env(kind: str, profile: str = "dims2") -> dict[str, tuple[int, ...]]:
    """Assign concrete shapes to a system's shape variables.

    'dims2' gives every variable the (2, 2) shape (fourth-order tensors);
    'matrix' gives order-(1,1) tensors with cycling distinct dims, which is
    the profile that catches transposed or misplaced factors.
    """
    spec = SYSTEMS[kind]
    names: list[str] = []
    for lv, rv in list(spec.coeff_shapes.values()) + list(spec.unknown_shapes.values()):
        for v in (lv, rv):
            if v not in names:
                names.append(v)
    if profile == "dims2":
        return {v: (2, 2) for v in names}
    if profile == "matrix":
        dims = [2, 3, 4]
        return {v: (dims[i % 3],) for i, v in enumerate(names)}
    raise ValueError(f"unknown profile {profile!r}")


@dataclass
class PlantedInstance:
    instance: ProblemInstance
    witness: dict[str, QTensor]


def _eta_symmetrize(t: QTensor, eta: EtaAxis) -> QTensor:
    return scale(add(t, eta_conj_transpose(t, eta)), 0.5)


def planted_instance(kind: str, rng: np.random.Generator,
                     profile: str = "dims2",
                     eta: EtaAxis | None = None) -> PlantedInstance:
    """Draw random coefficients and unknowns, then compute the right-hand
    sides so the instance is consistent with a known witness."""
    spec = SYSTEMS[kind]
    env = shape_env(kind, profile)
    if spec.needs_eta and eta is None:
        eta = EtaAxis.I
    rhs_names = {eq.rhs for eq in spec.equations}
    coeffs: dict[str, QTensor] = {}
    for name, (lv, rv) in spec.coeff_shapes.items():
        if name not in rhs_names:
            coeffs[name] = random_qtensor(rng, env[lv], env[rv])
    unknowns: dict[str, QTensor] = {}
    for name, (lv, rv) in spec.unknown_shapes.items():
        t = random_qtensor(rng, env[lv], env[rv])
        if name in spec.eta_hermitian_unknowns:
            t = _eta_symmetrize(t, eta)
        unknowns[name] = t
    inst = ProblemInstance(kind, coeffs, eta=eta)
    for eq in spec.equations:
        coeffs[eq.rhs] = eval_equation_lhs(inst, eq, unknowns)
    inst.validate()
    return PlantedInstance(inst, unknowns)


def perturb_rhs(planted: PlantedInstance, rng: np.random.Generator,
                which: str | None = None, magnitude: float = 1.0) -> ProblemInstance:
    """Copy a planted instance and knock one right-hand side off the
    consistent manifold by a random tensor of the given norm."""
    inst = planted.instance
    rhs_names = [eq.rhs for eq in inst.spec.equations]
    name = which or rhs_names[rng.integers(len(rhs_names))]
    t = inst.coefficients[name]
    noise = random_qtensor(rng, t.left, t.right)
    noise = scale(noise, magnitude / frob_norm(noise))
    coeffs = dict(inst.coefficients)
    coeffs[name] = add(t, noise)
    if inst.spec.needs_eta and name in inst.spec.eta_hermitian_inputs:
        coeffs[name] = _eta_symmetrize(coeffs[name], inst.eta)
    return ProblemInstance(inst.system_kind, coeffs, eta=inst.eta)
