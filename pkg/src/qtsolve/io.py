"""JSON schemas and canonical serialization for problems and solutions.

A tensor is {"left_shape": [...], "right_shape": [...], "entries":
[[w, x, y, z], ...]} with entries in linearization order. Serialization is
canonical: keys sorted, floats written with 17 significant digits, so equal
objects produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import SchemaError
from .quat import EtaAxis
from .qtensor import QTensor
from .systems import SYSTEMS, ProblemInstance

FILE_VERSION = 1


# -- canonical writer ---------------------------------------------------------


def _fmt_number(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def canonical_dumps(obj) -> str:
    """Deterministic JSON: sorted keys, fixed float formatting."""
    out: list[str] = []

    def emit(o):
        if o is None:
            out.append("null")
        elif isinstance(o, str):
            out.append(json.dumps(o))
        elif isinstance(o, bool) or isinstance(o, (int, float, np.integer, np.floating)):
            out.append(_fmt_number(o))
        elif isinstance(o, (list, tuple)):
            out.append("[")
            for i, item in enumerate(o):
                if i:
                    out.append(", ")
                emit(item)
            out.append("]")
        elif isinstance(o, dict):
            out.append("{")
            for i, key in enumerate(sorted(o)):
                if i:
                    out.append(", ")
                out.append(json.dumps(str(key)))
                out.append(": ")
                emit(o[key])
            out.append("}")
        else:
            raise TypeError(f"cannot serialize {type(o)!r}")

    emit(obj)
    return "".join(out) + "\n"


# -- tensors ------------------------------------------------------------------


def tensor_to_json(t: QTensor) -> dict:
    return {
        "left_shape": list(t.left),
        "right_shape": list(t.right),
        "entries": t.mat.reshape(-1, 4).tolist(),
    }


def tensor_from_json(obj, name: str) -> QTensor:
    if not isinstance(obj, dict):
        raise SchemaError(f"tensor {name}: expected an object")
    try:
        left = tuple(int(d) for d in obj["left_shape"])
        right = tuple(int(d) for d in obj["right_shape"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"tensor {name}: missing or malformed field ({exc})")
    n = math.prod(left) * math.prod(right)
    if not isinstance(entries, list) or len(entries) != n:
        raise SchemaError(
            f"tensor {name}: expected {n} entries for shape {left}x{right}, "
            f"got {len(entries) if isinstance(entries, list) else type(entries)}")
    comp = np.empty((n, 4))
    for i, e in enumerate(entries):
        if not isinstance(e, list) or len(e) != 4:
            raise SchemaError(f"tensor {name}: entry {i} is not a 4-array")
        comp[i] = [float(v) for v in e]
    return QTensor(left, right, comp.reshape(math.prod(left), math.prod(right), 4))


# -- problem files ------------------------------------------------------------


def problem_to_json(inst: ProblemInstance) -> dict:
    obj = {
        "version": FILE_VERSION,
        "system": inst.system_kind,
        "tensors": {k: tensor_to_json(v) for k, v in inst.coefficients.items()},
    }
    if inst.eta is not None:
        obj["eta"] = inst.eta.value
    return obj


def problem_from_json(obj) -> ProblemInstance:
    if not isinstance(obj, dict):
        raise SchemaError("problem file: expected a JSON object")
    if obj.get("version") != FILE_VERSION:
        raise SchemaError(f"problem file: unsupported version {obj.get('version')!r}")
    kind = obj.get("system")
    if kind not in SYSTEMS:
        raise SchemaError(f"problem file: unknown system {kind!r}")
    tensors = obj.get("tensors")
    if not isinstance(tensors, dict):
        raise SchemaError("problem file: missing tensors map")
    eta = None
    if "eta" in obj and obj["eta"] is not None:
        try:
            eta = EtaAxis(obj["eta"])
        except ValueError:
            raise SchemaError(f"problem file: invalid eta {obj['eta']!r}")
    coeffs = {name: tensor_from_json(t, name) for name, t in tensors.items()}
    return ProblemInstance(kind, coeffs, eta=eta)


def write_problem(inst: ProblemInstance, path: str | Path) -> None:
    Path(path).write_text(canonical_dumps(problem_to_json(inst)))


def load_problem(path: str | Path) -> ProblemInstance:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read problem file {path}: {exc}")
    return problem_from_json(obj)


# -- solution and parameter files ----------------------------------------------


def solution_to_json(kind: str, unknowns: Mapping[str, QTensor],
                     params_used: Mapping[str, QTensor],
                     eta: EtaAxis | None = None) -> dict:
    obj = {
        "version": FILE_VERSION,
        "system": kind,
        "unknowns": {k: tensor_to_json(v) for k, v in unknowns.items()},
        "params_used": {k: tensor_to_json(v) for k, v in params_used.items()},
    }
    if eta is not None:
        obj["eta"] = eta.value
    return obj


def solution_from_json(obj) -> dict[str, QTensor]:
    if not isinstance(obj, dict) or not isinstance(obj.get("unknowns"), dict):
        raise SchemaError("solution file: missing unknowns map")
    return {name: tensor_from_json(t, name) for name, t in obj["unknowns"].items()}


def write_solution(path: str | Path, kind: str, unknowns, params_used,
                   eta: EtaAxis | None = None) -> None:
    Path(path).write_text(
        canonical_dumps(solution_to_json(kind, unknowns, params_used, eta)))


def load_solution(path: str | Path) -> dict[str, QTensor]:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read solution file {path}: {exc}")
    return solution_from_json(obj)


def load_params(path: str | Path) -> dict[str, QTensor]:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read parameter file {path}: {exc}")
    tensors = obj.get("tensors") if isinstance(obj, dict) else None
    if not isinstance(tensors, dict):
        raise SchemaError("parameter file: expected {'version': 1, 'tensors': {...}}")
    return {name: tensor_from_json(t, name) for name, t in tensors.items()}
