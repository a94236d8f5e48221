"""Batch front end: check, solve, and verify problem files, and run the
built-in example.

Exit codes: 0 success/consistent, 1 usage or input error, 2 mathematically
inconsistent (or verification failure). The default tolerance can be
overridden with the QTSOLVE_TOL environment variable; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import QTSolveError
from .io import (canonical_dumps, load_params, load_problem, load_solution,
                 problem_to_json, solution_to_json, write_problem, write_solution)
from .solvers import SOLVERS
from .solvers.types import DEFAULT_TOL
from .verify import audit_conditions, residual

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INCONSISTENT = 2


def _default_tol() -> float:
    env = os.environ.get("QTSOLVE_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            print(f"warning: ignoring invalid QTSOLVE_TOL={env!r}", file=sys.stderr)
    return DEFAULT_TOL


def _add_tol_flags(p: argparse.ArgumentParser, rank: bool = True) -> None:
    p.add_argument("--tol", type=float, default=None,
                   help="condition/residual tolerance (default 1e-8 or QTSOLVE_TOL)")
    if rank:
        p.add_argument("--rank-tol", type=float, default=1e-12,
                       help="pseudoinverse rank-truncation factor (default 1e-12)")


def cmd_check(args) -> int:
    inst = load_problem(args.problem)
    tol = args.tol if args.tol is not None else _default_tol()
    report = audit_conditions(inst, tol=tol, rank_tol=args.rank_tol)
    print(canonical_dumps(report.to_dict()), end="")
    return EXIT_OK if report.consistent else EXIT_INCONSISTENT


def cmd_solve(args) -> int:
    inst = load_problem(args.problem)
    tol = args.tol if args.tol is not None else _default_tol()
    params = None
    if args.params and args.params != "zero":
        params = load_params(args.params)
    report, sol = SOLVERS[inst.system_kind](inst, params, tol=tol,
                                            rank_tol=args.rank_tol)
    print(canonical_dumps(report.to_dict()), end="")
    if sol is None:
        return EXIT_INCONSISTENT
    out = args.out or (str(Path(args.problem).with_suffix("")) + ".solution.json")
    write_solution(out, inst.system_kind, sol.unknowns, sol.params_used, inst.eta)
    print(f"solution written to {out}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = load_problem(args.problem)
    unknowns = load_solution(args.solution)
    tol = args.tol if args.tol is not None else _default_tol()
    report = residual(inst, unknowns)
    print(canonical_dumps(report.to_dict()), end="")
    return EXIT_OK if report.max_relative <= tol else EXIT_INCONSISTENT


def cmd_example(args) -> int:
    from .example import dataset_self_check, example_instance, example_solution

    dataset_self_check()
    inst = example_instance()
    sol = example_solution()
    if args.export:
        outdir = Path(args.export)
        outdir.mkdir(parents=True, exist_ok=True)
        write_problem(inst, outdir / "problem.json")
        write_solution(outdir / "solution.json", inst.system_kind, sol, {})
        print(f"wrote {outdir / 'problem.json'} and {outdir / 'solution.json'}")
        return EXIT_OK
    tol = args.tol if args.tol is not None else _default_tol()
    report = audit_conditions(inst, tol=tol)
    rlisted = residual(inst, sol)
    sreport, solved = SOLVERS["main15"](inst, None, tol=tol)
    rsolved = residual(inst, solved.unknowns) if solved else None
    rows = [
        ("conditions pass", report.consistent,
         f"{sum(c.passed for c in report.conditions)}/{len(report.conditions)}"),
        ("listed solution verifies", rlisted.max_relative <= 1e-12,
         f"max rel resid {rlisted.max_relative:.2e}"),
        ("solver solution verifies", rsolved is not None and rsolved.max_relative <= tol,
         f"max rel resid {rsolved.max_relative:.2e}" if rsolved else "no solution"),
    ]
    width = max(len(r[0]) for r in rows)
    ok = True
    for name, passed, detail in rows:
        ok &= bool(passed)
        print(f"{name:<{width}}  {'PASS' if passed else 'FAIL'}  {detail}")
    return EXIT_OK if ok else EXIT_INCONSISTENT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qtsolve",
        description="Check and solve coupled Sylvester-type quaternion tensor equations.")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("check", help="evaluate solvability conditions of a problem file")
    pc.add_argument("problem")
    _add_tol_flags(pc)
    pc.set_defaults(fn=cmd_check)

    ps = sub.add_parser("solve", help="solve a problem file and write the solution")
    ps.add_argument("problem")
    ps.add_argument("--params", default="zero",
                    help="free-parameter file, or 'zero' (default)")
    ps.add_argument("--out", default=None, help="solution output path")
    _add_tol_flags(ps)
    ps.set_defaults(fn=cmd_solve)

    pv = sub.add_parser("verify", help="check a solution file against a problem file")
    pv.add_argument("problem")
    pv.add_argument("solution")
    _add_tol_flags(pv, rank=False)
    pv.set_defaults(fn=cmd_verify)

    pe = sub.add_parser("example", help="export or run the built-in example")
    group = pe.add_mutually_exclusive_group(required=True)
    group.add_argument("--export", metavar="DIR", help="write the example as files")
    group.add_argument("--run", action="store_true",
                       help="run check+solve+verify end to end")
    _add_tol_flags(pe, rank=False)
    pe.set_defaults(fn=cmd_example)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except QTSolveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
