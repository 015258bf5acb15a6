"""Command-line front end: ``svfactor <command> ...``.

Exit codes: 0 success, 2 parse error, 3 precondition violation,
4 obstruction unsatisfiable, 5 infertile or invalid solution.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable

from .core import DimensionError, Matrix, adjugate, det, format_scalar
from .detident import det_via_decomposition
from .factorization import (
    ObstructionMismatch,
    full_factor_search,
    reconstruct_gram,
)
from .latin import colatin_check, colatin_check_fast, corner_latin, hankel_latin
from .matrixio import ParseError, matrix_to_dict, read_matrix, vector_to_list
from .obstruction import (
    Mode,
    ObstructionSolution,
    solve_gram,
    solve_square,
    weight_balance_gram,
    weight_balance_square,
)
from .svdecomp import decompose
from .verify import identity_report

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_UNSAT, EXIT_INFERTILE = 0, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _emit(args, doc: dict, text: str) -> None:
    if args.json:
        doc = {"command": args.command, **doc}
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load(path: str, *, square: bool = True, symmetric: bool = False) -> Matrix:
    m = read_matrix(path)
    if square and not m.is_square:
        raise CliError(f"expected a square matrix, got {m.rows}x{m.cols}", EXIT_PRECONDITION)
    if symmetric and not m.is_symmetric():
        raise CliError("matrix is not symmetric", EXIT_PRECONDITION)
    return m


def _vec(v) -> str:
    return "(" + ", ".join(format_scalar(x) for x in v) + ")"


def cmd_decompose(args) -> int:
    m = _load(args.matrix)
    p = decompose(m)
    text = "\n".join(
        [
            f"weight: {format_scalar(p.weight)}",
            f"a: {_vec(p.a)}",
            f"b: {_vec(p.b)}",
            "m0:",
            str(p.m0),
        ]
    )
    doc = {
        "weight": format_scalar(p.weight),
        "a": vector_to_list(p.a),
        "b": vector_to_list(p.b),
        "m0": matrix_to_dict(p.m0),
    }
    _emit(args, doc, text)
    return EXIT_OK


def _form(args, m: Matrix):
    mode = Mode(args.mode)
    if mode is Mode.GRAM:
        if not m.is_symmetric():
            raise CliError("Gram mode needs a symmetric matrix", EXIT_PRECONDITION)
        return weight_balance_gram(m)
    return weight_balance_square(m)


def cmd_obstruct(args) -> int:
    m = _load(args.matrix)
    f = _form(args, m)
    text = str(f) + ("" if f.satisfiable else "\n# unsatisfiable")
    _emit(args, {"form": f.to_dict()}, text)
    return EXIT_OK if f.satisfiable else EXIT_UNSAT


def cmd_solve(args) -> int:
    m = _load(args.matrix)
    f = _form(args, m)
    if f.mode is Mode.GRAM:
        sols = solve_gram(f, include_negative_w=args.all_signs, workers=args.threads)
    else:
        if args.box is None:
            raise CliError("square mode needs --box", EXIT_PRECONDITION)
        sols = solve_square(f, args.box)
    if args.count:
        _emit(args, {"count": len(sols)}, str(len(sols)))
    else:
        _emit(
            args,
            {"count": len(sols), "solutions": [list(s.free) for s in sols]},
            "\n".join(str(s) for s in sols),
        )
    return EXIT_OK


def _parse_solution(text: str, n: int) -> ObstructionSolution:
    try:
        vals = [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise CliError(f"bad solution {text!r}", EXIT_PARSE) from None
    if len(vals) != n:
        raise CliError(f"solution needs {n} integers (w x1 .. x{n - 1})", EXIT_PRECONDITION)
    x = tuple(vals[1:])
    return ObstructionSolution(vals[0], x + (-sum(x),))


def cmd_factor(args) -> int:
    m = _load(args.matrix, symmetric=True)
    if args.solution is not None:
        sol = _parse_solution(args.solution, m.rows)
        try:
            found = reconstruct_gram(m, sol)
        except ObstructionMismatch as e:
            raise CliError(str(e), EXIT_INFERTILE) from None
        doc = {"solution": list(sol.free), "factors": [matrix_to_dict(f.n_matrix) for f in found]}
        _emit(args, doc, "\n\n".join(str(f.n_matrix) for f in found) or "# no factor")
        return EXIT_OK if found else EXIT_INFERTILE
    classes, stats = full_factor_search(m, workers=args.threads)
    lines = [stats.summary()]
    for c in classes:
        lines.append("")
        lines.append(f"# class of {len(c.members)} factors")
        lines.append(str(c.canonical))
    doc = {
        "solutions": stats.solutions,
        "fertile": stats.fertile,
        "classes": stats.classes,
        "distinct_factors": stats.distinct_factors,
        "representatives": [matrix_to_dict(c.canonical) for c in classes],
    }
    _emit(args, doc, "\n".join(lines))
    if stats.solutions == 0:
        return EXIT_UNSAT
    return EXIT_OK if classes else EXIT_INFERTILE


def cmd_verify(args) -> int:
    m = _load(args.matrix)
    report = identity_report(m)
    text = "\n".join(f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in report)
    _emit(args, {"identities": {name: ok for name, ok in report}}, text)
    return EXIT_OK if all(ok for _, ok in report) else 1


def cmd_det(args) -> int:
    m = _load(args.matrix)
    d, d2 = det(m), det_via_decomposition(m)
    _emit(
        args,
        {"det": format_scalar(d), "det_via_decomposition": format_scalar(d2)},
        f"det: {format_scalar(d)}\ndet_via_decomposition: {format_scalar(d2)}",
    )
    return EXIT_OK


def cmd_adjugate(args) -> int:
    m = _load(args.matrix)
    adj = adjugate(m)
    _emit(args, {"adjugate": matrix_to_dict(adj)}, str(adj))
    return EXIT_OK


def cmd_colatin(args) -> int:
    m = _load(args.matrix)
    fast = colatin_check_fast(m)
    doc = {"colatin_fast": fast}
    text = f"colatin (V-space test): {fast}"
    if m.rows <= 7:
        slow = colatin_check(m)
        doc["colatin_transversals"] = slow
        text += f"\ncolatin (all transversals): {slow}"
    _emit(args, doc, text)
    return EXIT_OK


def cmd_latin(args) -> int:
    try:
        sq = hankel_latin(args.n) if args.kind == "hankel" else corner_latin(args.n)
    except ValueError as e:
        raise CliError(str(e), EXIT_PRECONDITION) from None
    _emit(args, {"n": sq.n, "cells": [list(r) for r in sq.cells]}, str(sq))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="svfactor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str, matrix: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        if matrix:
            p.add_argument("matrix", help="matrix file ('-' for stdin)")
        p.add_argument("--json", action="store_true", help="structured JSON output")
        p.set_defaults(func=fn)
        return p

    add("decompose", cmd_decompose, "S+V parts of a matrix")
    for name, fn, help in (
        ("obstruct", cmd_obstruct, "weight-balance equation"),
        ("solve", cmd_solve, "integer solutions of the weight-balance equation"),
    ):
        p = add(name, fn, help)
        p.add_argument("--mode", choices=[m.value for m in Mode], default="gram")
        if name == "solve":
            p.add_argument("--box", type=int, help="search box for square mode")
            p.add_argument("--count", action="store_true", help="print only the number of solutions")
            p.add_argument("--all-signs", action="store_true", help="include w < 0")
            p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p = add("factor", cmd_factor, "rational factors N with N^T N = M")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--solution", help='obstruction point "w x1 ... x_{n-1}"')
    g.add_argument("--all", action="store_true", help="full pipeline with class summary")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    add("verify", cmd_verify, "run the identity suite on a matrix")
    add("det", cmd_det, "determinant, directly and from the decomposition")
    add("adjugate", cmd_adjugate, "adjugate matrix")
    add("colatin", cmd_colatin, "co-Latin property")
    p = add("latin", cmd_latin, "generate a Latin square", matrix=False)
    p.add_argument("--kind", choices=["hankel", "corner"], default="hankel")
    p.add_argument("-n", type=int, required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except (DimensionError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
