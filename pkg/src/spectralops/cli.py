"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 on bad
input (unreadable session, malformed function, invalid data).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import reference
from .bamodule import default_basis, rank_M, ratio_witness
from .config import WORKED_EXAMPLE, SessionConfig, load_session
from .emit import emit, matrix_to_obj, parse_json
from .errors import NotAFunctionOnGamma, ParseError, SpectralOpsError
from .expr import parse_scalar
from .kernel.forms import BiForm
from .kernel.printing import biform_str
from .kernel.scalars import scalar_str
from .operators import MatrixDiffOp
from .session import Session
from .solver import (
    FunctionOnGamma,
    SpectralAssignment,
    construct_operator,
    validate_function,
    verify_commute_pair,
    verify_eigen,
)
from .surface import check_distinct_witnesses, evaluate_at, flow_form_space, intersection_points

__all__ = ["main", "OperatorReport", "CheckRow"]

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


@dataclass
class CheckRow:
    name: str
    ok: bool | None  # None marks an informational row
    detail: str = ""


@dataclass
class OperatorReport:
    descriptor: str
    D: MatrixDiffOp
    eigen_ok: bool
    commutes: dict = field(default_factory=dict)
    seconds: float = 0.0


def _mark(ok) -> str:
    return "note" if ok is None else ("pass" if ok else "FAIL")


def _table(rows: list[CheckRow]) -> str:
    width = max(len(r.name) for r in rows)
    return "\n".join(f"{r.name.ljust(width)}  {_mark(r.ok):4}  {r.detail}".rstrip() for r in rows) + "\n"


def _session_config(args) -> SessionConfig:
    return load_session(args.session) if args.session else WORKED_EXAMPLE


def _describe(lam: FunctionOnGamma) -> str:
    if lam.order == 0:
        return str(lam.numerator.c[0][0])
    return f"({biform_str(lam.numerator)})/f^{lam.order}"


def _solve_report(name: str, lam: FunctionOnGamma, basis, session: Session) -> OperatorReport:
    t0 = time.perf_counter()
    D = construct_operator(lam, basis, session)
    ok = verify_eigen(SpectralAssignment(lam, D, basis), session)
    return OperatorReport(name, D, ok, seconds=time.perf_counter() - t0)


# reproduce ----------------------------------------------------------------


def _reproduce(cfg: SessionConfig, fmt: str, quiet: bool, out) -> int:
    rows: list[CheckRow] = []
    reports: list[OperatorReport] = []

    def finish() -> int:
        status = EXIT_OK if all(r.ok is not False for r in rows) else EXIT_CHECK
        if not quiet:
            out.write(_table(rows))
            for rep in reports:
                out.write(f"\n{rep.descriptor}  eigen check: {_mark(rep.eigen_ok)}\n")
                out.write(emit(rep.D, fmt))
        failed = [r.name for r in rows if r.ok is False]
        out.write("all checks passed\n" if not failed else f"failed: {', '.join(failed)}\n")
        return status

    try:
        session = cfg.to_session()
    except SpectralOpsError as exc:
        rows.append(CheckRow("section condition", False, str(exc)))
        return finish()
    rows.append(CheckRow("section condition", True, f"A = {scalar_str(session.A)}"))

    space = flow_form_space(session.f, session.gluing)
    rows.append(
        CheckRow(
            "flow forms",
            len(space) == 3,
            f"dim 3; f1 = {biform_str(session.f1)} (c1 = {scalar_str(session.c1)}), "
            f"f2 = {biform_str(session.f2)} (c2 = {scalar_str(session.c2)})",
        )
    )

    try:
        P = intersection_points(session.f, session.f1, session.d)
        Q = intersection_points(session.f, session.f2, session.d)
    except SpectralOpsError as exc:
        rows.append(CheckRow("intersection points", False, str(exc)))
        return finish()
    rows.append(CheckRow("points f = f1 = 0", True, f"P1 = {P[0]}, P2 = {P[1]}"))
    rows.append(CheckRow("points f = f2 = 0", True, f"Q1 = {Q[0]}, Q2 = {Q[1]}"))
    rows.append(CheckRow("distinct points", check_distinct_witnesses(*P, *Q)))

    try:
        basis = default_basis(session)
    except SpectralOpsError as exc:
        rows.append(CheckRow("module basis", False, str(exc)))
        return finish()
    rows.append(
        CheckRow(
            "module basis",
            True,
            f"h1 = {biform_str(basis[0].numerator)}, h2 = {biform_str(basis[1].numerator)}",
        )
    )
    h1p1 = evaluate_at(basis[0].numerator, P[0])
    rows.append(CheckRow("h1(P1) nonzero", not h1p1.is_zero(), str(h1p1)))
    try:
        r1, r2 = ratio_witness(basis, P[0]), ratio_witness(basis, P[1])
        rows.append(CheckRow("ratio h1/h2 at P1", None, str(r1)))
        rows.append(CheckRow("ratio h1/h2 at P2", None, str(r2)))
        rows.append(CheckRow("ratios differ", r1 != r2))
    except SpectralOpsError as exc:
        rows.append(CheckRow("ratio witness", False, str(exc)))

    for n in range(1, 4):
        r = rank_M(n, session)
        rows.append(CheckRow(f"rank M({n})", r == n * (n + 1), f"{r} (expected {n * (n + 1)})"))

    for name in reference.FUNCTIONS:
        try:
            lam = reference.function(name, session)
        except NotAFunctionOnGamma as exc:
            rows.append(CheckRow(f"D({name})", None, f"skipped: {exc}"))
            continue
        try:
            rep = _solve_report(name, lam, basis, session)
        except SpectralOpsError as exc:
            rows.append(CheckRow(f"D({name})", False, str(exc)))
            continue
        reports.append(rep)
        rows.append(CheckRow(f"D({name}) eigen", rep.eigen_ok))
        rows.append(CheckRow(f"D({name}) order", rep.D.order <= lam.order, f"{rep.D.order} <= {lam.order}"))

    for i in range(len(reports)):
        for j in range(i + 1, len(reports)):
            a, b = reports[i], reports[j]
            ok = verify_commute_pair(a.D, b.D)
            a.commutes[b.descriptor] = b.commutes[a.descriptor] = ok
            rows.append(CheckRow(f"[D({a.descriptor}), D({b.descriptor})] = 0", ok))

    if cfg == WORKED_EXAMPLE:
        for rep in reports:
            for i in (1, 2):
                for j in (1, 2):
                    diff = reference.compare_entry(rep.descriptor, (i, j), rep.D[i - 1, j - 1])
                    if (rep.descriptor, (i, j)) in reference.UNVERIFIED:
                        tag = "unverified transcription"
                    elif diff:
                        tag = "differs from reference at " + ", ".join(f"dx^{a}dy^{b}" for a, b in diff)
                    else:
                        continue
                    rows.append(CheckRow(f"reference D({rep.descriptor})[{i},{j}]", None, tag))
    return finish()


# construct / emit / verify-commute / rank ---------------------------------


def _parse_term(text: str) -> tuple:
    parts = text.split(",", 2)
    if len(parts) != 3:
        raise ParseError(f"--term expects K,L,COEFF, got {text!r}")
    try:
        k, l = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ParseError(f"--term powers must be integers, got {text!r}") from exc
    return (k, l), parse_scalar(parts[2])


def _function_from_args(args, session: Session) -> tuple[str, FunctionOnGamma]:
    if args.named:
        if args.named not in reference.FUNCTIONS:
            raise ParseError(f"unknown function {args.named!r}; choose from {', '.join(reference.FUNCTIONS)}")
        return args.named, reference.function(args.named, session)
    if args.order is None:
        raise ParseError("--order is required with --term")
    terms: dict = {}
    for t in args.term or []:
        key, c = _parse_term(t)
        if not (0 <= key[0] <= args.order and 0 <= key[1] <= args.order):
            raise ParseError(f"monomial {key} outside bidegree {args.order}")
        terms[key] = terms.get(key, 0) + c
    lam = validate_function(BiForm.from_terms(args.order, terms), args.order, session)
    return _describe(lam), lam


def _stamp(D: MatrixDiffOp, fmt: str, descriptor: str, ok: bool) -> str:
    if fmt == "json":
        obj = {"lambda": descriptor, "eigen_check": ok, **matrix_to_obj(D)}
        return json.dumps(obj, indent=2) + "\n"
    lead = "%" if fmt == "latex" else "#"
    return f"{lead} D({descriptor})  eigen check: {_mark(ok)}\n" + emit(D, fmt)


def _construct(args, cfg, out) -> int:
    session = cfg.to_session()
    basis = default_basis(session)
    name, lam = _function_from_args(args, session)
    D = construct_operator(lam, basis, session, method=args.method)
    ok = verify_eigen(SpectralAssignment(lam, D, basis), session)
    if not args.quiet:
        out.write(_stamp(D, args.format, name, ok))
    else:
        out.write(f"eigen check: {_mark(ok)}\n")
    return EXIT_OK if ok else EXIT_CHECK


def _load_operator(path: str) -> MatrixDiffOp:
    return parse_json(Path(path).read_text(encoding="utf-8"))


def _emit(args, cfg, out) -> int:
    if args.input:
        D = _load_operator(args.input)
        out.write(emit(D, args.format))
        return EXIT_OK
    return _construct(args, cfg, out)


def _verify_commute(args, cfg, out) -> int:
    ops: list[tuple[str, MatrixDiffOp]] = []
    names = args.named_list or []
    if names:
        session = cfg.to_session()
        basis = default_basis(session)
        for n in names:
            if n not in reference.FUNCTIONS:
                raise ParseError(f"unknown function {n!r}")
            ops.append((n, construct_operator(reference.function(n, session), basis, session)))
    for p in args.operator or []:
        ops.append((p, _load_operator(p)))
    if len(ops) < 2:
        raise ParseError("need at least two operators")
    rows = []
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            rows.append(CheckRow(f"[{ops[i][0]}, {ops[j][0]}] = 0", verify_commute_pair(ops[i][1], ops[j][1])))
    if not args.quiet:
        out.write(_table(rows))
    ok = all(r.ok for r in rows)
    out.write("all commute\n" if ok else "some pairs do not commute\n")
    return EXIT_OK if ok else EXIT_CHECK


def _rank(args, cfg, out) -> int:
    if args.n_max < 1:
        raise ParseError("--n-max must be at least 1")
    session = cfg.to_session()
    lines = ["n  rank  expected  match"]
    ok = True
    for n in range(1, args.n_max + 1):
        r = rank_M(n, session)
        exp = n * (n + 1)
        ok &= r == exp
        lines.append(f"{n:<2} {r:<5} {exp:<9} {'✓' if r == exp else '✗'}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_CHECK


# entry point ----------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--session", default=argparse.SUPPRESS, help="session document (default: worked example)")
    p.add_argument("--format", choices=("json", "latex", "text"), default=argparse.SUPPRESS)
    p.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
    return p


def _function_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--named", help="one of " + ", ".join(reference.FUNCTIONS))
    p.add_argument("--term", action="append", metavar="K,L,COEFF", help="numerator monomial z1^K z2^L (repeatable)")
    p.add_argument("--order", type=int, help="pole order m of the function")
    p.add_argument("--method", choices=("graded", "full"), default="graded")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="spectralops",
        description="Commuting matrix differential operators from a glued spectral surface.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("reproduce", parents=[common], help="run the full worked pipeline")
    c = sub.add_parser("construct", parents=[common], help="solve for D(lambda)")
    _function_options(c)
    e = sub.add_parser("emit", parents=[common], help="render an operator document or a solved D(lambda)")
    e.add_argument("--input", help="operator JSON document")
    _function_options(e)
    v = sub.add_parser("verify-commute", parents=[common], help="check pairwise commutators")
    v.add_argument("--named", dest="named_list", action="append", help="named function (repeatable)")
    v.add_argument("--operator", action="append", help="operator JSON document (repeatable)")
    r = sub.add_parser("rank", parents=[common], help="tabulate the rank law")
    r.add_argument("--n-max", type=int, default=3)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    args.session = getattr(args, "session", None)
    args.format = getattr(args, "format", "text")
    args.quiet = getattr(args, "quiet", False)
    try:
        cfg = _session_config(args)
        if args.command == "reproduce":
            return _reproduce(cfg, args.format, args.quiet, out)
        if args.command == "construct":
            return _construct(args, cfg, out)
        if args.command == "emit":
            return _emit(args, cfg, out)
        if args.command == "verify-commute":
            return _verify_commute(args, cfg, out)
        return _rank(args, cfg, out)
    except (SpectralOpsError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
