"""Command-line front end.

    pbwdisc disc --algebra Wn:2
    pbwdisc nf --algebra Wn:2 --expr "x2*x1"
    pbwdisc aut --algebra Wn:4 --format structured

Exit status: 0 when everything requested passed, 1 on an engine error or a
failed check, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import omega
from .automorphisms import enumerate_monomial_automorphisms
from .center import regular_trace
from .discriminant import (
    MAX_RANK,
    discriminant,
    opposite_discriminant_check,
    tensor_discriminant_check,
    trace_matrix,
    verify_conjecture_412,
)
from .errors import EngineError, PreconditionViolation
from .parsing import parse_commpoly, parse_element, parse_element_list
from .poly import is_dominating_sufficient
from .specfile import load_algebra
from .suite import run_suite

COMMANDS = ("nf", "trace", "disc", "dominating", "aut", "omega", "verify412",
            "tensor-check", "opposite-check", "paper-suite")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pbwdisc", description="Exact discriminants and traces for PBW algebras.")
    p.add_argument("command", help=", ".join(COMMANDS))
    p.add_argument("--algebra", help="preset (Wn:4, kminus1:2, Aq:<q>, Ex5.9:3) or path to a YAML file")
    p.add_argument("--algebra2", help="second algebra for tensor-check (defaults to --algebra)")
    p.add_argument("--expr", help="element expression in x1..xn (z_i means x_i^d_i when a center is declared)")
    p.add_argument("--n", type=int, help="generator count for verify412")
    p.add_argument("--route", choices=("direct", "compound"), default="direct",
                   help="verify412: expand the determinant, or certify it through compound matrices")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--max-rank", type=int, default=MAX_RANK)
    p.add_argument("--threads", type=int, default=1)
    return p


def _need(args, *names):
    for name in names:
        if getattr(args, name.replace("-", "_")) is None:
            raise UsageError(f"{args.command} needs --{name}")


def _algebra(args, ref=None):
    spec, center = load_algebra(ref or args.algebra)
    return spec, center


def _need_center(center, ref):
    if center is None:
        raise PreconditionViolation(f"{ref} declares no center_powers")
    return center


def _disc(args, spec, center):
    return discriminant(spec, _need_center(center, args.algebra), args.threads, args.max_rank)


# each handler returns (text lines, structured result, ok)

def cmd_nf(args):
    _need(args, "algebra", "expr")
    spec, center = _algebra(args)
    f = parse_element(args.expr, spec, center)
    return [f.to_text()], {"normal_form": f.to_text()}, True


def cmd_trace(args):
    _need(args, "algebra")
    spec, center = _algebra(args)
    center = _need_center(center, args.algebra)
    if args.expr is None:
        tm = trace_matrix(spec, center, args.threads)
        rows = [[str(tm[i, j]) for j in range(tm.cols)] for i in range(tm.rows)]
        basis = [spec.monomial(e).to_text() for e in center.basis]
        lines = ["basis: " + ", ".join(basis)] + ["[" + ", ".join(r) + "]" for r in rows]
        return lines, {"basis": basis, "trace_matrix": rows}, True
    t = regular_trace(parse_element(args.expr, spec, center), center)
    return [str(t)], {"trace": str(t)}, True


def cmd_disc(args):
    _need(args, "algebra")
    spec, center = _algebra(args)
    d = _disc(args, spec, center)
    verdict = "true" if d.dominating_sufficient else "false"
    lines = [str(d.raw_det)]
    if d.principal is not None:
        lines.append(f"principal term: {d.principal}")
    lines.append(f"dominating(sufficient): {verdict}")
    return lines, d.summary(), True


def cmd_dominating(args):
    _need(args, "algebra")
    spec, center = _algebra(args)
    if args.expr is not None:
        f = parse_commpoly(args.expr, spec.n, spec.field)
    else:
        f = _disc(args, spec, center).raw_det
    verdict = is_dominating_sufficient(f)
    return [f"dominating(sufficient): {'true' if verdict else 'false'}"], {
        "polynomial": str(f), "dominating_sufficient": verdict}, True


def cmd_aut(args):
    _need(args, "algebra")
    spec, _ = _algebra(args)
    g = enumerate_monomial_automorphisms(spec)
    return [g.describe(), f"({g.label})"], g.summary(), True


def cmd_omega(args):
    _need(args, "algebra", "expr")
    spec, center = _algebra(args)
    f = omega(parse_element_list(args.expr, spec, center))
    return [f.to_text()], {"omega": f.to_text()}, True


def cmd_verify412(args):
    _need(args, "n")
    r = verify_conjecture_412(args.n, workers=args.threads, route=args.route)
    s = r.summary()
    lines = [f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in s.items()]
    return lines, s, r.omega_square_matches_D and r.disc_matches_D_power


def cmd_tensor_check(args):
    _need(args, "algebra")
    A, cA = _algebra(args)
    B, cB = _algebra(args, args.algebra2)
    ok = tensor_discriminant_check(A, _need_center(cA, args.algebra), B,
                                   _need_center(cB, args.algebra2 or args.algebra))
    return [f"tensor identity: {'true' if ok else 'false'}"], {"holds": ok}, ok


def cmd_opposite_check(args):
    _need(args, "algebra")
    A, cA = _algebra(args)
    ok = opposite_discriminant_check(A, _need_center(cA, args.algebra))
    return [f"opposite identity: {'true' if ok else 'false'}"], {"holds": ok}, ok


def cmd_paper_suite(args):
    results = run_suite(args.threads)
    ok = all(r.ok for r in results)
    lines = [r.line() for r in results]
    lines.append(f"{sum(r.ok for r in results)}/{len(results)} checks passed")
    return lines, {"checks": [r.summary() for r in results], "all_passed": ok}, ok


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


def _inputs(args):
    keys = ("algebra", "algebra2", "expr", "n", "max_rank", "threads")
    return {k: getattr(args, k) for k in keys if getattr(args, k) is not None}


def run_subcommand(name: str, argv) -> tuple[str, int]:
    """Run one subcommand; return (rendered output, exit code)."""
    try:
        args = build_parser().parse_args([name, *argv])
        if args.command not in HANDLERS:
            raise UsageError(f"unknown subcommand {args.command!r}; expected one of {', '.join(COMMANDS)}")
        if args.threads < 1 or args.max_rank < 1:
            raise UsageError("--threads and --max-rank must be positive")
    except UsageError as exc:
        return f"usage error: {exc}", 2
    try:
        lines, result, ok = HANDLERS[args.command](args)
    except UsageError as exc:
        return f"usage error: {exc}", 2
    except (EngineError, IndexError, ValueError, ZeroDivisionError) as exc:
        name = type(exc).__name__
        if args.format == "structured":
            doc = {"command": args.command, "inputs": _inputs(args), "error": {"name": name, "message": str(exc)}}
            return json.dumps(doc, ensure_ascii=False, indent=2), 1
        return f"error: {name}: {exc}", 1
    if args.format == "structured":
        doc = {"command": args.command, "inputs": _inputs(args), "result": result, "ok": ok}
        return json.dumps(doc, ensure_ascii=False, indent=2), 0 if ok else 1
    return "\n".join(lines), 0 if ok else 1


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return 0 if argv else 2
    text, code = run_subcommand(argv[0], argv[1:])
    print(text, file=sys.stderr if code == 2 else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
