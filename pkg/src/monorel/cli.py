"""Command-line interface: ``monorel info|op|fitz|verify``.

Exit codes: 0 success, 1 suite failures, 2 usage or parse errors,
3 precondition violations (for example a non-monotone input where a
monotone one is required).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

import numpy as np

from . import harness
from .errors import PreconditionError
from .fitzpatrick import fitz_star_transpose_eval, fitzpatrick_conj_eval, fitzpatrick_eval, partial_inf_conv
from .io import Report, SchemaError, dumps, format_value, load_relation, relation_payload, subspace_payload
from .linalg import DEFAULT_TOL, DimensionError, Tolerance
from .monotone import extend_to_maximal, is_maximal_monotone, is_monotone, is_skew
from .relation import add, adjoint, as_matrix, at_zero, dom, inverse, ker, negate, ran, scale

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3
OPS = ("adjoint", "inverse", "negate", "scale", "add", "extend")


class UsageError(Exception):
    pass


def _tolerance(args) -> Tolerance:
    try:
        return Tolerance(args.rank_rtol, args.psd_tol, args.atol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _report_check(rep) -> dict:
    return {"verdict": rep.verdict, "margin": rep.margin}


def info_block(A, tol: Tolerance):
    """Results and failures describing one relation."""
    checks = {
        "monotone": is_monotone(A, tol),
        "maximal_monotone": is_maximal_monotone(A, tol),
        "skew": is_skew(A, tol),
    }
    results = {
        "n": A.n,
        "graph_dim": A.graph.dim,
        "dom": subspace_payload(dom(A, tol)),
        "ran": subspace_payload(ran(A, tol)),
        "ker": subspace_payload(ker(A, tol)),
        "A0": subspace_payload(at_zero(A, tol)),
    }
    results.update({k: _report_check(v) for k, v in checks.items()})
    M = as_matrix(A, tol)
    if M is not None:
        results["matrix"] = M.tolist()
    failures = [
        {"predicate": k, "margin": v.margin, "witness": v.witness.tolist()} for k, v in checks.items() if not v.verdict
    ]
    return results, failures


def cmd_info(args, tol):
    A = load_relation(args.file, tol)
    results, failures = info_block(A, tol)
    return Report(args.argv, tol.as_dict(), results, failures), EXIT_OK


def cmd_op(args, tol):
    A = load_relation(args.file, tol)
    name = args.opname
    if name == "add":
        if args.file2 is None:
            raise UsageError("op add needs a second relation file")
        B = load_relation(args.file2, tol)
        if B.n != A.n:
            raise DimensionError(f"cannot add relations on R^{A.n} and R^{B.n}")
        out = add(A, B, tol)
    elif args.file2 is not None:
        raise UsageError(f"op {name} takes a single relation file")
    elif name == "scale":
        if args.factor is None:
            raise UsageError("op scale needs --factor")
        out = scale(A, args.factor, tol)
    elif name == "extend":
        out = extend_to_maximal(A, tol)
    else:
        out = {"adjoint": adjoint, "inverse": inverse, "negate": negate}[name](A)
    payload = relation_payload(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps(payload))
    results, failures = info_block(out, tol)
    return Report(args.argv, tol.as_dict(), {"relation": payload, "info": results}, failures), EXIT_OK


def _point(values, n, name):
    v = np.asarray(values, dtype=float)
    if v.size != n:
        raise DimensionError(f"{name} has length {v.size}, expected {n}")
    return v


def cmd_fitz(args, tol):
    A = load_relation(args.file, tol)
    x = _point(args.x, A.n, "--x")
    xs = _point(args.xstar, A.n, "--xstar")
    results = {"x": x.tolist(), "xstar": xs.tolist()}
    if args.conj:
        results["function"] = "conjugate"
        results["value"] = fitzpatrick_conj_eval(A, xs, x, tol)
    elif args.star_t:
        results["function"] = "star_transpose"
        results["value"] = fitz_star_transpose_eval(A, x, xs, tol)
    elif args.inf_conv:
        B = load_relation(args.inf_conv, tol)
        val, ys = partial_inf_conv(A, B, x, xs, tol)
        results["function"] = "partial_inf_conv"
        results["value"] = val
        results["argmin"] = None if ys is None else ys.tolist()
    else:
        results["function"] = "fitzpatrick"
        results["value"] = fitzpatrick_eval(A, x, xs, tol)
    return Report(args.argv, tol.as_dict(), results, []), EXIT_OK


def _n_range(text: str):
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise UsageError(f"--n-range must look like A..B, got {text!r}") from None
    if not 1 <= lo <= hi:
        raise UsageError(f"--n-range needs 1 <= A <= B, got {text!r}")
    return lo, hi


def cmd_verify(args, tol):
    names = list(harness.SUITES) if args.suite == "all" else [args.suite]
    for s in names:
        if s not in harness.SUITES:
            raise UsageError(f"unknown suite {s!r}; valid suites: all, {', '.join(harness.SUITES)}")
    nr = _n_range(args.n_range)
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    seed = args.seed
    if seed is None:
        env = os.environ.get("MONOREL_SEED")
        try:
            seed = int(env) if env is not None else 0
        except ValueError:
            raise UsageError(f"MONOREL_SEED must be an integer, got {env!r}") from None
    if seed < 0:
        raise UsageError("seed must be non-negative")
    suites, failures = [], []
    for s in names:
        r = harness.run_suite(s, nr, args.trials, seed, tol)
        suites.append({"suite": s, "trials": r.trials, "passed": r.passed, "failures": len(r.failures), "stats": r.stats})
        failures += [
            {"suite": s, "trial": f.trial, "seed": f.seed, "summary": f.summary, "invariant": f.invariant, "margin": f.margin}
            for f in r.failures
        ]
    results = {"n_range": list(nr), "trials": args.trials, "seed": seed, "suites": suites}
    return Report(args.argv, tol.as_dict(), results, failures), EXIT_FAIL if failures else EXIT_OK


def _print_text(rep: Report, out):
    def emit(key, val, indent=0):
        pad = "  " * indent
        if isinstance(val, dict) and set(val) == {"dim", "basis"}:
            out.write(f"{pad}{key}: dim {val['dim']}\n")
            for row in val["basis"]:
                out.write(f"{pad}  [{', '.join(_scalar(v) for v in row)}]\n")
        elif isinstance(val, dict):
            out.write(f"{pad}{key}:\n")
            for k, v in val.items():
                emit(k, v, indent + 1)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            out.write(f"{pad}{key}:\n")
            for v in val:
                out.write(f"{pad}  - " + ", ".join(f"{k}={_scalar(x)}" for k, x in v.items()) + "\n")
        else:
            out.write(f"{pad}{key}: {_scalar(val)}\n")

    for k, v in rep.results.items():
        emit(k, v)
    if rep.failures:
        emit("failures", rep.failures)


def _scalar(v):
    if isinstance(v, bool) or v is None:
        return str(v).lower() if v is not None else "none"
    if isinstance(v, float):
        # text output is for reading; json keeps full precision
        return format_value(round(v, 12) + 0.0, 12)
    if isinstance(v, list):
        if v and isinstance(v[0], list):
            return "[" + "; ".join(", ".join(_scalar(x) for x in row) for row in v) + "]"
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar(x)}" for k, x in v.items()) + "}"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank-rtol", type=float, default=DEFAULT_TOL.rank_rtol)
    common.add_argument("--psd-tol", type=float, default=DEFAULT_TOL.psd_tol)
    common.add_argument("--atol", type=float, default=DEFAULT_TOL.atol)
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="monorel", description="Monotone linear relations on R^n.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="subspaces and predicate verdicts of a relation")
    s.add_argument("file")
    s.set_defaults(handler=cmd_info)

    s = sub.add_parser("op", parents=[common], help="apply an operation and report the result")
    s.add_argument("opname", choices=OPS)
    s.add_argument("file")
    s.add_argument("file2", nargs="?")
    s.add_argument("--factor", type=float, help="scalar for 'scale'")
    s.add_argument("-o", "--output", help="write the resulting relation file here")
    s.set_defaults(handler=cmd_op)

    s = sub.add_parser("fitz", parents=[common], help="evaluate Fitzpatrick-type functions at (x, x*)")
    s.add_argument("file")
    s.add_argument("--x", type=float, nargs="+", required=True)
    s.add_argument("--xstar", type=float, nargs="+", required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--conj", action="store_true", help="conjugate F_A* evaluated at (x*, x)")
    g.add_argument("--star-t", action="store_true", help="F_A*T at (x, x*)")
    g.add_argument("--inf-conv", metavar="FILE2", help="partial inf-convolution with FILE2's Fitzpatrick function")
    s.set_defaults(handler=cmd_fitz)

    s = sub.add_parser("verify", parents=[common], help="run randomized theorem suites")
    s.add_argument("--suite", required=True, help="suite name or 'all'")
    s.add_argument("--n-range", default="1..6")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=None, help="master seed (default: $MONOREL_SEED or 0)")
    s.set_defaults(handler=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.argv = ["monorel", *argv]
    try:
        tol = _tolerance(args)
        rep, code = args.handler(args, tol)
    except (UsageError, SchemaError, DimensionError, OSError) as exc:
        print(f"monorel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"monorel: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.format == "json":
        sys.stdout.write(rep.to_json())
    else:
        _print_text(rep, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
