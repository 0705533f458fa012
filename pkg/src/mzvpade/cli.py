"""Command-line entry point: ``mzvpade solve|eval|verify|vasilyev``.

Exit codes: 0 success, 1 usage error, 2 mathematical failure (kernel
dimension, divergence, failed check), 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .coeffs import SERIES_MATCHED, SERIES_PRINTED
from .exact_core import DEFAULT_PREC, rat_from_str
from .numerics import (
    BudgetError,
    DivergentDomain,
    WeightFamily,
    eval_B_chain,
    eval_polylog,
    eval_S_series,
    eval_vwp,
    eval_weight,
    eval_zeta,
)
from .pade import KernelDimensionError, dumps as pade_dumps, solve_p, solve_q
from .suites import SUITES
from .vasilyev import BudgetExceeded, compute_J, compute_S_sigma
from .words import ArgFrame, parse_index

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_BUDGET = 0, 1, 2, 3
CACHE_ENV = "MZVPADE_CACHE_DIR"

_FRAMES = {
    "direct": ArgFrame.DIRECT, "z": ArgFrame.DIRECT,
    "inv": ArgFrame.INVERSE, "inverse": ArgFrame.INVERSE, "1/z": ArgFrame.INVERSE,
    "oneminus": ArgFrame.ONE_MINUS, "1-z": ArgFrame.ONE_MINUS,
}


class UsageError(ValueError):
    pass


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _config(args, **extra) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "out")}
    cfg.update(extra)
    cfg["version"] = __version__
    return cfg


# --------------------------------------------------------------------------
# eval targets


def _chain(text: str) -> list[tuple[int, int, int]]:
    steps = []
    for part in text.split(";"):
        vals = [int(v) for v in part.split(",")]
        if len(vals) != 3:
            raise UsageError(f"chain step needs a,b,n: {part!r}")
        steps.append(tuple(vals))
    return steps


def evaluate_target(spec: str, prec: int, kmax: int):
    """Parse a target string and evaluate it. Grammar (whitespace separated):

        li <index> <frame> <point>          e.g. "li 2,1;l inv 3"
        zeta <s>
        vwp <r> <n> [<sigma>]
        sseries <r> <n> <z> [printed|matched]
        weight <F1|F2|F3> <k> <x> [sum|alternative]
        bchain <a,b,n;a,b,n;...> <z>

    A ``;`` inside an index may be followed by a space ("li 1; inv 3").
    """
    tokens = spec.split()
    if not tokens:
        raise UsageError("empty target")
    head, rest = tokens[0].lower(), tokens[1:]
    try:
        if head == "li":
            if len(rest) == 4 and rest[0].endswith(";"):
                rest = [rest[0] + rest[1]] + rest[2:]
            if len(rest) != 3:
                raise UsageError("li needs <index> <frame> <point>")
            idx = parse_index(rest[0])
            frame = _FRAMES.get(rest[1].lower())
            if frame is None:
                raise UsageError(f"unknown frame {rest[1]!r}")
            point = rat_from_str(rest[2])
            # kmax is the truncation at x = 1; inside the disk K follows the tolerance
            x_is_one = (frame == ArgFrame.DIRECT and point == 1) or (frame == ArgFrame.INVERSE and point == 1) \
                or (frame == ArgFrame.ONE_MINUS and point == 0)
            return eval_polylog(idx, frame, point, prec, K=kmax if x_is_one else None)
        if head == "zeta":
            return eval_zeta(int(rest[0]), prec)
        if head == "vwp":
            r, n = int(rest[0]), int(rest[1])
            sigma = int(rest[2]) if len(rest) > 2 else 1
            return eval_vwp(r, n, sigma, prec, kmax)
        if head == "sseries":
            variant = rest[3] if len(rest) > 3 else SERIES_PRINTED
            if variant not in (SERIES_PRINTED, SERIES_MATCHED):
                raise UsageError(f"unknown series variant {variant!r}")
            return eval_S_series(int(rest[0]), int(rest[1]), rat_from_str(rest[2]), prec, variant=variant)
        if head == "weight":
            form = rest[3] if len(rest) > 3 else "alternative"
            return eval_weight(WeightFamily(rest[0].upper(), int(rest[1])), rat_from_str(rest[2]), prec, form=form)
        if head == "bchain":
            return eval_B_chain(_chain(rest[0]), rat_from_str(rest[1]))
    except (IndexError, ValueError) as err:
        if isinstance(err, DivergentDomain):
            raise
        raise UsageError(str(err)) from err
    raise UsageError(f"unknown target {head!r}")


# --------------------------------------------------------------------------
# commands


def cmd_solve(args) -> int:
    solve = solve_p if args.kind == "P" else solve_q
    cache = os.environ.get(CACHE_ENV)
    path = os.path.join(cache, f"{args.kind}_{args.r}_{args.n}.json") if cache else None
    if path and os.path.exists(path):
        with open(path) as fh:
            solution = json.load(fh)
    else:
        try:
            solution = json.loads(pade_dumps(solve(args.r, args.n)))
        except KernelDimensionError as err:
            _emit({"error": str(err), "kernel_dimension": err.report.dimension, "config": _config(args)}, args.out)
            return EXIT_MATH
        if path:
            os.makedirs(cache, exist_ok=True)
            with open(path, "w") as fh:
                json.dump(solution, fh, sort_keys=True)
    _emit({"solution": solution, "config": _config(args)}, args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    try:
        ball = evaluate_target(args.target, args.prec, args.kmax)
    except DivergentDomain as err:
        _emit({"error": f"divergent: {err}", "config": _config(args)}, args.out)
        return EXIT_MATH
    except BudgetError as err:
        _emit({"error": f"budget: {err}", "config": _config(args)}, args.out)
        return EXIT_BUDGET
    _emit({**ball.to_json(), "config": _config(args)}, args.out)
    return EXIT_OK


def _suite_kwargs(args) -> dict:
    kw = {}
    name = args.suite
    if name in ("orders", "reduction", "vasilyev") and args.r is not None:
        kw["rmax"] = args.r
    if name in ("orders", "reduction", "vasilyev") and args.n is not None:
        kw["nmax"] = args.n
    if name == "laurent" and args.r is not None and args.n is not None:
        kw["cases"] = ((args.r, args.n),)
    if name in ("identities", "vasilyev"):
        kw["kmax"] = args.kmax
    if name in ("identities", "weights"):
        kw["prec"] = args.prec
    if name == "vasilyev" and args.seed is not None:
        kw.update(mc=True, seed=args.seed)
    return kw


def cmd_verify(args) -> int:
    checks = SUITES[args.suite](**_suite_kwargs(args))
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  measured={c.measured}  tol={c.tolerance}", file=sys.stderr)
    ok = all(c.passed for c in checks)
    _emit({
        "suite": args.suite,
        "passed": sum(c.passed for c in checks),
        "total": len(checks),
        "checks": [c.to_json() for c in checks],
        "config": _config(args),
    }, args.out)
    return EXIT_OK if ok else EXIT_MATH


def cmd_vasilyev(args) -> int:
    if args.mc and args.seed is None:
        raise UsageError("--mc requires --seed")
    try:
        if args.sigma == 1:
            rep = compute_J(args.r, args.n, prec=args.prec, kmax=args.kmax, mc=args.mc, seed=args.seed)
        else:
            rep = compute_S_sigma(args.r, args.n, args.sigma, prec=args.prec, kmax=args.kmax,
                                  mc=args.mc, seed=args.seed)
    except BudgetExceeded as err:
        _emit({"error": f"budget: {err}", "config": _config(args)}, args.out)
        return EXIT_BUDGET
    payload = rep.to_json()
    payload["config"] = {**payload.get("config", {}), **_config(args)}
    _emit(payload, args.out)
    return EXIT_OK


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mzvpade", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(q):
        q.add_argument("--prec", type=int, default=DEFAULT_PREC, help="working precision in bits")
        q.add_argument("--kmax", type=int, default=10**5, help="truncation for sums at x = 1")
        q.add_argument("--out", help="write JSON here instead of stdout")

    s = sub.add_parser("solve", help="solve the P or Q approximation problem")
    s.add_argument("--kind", choices=("P", "Q"), required=True)
    s.add_argument("--r", type=_nonneg, required=True)
    s.add_argument("--n", type=_nonneg, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("eval", help="evaluate a target such as 'zeta 3' or 'li 2,1;l inv 3'")
    e.add_argument("target")
    common(e)
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    v.add_argument("--r", type=_nonneg)
    v.add_argument("--n", type=_nonneg)
    v.add_argument("--seed", type=int, help="enables the QMC route of the vasilyev suite")
    common(v)
    v.set_defaults(func=cmd_verify)

    j = sub.add_parser("vasilyev", help="J_{2r+3,n} by several routes")
    j.add_argument("--r", type=_nonneg, required=True)
    j.add_argument("--n", type=_nonneg, required=True)
    j.add_argument("--sigma", type=int, default=1)
    j.add_argument("--mc", action="store_true", help="add the QMC route (needs --seed)")
    j.add_argument("--seed", type=int)
    common(j)
    j.set_defaults(func=cmd_vasilyev)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "prec", 64) < 16 or getattr(args, "kmax", 10) < 10:
        print("mzvpade: --prec must be >= 16 and --kmax >= 10", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as err:
        print(f"mzvpade: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as err:
        print(f"mzvpade: {err}", file=sys.stderr)
        return EXIT_MATH
    except (BudgetError, BudgetExceeded, OverflowError) as err:
        print(f"mzvpade: budget exceeded: {err}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
