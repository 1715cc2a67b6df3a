"""``cubiprox`` command-line front end.

Every command prints one record (JSON by default, CSV with ``--csv``);
``sample`` prints a table (CSV by default). Exit codes: 0 success, 1 a
``--check`` or ``check`` comparison exceeded its tolerance, 2 malformed or
degenerate input, 3 violated precondition, 4 a closed form fell back to
bisection.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from . import oracle, suites
from .cubic import (
    Cubic,
    DepressedCubic,
    RealRootSet,
    classify,
    evaluate,
    residual_scale,
    solve_depressed,
    solve_general,
)
from .epigraph import discriminant as epi_discriminant
from .epigraph import project_epigraph, shift_equation
from .errors import ConsistencyError, DomainError, PreconditionError
from .perspective import lambda_cubic, prox_perspective
from .points import LabeledPoint
from .quartic import ConvexQuartic, conjugate, prox
from .reciprocal import ReciprocalFn, conjugate_reciprocal, prox_reciprocal_detail
from .saddle import SaddleCase, SaddleSet, project, scalar_equation

SCHEMA = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_FALLBACK = 4


class Fallback(Exception):
    """A record was produced, but only after a closed form was abandoned."""


def _num(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _fmt(v: Any) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, (list, tuple)):
        return ";".join(_fmt(x) for x in v)
    if v is None:
        return ""
    return str(v)


def _plain(v: Any) -> Any:
    """numpy scalars and arrays to JSON-ready Python values."""
    if isinstance(v, np.ndarray):
        return [float(x) for x in v]
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def _flatten(record: dict) -> dict:
    out: dict = {}
    for key, value in record.items():
        if isinstance(value, dict):
            for k, v in value.items():
                out[f"{key}.{k}"] = v
        else:
            out[key] = value
    return out


def emit(record: dict, as_csv: bool, out=None) -> None:
    out = out or sys.stdout
    record = _plain(record)
    if as_csv:
        flat = _flatten(record)
        w = csv.writer(out, lineterminator="\n")
        w.writerow(flat.keys())
        w.writerow(_fmt(v) for v in flat.values())
    else:
        out.write(json.dumps(record) + "\n")


def _record(args: argparse.Namespace, inputs: dict, outputs: dict, *,
            branch: str | None, delta: float | None, residual: float | None) -> dict:
    return {
        "schema": SCHEMA,
        "command": args.command_name,
        "inputs": inputs,
        "outputs": outputs,
        "branch": branch,
        "delta": delta,
        "residual": residual,
    }


def _attach_check(args: argparse.Namespace, record: dict, oracle_value: Any, diff: float,
                  default_tol: float) -> None:
    tol = args.tol if args.tol is not None else default_tol
    record["oracle"] = oracle_value
    record["oracle_diff"] = diff
    record["check_passed"] = bool(diff <= tol)


# -- cubic --------------------------------------------------------------------

def _roots_record(args, inputs, f, roots: RealRootSet) -> dict:
    tri = classify(f)
    residual = max(abs(evaluate(f, r)) / residual_scale(f, r) for r in roots.roots)
    outputs = {
        "kind": roots.kind.name,
        "roots": list(roots.roots),
        "multiplicities": list(roots.multiplicities),
        "complex_pair": list(roots.complex_pair) if roots.complex_pair else None,
        "p": tri.p,
        "q": tri.q,
        "theta": tri.theta,
    }
    rec = _record(args, inputs, outputs, branch=tri.branch.name, delta=tri.delta,
                  residual=residual)
    if args.check:
        a, b, c, d = f.coefficients
        ref = [r for r, _ in oracle.real_roots(Cubic(a, b, c, d))]
        if len(ref) == len(roots.roots):
            diff = max((abs(r - s) / max(1.0, abs(s)) for r, s in zip(roots.roots, ref)),
                       default=0.0)
        else:
            diff = math.inf
        _attach_check(args, rec, ref, diff, 1e-6)
    return rec


def cmd_cubic(args) -> dict:
    f = Cubic(args.a, args.b, args.c, args.d)
    return _roots_record(args, {"a": args.a, "b": args.b, "c": args.c, "d": args.d},
                         f, solve_general(f))


def cmd_depressed(args) -> dict:
    g = DepressedCubic(args.p, args.q)
    return _roots_record(args, {"p": args.p, "q": args.q}, g, solve_depressed(g))


# -- quartic / reciprocal / perspective ----------------------------------------

def _quartic(args) -> ConvexQuartic:
    return ConvexQuartic(args.alpha, args.beta, args.gamma, args.delta, args.epsilon)


def _quartic_inputs(args) -> dict:
    return {"alpha": args.alpha, "beta": args.beta, "gamma": args.gamma,
            "delta": args.delta, "epsilon": args.epsilon, "y": args.y}


def cmd_prox_quartic(args) -> dict:
    h = _quartic(args)
    x = prox(h, args.y)
    tri = classify(h.prox_cubic(args.y))
    rec = _record(args, _quartic_inputs(args), {"x": x}, branch=tri.branch.name,
                  delta=tri.delta, residual=abs(h.derivative(x) + x - args.y))
    if args.check:
        ref = oracle.quartic_prox(h, args.y)
        _attach_check(args, rec, ref, abs(x - ref), 1e-6)
    return rec


def cmd_conjugate_quartic(args) -> dict:
    h = _quartic(args)
    cv = conjugate(h, args.y)
    tri = classify(h.conjugate_cubic(args.y))
    rec = _record(args, _quartic_inputs(args), {"argmax": cv.argmax, "value": cv.value},
                  branch=tri.branch.name, delta=tri.delta,
                  residual=abs(h.derivative(cv.argmax) - args.y))
    if args.check:
        _, ref = oracle.quartic_conjugate(h, args.y)
        _attach_check(args, rec, ref, abs(cv.value - ref) / max(1.0, abs(ref)), 1e-6)
    return rec


def cmd_prox_reciprocal(args) -> dict:
    f = ReciprocalFn(args.alpha)
    r = prox_reciprocal_detail(f, args.y)
    rec = _record(args, {"alpha": args.alpha, "y": args.y},
                  {"x": r.x, "breakpoint": f.breakpoint}, branch=r.branch, delta=r.delta,
                  residual=abs(f.stationarity(r.x, args.y)))
    if args.check:
        ref = oracle.reciprocal_prox(args.alpha, args.y)
        _attach_check(args, rec, ref, abs(r.x - ref), 1e-6)
    if r.fallback:
        rec["fallback"] = True
    return rec


def cmd_conjugate_reciprocal(args) -> dict:
    f = ReciprocalFn(args.alpha)
    value = conjugate_reciprocal(f, args.y)
    rec = _record(args, {"alpha": args.alpha, "y": args.y}, {"value": value},
                  branch=None, delta=None, residual=None)
    if args.check:
        ref = oracle.reciprocal_conjugate(args.alpha, args.y)
        diff = 0.0 if value == ref else abs(value - ref) / max(1.0, abs(ref))
        _attach_check(args, rec, ref, diff, 1e-6)
    return rec


def cmd_prox_perspective(args) -> dict:
    pt = LabeledPoint(args.y, args.eta)
    r = prox_perspective(args.gamma, pt)
    ny = float(np.linalg.norm(pt.vec))
    residual = 0.0
    if r.method in ("cardano", "trig"):
        pp, qq = lambda_cubic(args.gamma, ny, args.eta)
        residual = abs((r.lam * r.lam + pp) * r.lam + qq)
    rec = _record(args, {"gamma": args.gamma, "y": list(args.y), "eta": args.eta},
                  {"vec": r.point.vec, "scalar": r.point.scalar, "lambda": r.lam,
                   "method": r.method, "shrink": r.shrink},
                  branch=r.branch, delta=r.delta, residual=residual)
    if args.check:
        rv, rs = oracle.perspective_prox(args.gamma, pt.vec, pt.scalar)
        ref = LabeledPoint(rv, rs)
        _attach_check(args, rec, list(ref.as_array()), r.point.distance(ref), 1e-5)
    if r.fallback:
        rec["fallback"] = True
    return rec


# -- projections --------------------------------------------------------------

def cmd_project_epigraph(args) -> dict:
    pt = LabeledPoint(args.y, args.eta)
    r = project_epigraph(args.alpha, pt)
    nu = float(np.linalg.norm(pt.vec))
    residual = 0.0 if r.branch == "interior" else abs(
        shift_equation(args.alpha, nu, args.eta, r.shift))
    rec = _record(args, {"alpha": args.alpha, "y": list(args.y), "eta": args.eta},
                  {"vec": r.point.vec, "scalar": r.point.scalar, "shift": r.shift},
                  branch=r.branch, delta=r.delta, residual=residual)
    if args.check:
        if r.branch == "interior":
            ref = pt
        else:
            rv, rs = oracle.epigraph_projection(args.alpha, pt.vec, pt.scalar)
            ref = LabeledPoint(rv, rs)
        _attach_check(args, rec, list(ref.as_array()),
                      max(0.0, pt.distance(r.point) - pt.distance(ref)), 1e-6)
    if r.fallback:
        rec["fallback"] = True
    return rec


def cmd_project_saddle(args) -> dict:
    S = SaddleSet(args.alpha, args.beta)
    case = SaddleCase(args.kind, args.z, args.gamma)
    r = project(S, case)
    rec = _record(args, {"kind": args.kind, "alpha": args.alpha, "beta": args.beta,
                         "z": list(args.z), "gamma": args.gamma},
                  {"p1": r.p1, "p2": r.p2, "p3": r.p3, "x": r.root,
                   "membership": S.membership_residual(r.p1, r.p2, r.p3)},
                  branch=r.branch, delta=r.delta,
                  residual=abs(scalar_equation(case, S, r.root)))
    if args.check:
        ref = oracle.saddle_root(args.kind, S.alpha, S.beta, case.zeta, case.gamma)
        _attach_check(args, rec, ref, abs(r.root - ref), 1e-8)
    if r.fallback:
        rec["fallback"] = True
    return rec


# -- sample -------------------------------------------------------------------

def _grid(lo: float, hi: float, num: int) -> np.ndarray:
    if num < 1 or not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo or (num > 1 and hi == lo):
        raise DomainError(f"empty or invalid range [{lo}, {hi}] with {num} points")
    return np.linspace(lo, hi, num)


def sample_quartic(args) -> tuple[list[str], list[list]]:
    h = _quartic(args)
    rows = []
    for y in _grid(args.lo, args.hi, args.num):
        y = float(y)
        tri = classify(h.prox_cubic(y))
        rows.append([y, h(y), conjugate(h, y).value, prox(h, y), tri.branch.name, tri.delta])
    return ["input", "h", "conjugate", "prox", "branch", "delta"], rows


def sample_reciprocal(args) -> tuple[list[str], list[list]]:
    f = ReciprocalFn(args.alpha)
    rows = []
    for y in _grid(args.lo, args.hi, args.num):
        r = prox_reciprocal_detail(f, float(y))
        rows.append([float(y), r.x, r.branch, r.delta])
    return ["input", "prox", "branch", "delta"], rows


def sample_epigraph_map(args) -> tuple[list[str], list[list]]:
    """Branch taken at each ``(eta, nu)`` node, plus the discriminant and its
    sign everywhere, interior nodes included, so the whole ``delta = 0`` curve shows."""
    rows = []
    for eta in _grid(args.eta_lo, args.eta_hi, args.num):
        for nu in _grid(args.nu_lo, args.nu_hi, args.num):
            eta, nu = float(eta), float(nu)
            r = project_epigraph(args.alpha, LabeledPoint([nu], eta))
            d = epi_discriminant(args.alpha, nu, eta)
            rows.append([eta, nu, r.branch, d, int(np.sign(d))])
    return ["eta", "nu", "branch", "delta", "sign"], rows


SAMPLERS = {
    "quartic": sample_quartic,
    "reciprocal": sample_reciprocal,
    "epigraph-map": sample_epigraph_map,
}


def cmd_sample(args) -> int:
    columns, rows = SAMPLERS[args.target](args)
    if args.json:
        sys.stdout.write(json.dumps({"schema": SCHEMA, "command": f"sample {args.target}",
                                     "columns": columns, "rows": rows}) + "\n")
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow(_fmt(v) for v in row)
    return EXIT_OK


def cmd_check(args) -> int:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    rng = oracle.make_rng(args.seed)
    status = EXIT_OK
    for name in names:
        kwargs = {}
        if args.n is not None:
            kwargs["n"] = args.n
        if args.tol is not None:
            kwargs["tol"] = args.tol
        res = suites.SUITES[name](rng, **kwargs)
        rec = {"schema": SCHEMA, "command": f"check {name}", "seed": rng_seed(args),
               "n": res.n, "max_error": res.max_error, "tol": res.tol,
               "passed": res.passed, "seconds": res.seconds}
        emit(rec, args.csv)
        if not res.passed:
            status = EXIT_CHECK_FAILED
    return status


def rng_seed(args) -> int:
    return oracle.default_seed() if args.seed is None else args.seed


# -- parser -------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit JSON (default for records)")
    fmt.add_argument("--csv", action="store_true", help="emit CSV (default for sample)")
    common.add_argument("--check", action="store_true",
                        help="compare against the brute-force oracle")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                        help=f"seed for randomised checks (default ${oracle.SEED_ENV} or 0x5EED)")
    common.add_argument("--tol", type=_num, default=None, help="tolerance for oracle comparisons")
    return common


def _add_quartic_flags(p: argparse.ArgumentParser, defaults: Sequence[float] = (1, 0, 0, 0, 0)) -> None:
    for name, default in zip(("alpha", "beta", "gamma", "delta", "epsilon"), defaults):
        p.add_argument(f"--{name}", type=_num, default=float(default))


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="cubiprox",
        description="Closed-form cubic roots, proximal maps, conjugates and projections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cubic", parents=[common], help="real roots of a x^3 + b x^2 + c x + d")
    for name in "abcd":
        p.add_argument(f"-{name}", type=_num, required=True)
    p.set_defaults(func=cmd_cubic, command_name="cubic")

    p = sub.add_parser("depressed", parents=[common], help="real roots of z^3 + p z + q")
    p.add_argument("-p", type=_num, required=True)
    p.add_argument("-q", type=_num, required=True)
    p.set_defaults(func=cmd_depressed, command_name="depressed")

    p = sub.add_parser("prox", help="proximal maps")
    ops = p.add_subparsers(dest="operator", required=True)
    q = ops.add_parser("quartic", parents=[common],
                       help="prox of alpha x^4 + beta x^3 + gamma x^2 + delta x + epsilon")
    _add_quartic_flags(q)
    q.add_argument("--y", type=_num, required=True)
    q.set_defaults(func=cmd_prox_quartic, command_name="prox quartic")
    q = ops.add_parser("reciprocal", parents=[common], help="prox of alpha/x on x > 0")
    q.add_argument("--alpha", type=_num, required=True)
    q.add_argument("--y", type=_num, required=True)
    q.set_defaults(func=cmd_prox_reciprocal, command_name="prox reciprocal")
    q = ops.add_parser("perspective", parents=[common],
                       help="prox of gamma ||y||^2/(2 eta)")
    q.add_argument("--gamma", type=_num, required=True)
    q.add_argument("--y", type=_num, nargs="+", required=True)
    q.add_argument("--eta", type=_num, required=True)
    q.set_defaults(func=cmd_prox_perspective, command_name="prox perspective")

    p = sub.add_parser("conjugate", help="Fenchel conjugates")
    ops = p.add_subparsers(dest="operator", required=True)
    q = ops.add_parser("quartic", parents=[common])
    _add_quartic_flags(q)
    q.add_argument("--y", type=_num, required=True)
    q.set_defaults(func=cmd_conjugate_quartic, command_name="conjugate quartic")
    q = ops.add_parser("reciprocal", parents=[common])
    q.add_argument("--alpha", type=_num, required=True)
    q.add_argument("--y", type=_num, required=True)
    q.set_defaults(func=cmd_conjugate_reciprocal, command_name="conjugate reciprocal")

    p = sub.add_parser("project", help="projections")
    ops = p.add_subparsers(dest="operator", required=True)
    q = ops.add_parser("epigraph", parents=[common], help="onto {alpha ||y||^2 <= eta}")
    q.add_argument("--alpha", type=_num, required=True)
    q.add_argument("--y", type=_num, nargs="+", required=True)
    q.add_argument("--eta", type=_num, required=True)
    q.set_defaults(func=cmd_project_epigraph, command_name="project epigraph")
    q = ops.add_parser("saddle", parents=[common], help="onto {<x, y> = alpha gamma}")
    q.add_argument("--kind", choices=("antidiag", "diag"), required=True,
                   help="antidiag projects (z, -z, gamma); diag projects (z, z, gamma)")
    q.add_argument("--alpha", type=_num, required=True)
    q.add_argument("--beta", type=_num, required=True)
    q.add_argument("--z", type=_num, nargs="+", required=True)
    q.add_argument("--gamma", type=_num, required=True)
    q.set_defaults(func=cmd_project_saddle, command_name="project saddle")

    p = sub.add_parser("sample", help="curve and region data as a table")
    targets = p.add_subparsers(dest="target", required=True)
    q = targets.add_parser("quartic", parents=[common], help="h, h* and prox over a y range")
    _add_quartic_flags(q, (1, 1, 1, 1, 1))
    q.add_argument("--lo", type=_num, default=-3.0)
    q.add_argument("--hi", type=_num, default=3.0)
    q.add_argument("--num", type=int, default=601)
    q = targets.add_parser("reciprocal", parents=[common], help="prox of alpha/x over a y range")
    q.add_argument("--alpha", type=_num, default=1.0)
    q.add_argument("--lo", type=_num, default=-5.0)
    q.add_argument("--hi", type=_num, default=5.0)
    q.add_argument("--num", type=int, default=1001)
    q = targets.add_parser("epigraph-map", parents=[common],
                           help="branch of the epigraph projection over an (eta, nu) grid")
    q.add_argument("--alpha", type=_num, default=0.5)
    q.add_argument("--eta-lo", type=_num, default=-2.0)
    q.add_argument("--eta-hi", type=_num, default=10.0)
    q.add_argument("--nu-lo", type=_num, default=0.0)
    q.add_argument("--nu-hi", type=_num, default=8.0)
    q.add_argument("--num", type=int, default=201, help="points per axis")
    for q in targets.choices.values():
        q.set_defaults(func=cmd_sample)

    p = sub.add_parser("check", parents=[common], help="randomised closed-form vs oracle suites")
    p.add_argument("suite", choices=[*suites.SUITES, "all"])
    p.add_argument("--n", type=int, default=None, help="instances per suite")
    p.set_defaults(func=cmd_check)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
        if isinstance(result, int):
            return result
        emit(result, args.csv)
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_FALLBACK
    except (DomainError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if result.get("fallback"):
        return EXIT_FALLBACK
    if result.get("check_passed") is False:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
