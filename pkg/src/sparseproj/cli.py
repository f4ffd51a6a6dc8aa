"""Command-line interface.

Subcommands: ``project``, ``sigma``, ``gradvec``, ``bench``, ``selfcheck``.
Vectors move through files or stdin/stdout (``-``); projection diagnostics
go to stderr so pipelines stay clean.  Domain rejections map to distinct
exit codes so scripts can tell a bad vector from a bad invocation.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .bench import BenchConfig, write_csv
from .core import (
    DegenerateInputError,
    SolverError,
    SparsenessTarget,
    ValidationStatus,
    derive_norms,
    sigma,
    validate_input,
)
from .gradient import GradientFactors, grad_vec, gradient_factors
from .projection import project_inplace
from .rootfind import SolverKind
from .selfcheck import run_selfcheck
from .vecio import FORMATS, read_vector, write_vector

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_MALFORMED = 3
EXIT_ZERO = 4
EXIT_NEGATIVE = 5
EXIT_DIMENSION = 6
EXIT_DEGENERATE = 7
EXIT_SOLVER = 8

_REJECT_EXITS = {
    ValidationStatus.REJECT_ZERO: EXIT_ZERO,
    ValidationStatus.REJECT_NEGATIVE: EXIT_NEGATIVE,
    ValidationStatus.REJECT_DIMENSION: EXIT_DIMENSION,
}


def _fail(code: int, message: str) -> int:
    print(f"sparseproj: error: {message}", file=sys.stderr)
    return code


def _read(path: str, fmt: str) -> np.ndarray:
    return read_vector(path, fmt)


def _resolve_target(args, n: int) -> SparsenessTarget:
    if args.sigma is not None:
        return derive_norms(args.sigma, n)
    return SparsenessTarget(n=n, lambda1=args.l1, lambda2=args.l2)


def _add_target_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--sigma",
        type=float,
        metavar="S",
        help="target sparseness in (0,1); the L2 norm is fixed to 1 and the "
        "L1 norm derived from the input dimension",
    )
    group.add_argument("--l1", type=float, metavar="L1", help="target L1 norm")
    parser.add_argument("--l2", type=float, metavar="L2", help="target L2 norm (with --l1)")


def _add_io_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--in", dest="inp", default="-", metavar="PATH", help="input vector path or - for stdin")
    parser.add_argument("--out", dest="out", default="-", metavar="PATH", help="output path or - for stdout")
    parser.add_argument("--format", choices=FORMATS, default="text", help="vector file format")


def _cmd_project(args) -> int:
    try:
        x = _read(args.inp, args.format)
    except (OSError, ValueError) as exc:
        return _fail(EXIT_MALFORMED, str(exc))
    if x.size == 0:
        return _fail(EXIT_ZERO, "empty input vector")
    if x.size < 2:
        return _fail(EXIT_DIMENSION, "projection needs at least 2 entries")
    if args.sigma is None and (args.l1 is None or args.l2 is None):
        return _fail(EXIT_USAGE, "--l1 requires --l2")
    try:
        target = _resolve_target(args, x.size)
    except ValueError as exc:
        return _fail(EXIT_USAGE, str(exc))

    status = validate_input(x, target)
    if status in _REJECT_EXITS:
        return _fail(_REJECT_EXITS[status], f"input rejected: {status.value}")

    try:
        result = project_inplace(np.ascontiguousarray(x), target, SolverKind(args.solver))
    except DegenerateInputError as exc:
        return _fail(EXIT_DEGENERATE, str(exc))
    except SolverError as exc:
        return _fail(EXIT_SOLVER, str(exc))
    except ValueError as exc:
        return _fail(EXIT_MALFORMED, str(exc))

    write_vector(args.out, result.p, args.format)
    print(
        f"alpha={result.alpha!r} beta={result.beta!r} d={result.d} "
        f"evals={result.evals} sigma={sigma(result.p)!r}",
        file=sys.stderr,
    )
    if args.emit_factors:
        factors = gradient_factors(result, target)
        payload = {
            "n": int(factors.n),
            "lambda1": factors.lambda1,
            "lambda2": factors.lambda2,
            "alpha": result.alpha,
            "beta": result.beta,
            "a": factors.a,
            "b": factors.b,
            "support": factors.support.tolist(),
            "p_tilde": factors.p_tilde.tolist(),
            "boundary_unreliable": bool(factors.boundary_unreliable),
        }
        with open(args.emit_factors, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
            fh.write("\n")
    return EXIT_OK


def _cmd_sigma(args) -> int:
    try:
        x = _read(args.inp, args.format)
    except (OSError, ValueError) as exc:
        return _fail(EXIT_MALFORMED, str(exc))
    if x.size == 0:
        return _fail(EXIT_ZERO, "empty input vector")
    try:
        value = sigma(x)
    except ValueError as exc:
        msg = str(exc)
        if "zero vector" in msg:
            return _fail(EXIT_ZERO, msg)
        if "fewer than 2" in msg:
            return _fail(EXIT_DIMENSION, msg)
        return _fail(EXIT_MALFORMED, msg)
    print(repr(value))
    return EXIT_OK


def _cmd_gradvec(args) -> int:
    try:
        with open(args.factors, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        factors = GradientFactors(
            n=int(payload["n"]),
            support=np.asarray(payload["support"], dtype=np.intp),
            p_tilde=np.asarray(payload["p_tilde"], dtype=np.float64),
            lambda1=float(payload["lambda1"]),
            lambda2=float(payload["lambda2"]),
            a=float(payload["a"]),
            b=float(payload["b"]),
            boundary_unreliable=bool(payload.get("boundary_unreliable", False)),
        )
    except (OSError, ValueError, KeyError, TypeError) as exc:
        return _fail(EXIT_MALFORMED, f"cannot load factors: {exc}")
    try:
        y = _read(args.y, args.format)
    except (OSError, ValueError) as exc:
        return _fail(EXIT_MALFORMED, str(exc))
    try:
        z = grad_vec(factors, y)
    except ValueError as exc:
        return _fail(EXIT_DIMENSION, str(exc))
    write_vector(args.out, z, args.format)
    return EXIT_OK


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok)


def _parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(",") if tok)


def _cmd_bench(args) -> int:
    try:
        config = BenchConfig(
            n_list=_parse_int_list(args.n_list),
            sigma_list=_parse_float_list(args.sigma_list),
            trials=args.trials,
            solvers=tuple(SolverKind(s) for s in args.solvers.split(",") if s),
            seed=args.seed,
        )
    except ValueError as exc:
        return _fail(EXIT_USAGE, str(exc))
    if args.csv == "-":
        write_csv(config, sys.stdout)
    else:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_csv(config, fh)
    return EXIT_OK


def _cmd_selfcheck(_args) -> int:
    results = run_selfcheck(sys.stdout)
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"failed suites: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparseproj",
        description="Euclidean projections onto sets of fixed normalized sparseness",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_proj = sub.add_parser("project", help="project a vector onto the target set")
    _add_io_flags(p_proj)
    _add_target_flags(p_proj)
    p_proj.add_argument(
        "--solver",
        choices=[s.value for s in SolverKind],
        default=SolverKind.NEWTONSQR.value,
        help="root-finding policy (default: newtonsqr)",
    )
    p_proj.add_argument(
        "--emit-factors",
        metavar="PATH",
        default=None,
        help="write gradient factors of the projection as JSON",
    )
    p_proj.set_defaults(func=_cmd_project)

    p_sigma = sub.add_parser("sigma", help="print the sparseness of a vector")
    _add_io_flags(p_sigma)
    p_sigma.set_defaults(func=_cmd_sigma)

    p_grad = sub.add_parser("gradvec", help="multiply the projection gradient by a vector")
    p_grad.add_argument("--factors", required=True, metavar="PATH", help="JSON from project --emit-factors")
    p_grad.add_argument("--y", required=True, metavar="PATH", help="input vector path or -")
    p_grad.add_argument("--out", default="-", metavar="PATH")
    p_grad.add_argument("--format", choices=FORMATS, default="text")
    p_grad.set_defaults(func=_cmd_gradvec)

    p_bench = sub.add_parser("bench", help="run the solver-comparison benchmark")
    p_bench.add_argument("--n-list", default="1024", metavar="N1,N2,...")
    p_bench.add_argument("--sigma-list", default="0.5", metavar="S1,S2,...")
    p_bench.add_argument("--trials", type=int, default=100)
    p_bench.add_argument(
        "--solvers",
        default=",".join(s.value for s in SolverKind),
        metavar="S1,S2,...",
    )
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--csv", default="-", metavar="PATH")
    p_bench.set_defaults(func=_cmd_bench)

    p_check = sub.add_parser("selfcheck", help="run the built-in verification suites")
    p_check.set_defaults(func=_cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
