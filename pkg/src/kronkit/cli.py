"""File-driven command line: ``kronkit <command> ...``.

Exit codes: 0 success, 1 usage error, 2 parse/format error, 3 numeric error
(non-convergence, degenerate input). Errors go to stderr as one line,
``error: <category>: <message>``.

Relative output paths are resolved under ``$KRONKIT_OUTPUT_DIR`` when set.
"""
import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import io as tio
from .bench import bench_matvec
from .dense import fro_norm
from .errors import (
    ContractError,
    ConvergenceError,
    DomainError,
    FormatError,
    ParseError,
    RangeError,
    ShapeError,
)
from .kron import kron
from .nkp import kron_rank, kron_spectrum, kron_sum_approx, nearest_kron
from .rearrange import BlockShape, rearrange
from .svd import RankTolerance, jacobi_svd
from .unfold import hosvd, mode_unfold, multilinear_rank

OUTPUT_DIR_ENV = "KRONKIT_OUTPUT_DIR"

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunReport:
    """What a command did; residuals in ``outputs`` are recomputed from written factors."""

    command: list
    inputs: list = field(default_factory=list)
    outputs: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    as_json: bool = False

    def add_input(self, name, X):
        self.inputs.append({"name": name, "dims": list(X.shape), "fro_norm": fro_norm(X)})

    def lines(self):
        for item in self.inputs:
            dims = "x".join(str(n) for n in item["dims"])
            yield f"input {item['name']} {dims} fro_norm {item['fro_norm']!r}"
        for key, value in self.outputs.items():
            if isinstance(value, (list, tuple)):
                value = " ".join(str(v) for v in value)
            elif isinstance(value, float):
                value = repr(value)
            yield f"{key} {value}"
        for key, value in self.timings.items():
            yield f"time_{key} {value:.6f}"


def _sig6(values):
    return [f"{v:.6g}" for v in values]


def _out_path(path):
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _write(path, X, report):
    path = _out_path(path)
    tio.write_tensor(path, X)
    report.outputs.setdefault("wrote", []).append(path)
    return path


def _read(path, report, name):
    X = tio.read_tensor(path)
    report.add_input(name, X)
    return X


def _matrix(X, name):
    if X.ndim != 2:
        raise ShapeError(f"{name} must be a matrix, file holds an order-{X.ndim} tensor")
    return X


def _shape(args):
    return BlockShape.parse(args.grid, args.block)


def _ext(args):
    return ".bin" if args.binary else ".txt"


class _Timer:
    def __init__(self, report, key):
        self.report, self.key = report, key

    def __enter__(self):
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        self.report.timings[self.key] = time.perf_counter() - self.t0


def cmd_kron(args, report):
    B = _matrix(_read(args.A, report, "A"), "A")
    C = _matrix(_read(args.C, report, "C"), "C")
    with _Timer(report, "kron"):
        K = kron(B, C)
    report.outputs["dims"] = f"{K.shape[0]}x{K.shape[1]}"
    _write(args.output, K, report)


def cmd_nkp(args, report):
    A = _matrix(_read(args.A, report, "A"), "A")
    shape = _shape(args)
    shape.check(A)
    with _Timer(report, "nkp"):
        if args.rank is None:
            B, C, _ = nearest_kron(A, shape)
            terms = [(B, C)]
        else:
            result, _ = kron_sum_approx(A, shape, args.rank)
            terms = list(result.terms)
    with _Timer(report, "spectrum"):
        sigma = kron_spectrum(A, shape)
    approx = np.zeros_like(A)
    for k, (B, C) in enumerate(terms):
        approx += kron(B, C)
        _write(f"{args.output}_B{k}{_ext(args)}", B, report)
        _write(f"{args.output}_C{k}{_ext(args)}", C, report)
    report.outputs["terms"] = len(terms)
    report.outputs["residual"] = fro_norm(A - approx)
    report.outputs["sigma"] = _sig6(sigma[: args.show])


def cmd_rearrange(args, report):
    A = _matrix(_read(args.A, report, "A"), "A")
    shape = _shape(args)
    with _Timer(report, "rearrange"):
        R = rearrange(A, shape)
    report.outputs["dims"] = f"{R.shape[0]}x{R.shape[1]}"
    _write(args.output, R, report)


def cmd_kron_rank(args, report):
    A = _matrix(_read(args.A, report, "A"), "A")
    with _Timer(report, "kron_rank"):
        r = kron_rank(A, _shape(args), RankTolerance(args.tol))
    report.outputs["kron_rank"] = r


def cmd_svd(args, report):
    A = _matrix(_read(args.A, report, "A"), "A")
    with _Timer(report, "svd"):
        res = jacobi_svd(A)
    report.outputs["sigma"] = _sig6(res.sigma[: args.show])
    if args.rank is not None:
        if not 1 <= args.rank <= res.rank:
            raise RangeError(f"rank {args.rank} outside [1, {res.rank}]")
        res = res.truncate(args.rank)
        report.outputs["residual"] = fro_norm(A - res.reconstruct())
    if args.output:
        _write(f"{args.output}_U{_ext(args)}", res.u, report)
        _write(f"{args.output}_S{_ext(args)}", res.sigma, report)
        _write(f"{args.output}_V{_ext(args)}", res.v, report)


def cmd_unfold(args, report):
    X = _read(args.X, report, "X")
    with _Timer(report, "unfold"):
        M = mode_unfold(X, args.mode).matrix
    report.outputs["dims"] = f"{M.shape[0]}x{M.shape[1]}"
    _write(args.output, M, report)


def cmd_mlrank(args, report):
    X = _read(args.X, report, "X")
    with _Timer(report, "mlrank"):
        report.outputs["mlrank"] = list(multilinear_rank(X, RankTolerance(args.tol)))


def cmd_hosvd(args, report):
    X = _read(args.X, report, "X")
    try:
        target = [int(r) for r in args.target.split(",")]
    except ValueError:
        raise UsageError(f"--target must be comma-separated integers, got {args.target!r}") from None
    with _Timer(report, "hosvd"):
        res = hosvd(X, target)
    _write(f"{args.output}_core{_ext(args)}", res.core, report)
    for k, U in enumerate(res.factors):
        _write(f"{args.output}_U{k}{_ext(args)}", U, report)
    report.outputs["error"] = fro_norm(X - res.reconstruct())


def cmd_bench_matvec(args, report):
    for name in ("m", "n", "p", "q", "reps"):
        if getattr(args, name) < 1:
            raise UsageError(f"--{name} must be positive")
    result = bench_matvec(args.m, args.n, args.p, args.q, reps=args.reps, seed=args.seed)
    report.timings["explicit_median"] = result["explicit_s"]
    report.timings["structured_median"] = result["structured_s"]
    report.outputs["speedup"] = result["speedup"]
    report.outputs["rel_diff"] = result["rel_diff"]


def build_parser():
    parser = _Parser(prog="kronkit", description="Kronecker-structured dense linear algebra.")
    parser.add_argument("--json", action="store_true", help="print the run report as JSON")
    parser.add_argument(
        "--threads", type=int, default=1, help="worker threads; never changes numeric output"
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    def blocked(p):
        p.add_argument("--grid", required=True, metavar="MxN", help="block grid, e.g. 2x3")
        p.add_argument("--block", required=True, metavar="PxQ", help="block size, e.g. 4x4")

    def binary(p):
        p.add_argument("--binary", action="store_true", help="write TEN1 binary files")

    p = sub.add_parser("kron", help="materialize kron(A, C)")
    p.add_argument("A")
    p.add_argument("C")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_kron)

    p = sub.add_parser("nkp", help="nearest Kronecker product / r-term Kronecker sum")
    p.add_argument("A")
    blocked(p)
    p.add_argument("--rank", type=int)
    p.add_argument("--show", type=int, default=6, help="number of sigmas to print")
    p.add_argument("-o", "--output", required=True, metavar="PREFIX")
    binary(p)
    p.set_defaults(func=cmd_nkp)

    p = sub.add_parser("rearrange", help="write the rearranged matrix T(A)")
    p.add_argument("A")
    blocked(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_rearrange)

    p = sub.add_parser("kron-rank", help="numerical Kronecker rank")
    p.add_argument("A")
    blocked(p)
    p.add_argument("--tol", type=float, default=RankTolerance().rel_tol)
    p.set_defaults(func=cmd_kron_rank)

    p = sub.add_parser("svd", help="singular values (optionally truncated)")
    p.add_argument("A")
    p.add_argument("--rank", type=int)
    p.add_argument("--show", type=int, default=6)
    p.add_argument("-o", "--output", metavar="PREFIX")
    binary(p)
    p.set_defaults(func=cmd_svd)

    p = sub.add_parser("unfold", help="mode-K unfolding (0-based K)")
    p.add_argument("X")
    p.add_argument("--mode", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_unfold)

    p = sub.add_parser("mlrank", help="multilinear rank")
    p.add_argument("X")
    p.add_argument("--tol", type=float, default=RankTolerance().rel_tol)
    p.set_defaults(func=cmd_mlrank)

    p = sub.add_parser("hosvd", help="truncated HOSVD")
    p.add_argument("X")
    p.add_argument("--target", required=True, metavar="R1,...,Rd")
    p.add_argument("-o", "--output", required=True, metavar="PREFIX")
    binary(p)
    p.set_defaults(func=cmd_hosvd)

    p = sub.add_parser("bench-matvec", help="time materialized vs structured kron matvec")
    for name in ("m", "n", "p", "q"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench_matvec)
    return parser


def _category(exc):
    """Map an exception to ``(exit code, category)``."""
    table = [
        (UsageError, EXIT_USAGE, "usage"),
        (ShapeError, EXIT_USAGE, "shape"),
        (RangeError, EXIT_USAGE, "range"),
        (ParseError, EXIT_PARSE, "parse"),
        (FormatError, EXIT_PARSE, "format"),
        (OSError, EXIT_PARSE, "io"),
        (ConvergenceError, EXIT_NUMERIC, "convergence"),
        (DomainError, EXIT_NUMERIC, "numeric"),
        (ContractError, EXIT_NUMERIC, "numeric"),
    ]
    for cls, code, name in table:
        if isinstance(exc, cls):
            return code, name
    return None


def run_command(argv):
    """Run one command; returns ``(exit_code, RunReport or None, error line or None)``."""
    argv = list(argv)
    report = RunReport(command=argv)
    try:
        args = build_parser().parse_args(argv)
        report.as_json = args.json
        if args.command is None:
            raise UsageError("a command is required; see --help")
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        args.func(args, report)
    except Exception as exc:
        mapped = _category(exc)
        if mapped is None:
            raise
        code, name = mapped
        message = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        return code, None, f"error: {name}: {message}"
    return EXIT_OK, report, None


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv):
        build_parser().parse_args(argv)  # argparse prints help and exits 0
    code, report, err = run_command(argv)
    if err is not None:
        print(err, file=sys.stderr)
        return code
    if report.as_json:
        payload = asdict(report)
        del payload["as_json"]
        print(json.dumps(payload, indent=2))
    else:
        for line in report.lines():
            print(line)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
