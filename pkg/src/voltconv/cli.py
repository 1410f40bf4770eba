"""Command-line front end.

Subcommands:
    eval         print kernel, N, and M values at given points
    convolve     read g from CSV, write J_nu g as CSV
    solve-charge read a forcing CSV, solve the charge equation, write q
    verify       run named or all theorem checks and print a report

CSV format: header ``x,value`` for real data or ``x,re,im`` for complex,
comma separated, LF line endings, 17 significant digits (lossless double
round-trip).  Exit codes: 0 success / all checks pass, 1 a check failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from .charge import ChargeProblem, solve_linear_charge, solve_nonlinear_charge
from .convolve import SampledFunction, apply_Jnu
from .errors import UsageError, VoltconvError
from .kernels import make_kernel
from .verify import ALL_CHECKS, run_check

_FMT = "%.17g"


def _format(v: float) -> str:
    return _FMT % v


def read_csv(path: str) -> SampledFunction:
    """Read a sampled function; the x column must be a uniform grid from 0."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise UsageError(f"{path}: empty CSV")
    header = [c.strip().lower() for c in rows[0]]
    if header == ["x", "value"]:
        complex_data = False
    elif header == ["x", "re", "im"]:
        complex_data = True
    else:
        raise UsageError(f"{path}: header must be 'x,value' or 'x,re,im', got {rows[0]}")
    try:
        body = np.array([[float(c) for c in row] for row in rows[1:] if row])
    except ValueError as exc:
        raise UsageError(f"{path}: malformed number: {exc}") from exc
    if body.ndim != 2 or len(body) < 2 or body.shape[1] != len(header):
        raise UsageError(f"{path}: need >= 2 complete data rows")
    xs = body[:, 0]
    n = len(xs) - 1
    h = xs[-1] / n if xs[-1] > 0 else 0.0
    if h <= 0 or not np.allclose(xs, h * np.arange(n + 1), rtol=0, atol=1e-12 * max(1.0, xs[-1])):
        raise UsageError(f"{path}: x column must be a uniform grid starting at 0")
    values = body[:, 1] + 1j * body[:, 2] if complex_data else body[:, 1]
    return SampledFunction(float(xs[-1]), values)


def write_csv(path: str, g: SampledFunction) -> None:
    """Write a sampled function; ``path == '-'`` means standard output."""
    fh, should_close = _open_out(path)
    try:
        if g.is_complex:
            fh.write("x,re,im\n")
            for x, v in zip(g.grid, g.values):
                fh.write(f"{_format(x)},{_format(v.real)},{_format(v.imag)}\n")
        else:
            fh.write("x,value\n")
            for x, v in zip(g.grid, g.values):
                fh.write(f"{_format(x)},{_format(float(v))}\n")
    finally:
        if should_close:
            fh.close()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="voltconv")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_kernel_flags(p):
        p.add_argument("--kernel", default="volterra-i",
                       choices=["volterra-i", "abel", "log-sonine"])
        p.add_argument("--alpha", type=float, default=None,
                       help="Abel kernel order (abel kernel only)")

    p_eval = sub.add_parser("eval", help="print kernel, N, and M values")
    add_kernel_flags(p_eval)
    p_eval.add_argument("--x", required=True,
                        help="comma-separated evaluation points (> 0)")
    p_eval.add_argument("--tol", type=float, default=1e-9)

    p_conv = sub.add_parser("convolve", help="apply J_nu to CSV samples")
    add_kernel_flags(p_conv)
    p_conv.add_argument("--input", required=True)
    p_conv.add_argument("--output", default="-")
    p_conv.add_argument("--tol", type=float, default=1e-9)

    p_chg = sub.add_parser("solve-charge", help="solve the charge equation")
    p_chg.add_argument("--kind", default="linear", choices=["linear", "nonlinear"])
    p_chg.add_argument("--alpha", type=float, default=0.0,
                       help="coupling strength (alpha, or alpha0 when nonlinear)")
    p_chg.add_argument("--sigma", type=float, default=1.0,
                       help="nonlinearity exponent (nonlinear only)")
    p_chg.add_argument("--input", required=True, help="forcing CSV")
    p_chg.add_argument("--output", default="-")
    p_chg.add_argument("--tol", type=float, default=1e-10)

    p_ver = sub.add_parser("verify", help="run theorem verification checks")
    p_ver.add_argument("--check", default="all",
                       choices=["all", *ALL_CHECKS])
    p_ver.add_argument("--n", type=int, default=2048)
    p_ver.add_argument("--T", type=float, default=1.0)
    p_ver.add_argument("--seed", type=int, default=1234)
    p_ver.add_argument("--output", default="-")
    return parser


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", newline="\n"), True


def _cmd_eval(args) -> int:
    kernel = make_kernel(args.kernel, alpha=args.alpha, rtol=args.tol)
    try:
        xs = [float(tok) for tok in args.x.split(",") if tok.strip()]
    except ValueError as exc:
        raise UsageError(f"--x: malformed number: {exc}") from exc
    if not xs or any(x <= 0 for x in xs):
        raise UsageError("--x needs one or more points > 0")
    print("x,nu,N,M")
    for x in xs:
        print(",".join(_format(v) for v in (x, kernel.nu(x), kernel.N(x), kernel.M(x))))
    return 0


def _cmd_convolve(args) -> int:
    kernel = make_kernel(args.kernel, alpha=args.alpha, rtol=args.tol)
    g = read_csv(args.input)
    write_csv(args.output, apply_Jnu(kernel, g))
    return 0


def _cmd_solve_charge(args) -> int:
    forcing = read_csv(args.input)
    problem = ChargeProblem(kind=args.kind, forcing=forcing,
                            alpha=args.alpha, sigma=args.sigma)
    if args.kind == "linear":
        report = solve_linear_charge(problem, tol=args.tol)
    else:
        report = solve_nonlinear_charge(problem, tol=args.tol)
    write_csv(args.output, report.solution)
    print(f"residual\t{_format(report.residual)}", file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    names = list(ALL_CHECKS) if args.check == "all" else [args.check]
    fh, should_close = _open_out(args.output)
    any_fail = False
    try:
        for name in names:
            rep = run_check(name, n=args.n, T=args.T, seed=args.seed)
            for line in rep.lines():
                fh.write(f"{name}:{line}\n")
            fh.write(f"{name}:verdict\t{rep.verdict}\n")
            any_fail = any_fail or rep.verdict == "fail"
    finally:
        if should_close:
            fh.close()
    return 1 if any_fail else 0


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.subcommand == "eval":
            return _cmd_eval(args)
        if args.subcommand == "convolve":
            return _cmd_convolve(args)
        if args.subcommand == "solve-charge":
            return _cmd_solve_charge(args)
        return _cmd_verify(args)
    except (UsageError, OSError) as exc:
        print(f"voltconv: error: {exc}", file=sys.stderr)
        return 2
    except VoltconvError as exc:
        print(f"voltconv: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
