"""Command-line front end: ``qgauss {eval,moments,check,figure,sample}``.

Exit codes: 0 ok, 1 property failure, 2 domain error, 3 truncation failure,
4 I/O error.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .checks import run_checks
from .errors import ConsistencyError, DomainError, TruncationError
from .figures import figure_grid
from .gaussq import GaussQ, check_supported
from .matchcomb import weighted_count
from .qcore import TruncationPolicy, q_double_factorial
from .qexp import E_q, e_q, gauss_kernel_report

EXIT_OK, EXIT_PROPERTY, EXIT_DOMAIN, EXIT_TRUNCATION, EXIT_IO = 0, 1, 2, 3, 4

MOMENTS_MAX = 12
MATCHING_MAX = 10


def _fmt(v: float) -> str:
    return f"{v:.15g}"


def _policy(args) -> TruncationPolicy:
    return TruncationPolicy(abs_tol=args.tol, max_terms=args.max_terms)


def cmd_eval(args) -> int:
    q = check_supported(args.q)
    policy = _policy(args)
    x = args.x
    if args.target == "eq":
        report = e_q(q, x, policy)
    elif args.target == "Eq":
        report = E_q(q, x, policy)
    elif args.target == "kernel":
        report = gauss_kernel_report(q, x, policy)
    else:
        g = GaussQ(q, policy)
        if args.target == "cdf":
            report = g.cdf_report(x)
        else:
            value = g.density(x)
            report = gauss_kernel_report(q, x, policy) if abs(x) <= g.nu else None
            print(_fmt(value))
            if report is not None:
                _diagnostics(report)
            return EXIT_OK
    print(_fmt(report.value))
    _diagnostics(report)
    return EXIT_OK


def _diagnostics(report) -> None:
    print(
        f"terms_used={report.terms_used} tail_bound={report.tail_bound:.3g} digits={report.digits}",
        file=sys.stderr,
    )


def cmd_moments(args) -> int:
    q = check_supported(args.q)
    if not 0 <= args.n_max <= MOMENTS_MAX:
        raise DomainError(f"--n-max must lie in [0, {MOMENTS_MAX}]")
    g = GaussQ(q, _policy(args))
    header = ["n", "integral_moment", "double_factorial", "matching_count", "max_discrepancy"]
    rows = [header]
    for n in range(args.n_max + 1):
        routes = [g.moment(n), q_double_factorial(q, n // 2) if n % 2 == 0 else 0.0]
        matching = weighted_count(n)(q) if n <= MATCHING_MAX else None
        if matching is not None:
            routes.append(matching)
        spread = max(routes) - min(routes)
        rows.append([str(n), *(_fmt(v) for v in routes[:2]),
                     "-" if matching is None else _fmt(matching), f"{spread:.3g}"])
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for r in rows:
        print("  ".join(cell.rjust(w) for cell, w in zip(r, widths)))
    return EXIT_OK


def cmd_check(args) -> int:
    qs = [check_supported(q) for q in args.q]
    failed = []
    for q in qs:
        for res in run_checks(q):
            status = "PASS" if res.passed else "FAIL"
            print(f"q={q!r} {res.name} max_error={res.max_error:.3e} threshold={res.threshold:.1e} {status}")
            if not res.passed:
                failed.append(f"{res.name} (q={q!r})")
    if failed:
        print("failing properties: " + ", ".join(failed), file=sys.stderr)
        return EXIT_PROPERTY
    return EXIT_OK


def cmd_figure(args) -> int:
    try:
        text = figure_grid(args.id, args.resolution, _policy(args)).to_csv()
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(str(exc)) from exc
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def uniform_stream(seed: int, count: int) -> np.ndarray:
    """Seeded uniforms strictly inside (0, 1): midpoints of a 2**-53 grid."""
    rng = np.random.default_rng(seed)
    return (rng.integers(0, 2**53, size=count, dtype=np.int64) + 0.5) / 2.0**53


def cmd_sample(args) -> int:
    q = check_supported(args.q)
    if args.count < 0:
        raise DomainError("--count must be nonnegative")
    g = GaussQ(q, _policy(args))
    samples = g.sample(uniform_stream(args.seed, args.count))
    sys.stdout.write("".join(f"{float(s)!r}\n" for s in samples))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-12, help="absolute series tolerance")
    common.add_argument("--max-terms", type=int, default=100_000, help="series term budget")

    parser = argparse.ArgumentParser(prog="qgauss", description="Gaussian q-measure toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate one function at (q, x)")
    p.add_argument("target", choices=["eq", "Eq", "kernel", "density", "cdf"])
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("moments", parents=[common], help="compare the three moment routes")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("check", parents=[common], help="run the property suite")
    p.add_argument("--q", type=float, nargs="+", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("figure", parents=[common], help="emit figure data as CSV")
    p.add_argument("--id", type=int, required=True, choices=[1, 2, 3, 4, 5])
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("sample", parents=[common], help="inverse-CDF samples from a seeded stream")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except TruncationError as exc:
        print(f"truncation failure: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_PROPERTY


if __name__ == "__main__":
    sys.exit(main())
