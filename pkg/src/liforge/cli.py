"""Command-line front end.

    liforge zeros --to 31
    liforge count 100
    liforge li --n 20 --method expansion --method sum --zeros-file reference
    liforge table --zeros-file reference
    liforge verify --only fermi_dirac
    liforge constants --n 3

Exit status: 0 on success, 1 on a computational failure, 2 on a usage error.
Precision comes from ``--digits``, else ``LIFORGE_DIGITS``, else 50.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field, replace

from . import __version__
from .context import PrecisionCtx, default_ctx
from .errors import LiForgeError
from .li import (
    METHODS,
    LiResult,
    a_coeffs,
    b_coeffs,
    kn_from_b,
    li_by_a_recursion,
    li_by_expansion,
    li_by_integral,
    li_by_sum,
    li_closed_form,
    polygamma,
    stieltjes,
)
from .verify import CHECK_NAMES, run_all, to_json_lines
from .zeros import (
    count_zeros,
    ingest_zero_table,
    load_table,
    locate_zeros,
    n_smooth,
    reference_zeros,
    save_table,
)

log = logging.getLogger("liforge")

CSV_HEADER = ["n", "method", "value", "err_est", "zeros_used", "cutoff_height", "series_terms"]
ZERO_METHODS = {"sum", "integral"}
DEFAULT_CUTOFF = 1e8
MIN_CUTOFF = 1e4
REFERENCE = "reference"


class UsageError(Exception):
    """Invalid combination of options (exit status 2)."""


@dataclass
class RunConfig:
    precision_digits: int
    zeros_file: str | None = None
    compute_to_height: float | None = None
    n_max: int = 20
    methods: set = field(default_factory=set)
    integral_cutoff: float = DEFAULT_CUTOFF
    output_format: str = "csv"
    tail: str = "smooth"

    def __post_init__(self):
        if self.n_max < 1:
            raise UsageError(f"--n must be >= 1, got {self.n_max}")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise UsageError(f"unknown method(s): {', '.join(sorted(unknown))}")
        if self.methods & ZERO_METHODS and not (self.zeros_file or self.compute_to_height):
            raise UsageError("methods sum/integral need --zeros-file or --zeros-to")
        if self.integral_cutoff < MIN_CUTOFF:
            raise UsageError(f"--cutoff must be >= {MIN_CUTOFF:g}")
        if "closed_form" in self.methods and self.n_max > 3:
            raise UsageError("closed_form is available for n <= 3 only")

    @property
    def ctx(self) -> PrecisionCtx:
        return PrecisionCtx.with_digits(self.precision_digits)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    return f"{float(v):.15g}"


def _load_zeros(cfg: RunConfig):
    if cfg.zeros_file == REFERENCE:
        return reference_zeros()
    if cfg.zeros_file:
        return load_table(cfg.zeros_file)
    return locate_zeros(cfg.compute_to_height, cfg.ctx)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_zeros(args, out) -> int:
    ctx = PrecisionCtx.with_digits(args.digits)
    if args.ingest:
        with open(args.ingest, encoding="utf-8") as fh:
            table = ingest_zero_table(fh)
        if args.verify_to is not None:
            expected = count_zeros(args.verify_to, ctx)
            found = table.step_count(args.verify_to)
            if found != expected:
                print(
                    f"error: table has {found} zeros below {args.verify_to}, expected {expected}",
                    file=sys.stderr,
                )
                return 1
            table = replace(table, verified_through=float(args.verify_to))
    else:
        table = locate_zeros(args.to, ctx)
    if args.out:
        save_table(table, args.out, precision_digits=args.digits)
    if not args.quiet:
        for r in table:
            out.write(f"{r.mu:.15g}\n")
    top = f"{table.mus[-1]:.15g}" if len(table) else "none"
    out.write(f"# count={table.zero_count} max_ordinate={top} verified_through={table.verified_through:g}\n")
    return 0


def cmd_count(args, out) -> int:
    if args.T <= 0:
        raise UsageError("T must be positive")
    ctx = PrecisionCtx.with_digits(args.digits)
    out.write(f"N({args.T:g}) = {count_zeros(args.T, ctx)}\n")
    out.write(f"smooth part = {n_smooth(args.T, ctx):.15g}\n")
    return 0


def _compute(cfg: RunConfig) -> list[LiResult]:
    ctx = cfg.ctx
    n = cfg.n_max
    rows: list[LiResult] = []
    zeros = _load_zeros(cfg) if cfg.methods & ZERO_METHODS else None
    for method in sorted(cfg.methods):
        if method == "expansion":
            rows += li_by_expansion(n, ctx)
        elif method == "sum":
            rows += li_by_sum(n, zeros)
        elif method == "integral":
            rows += li_by_integral(n, zeros, cfg.integral_cutoff, ctx, tail=cfg.tail)
        elif method == "a_recursion":
            rows += li_by_a_recursion(n, a_coeffs(n, ctx))
        elif method == "from_b":
            # the binomial resummation needs the b-series well past n
            rows += kn_from_b(n, b_coeffs(max(160, 8 * n), ctx))
        elif method == "closed_form":
            s = stieltjes(2, ctx)
            rows += [li_closed_form(k, s, ctx) for k in range(1, n + 1)]
    return sorted(rows, key=lambda r: (r.n, r.method))


def _write_rows(rows: list[LiResult], fmt: str, out) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            t = r.truncation
            w.writerow(
                [r.n, r.method, _fmt(r.value), _fmt(r.err_est), _fmt(t.zeros_used),
                 _fmt(t.cutoff_height), _fmt(t.series_terms)]
            )
    elif fmt == "json":
        for r in rows:
            t = r.truncation
            out.write(json.dumps({
                "n": r.n, "method": r.method, "value": float(r.value), "err_est": float(r.err_est),
                "zeros_used": t.zeros_used, "cutoff_height": t.cutoff_height,
                "series_terms": t.series_terms,
            }) + "\n")
    else:
        for r in rows:
            out.write(f"k_{r.n:<3d} {r.method:<12s} {_fmt(r.value):>22s}  +/- {float(r.err_est):.1e}\n")


def cmd_li(args, out) -> int:
    methods = {m for spec in args.method for m in spec.split(",") if m}
    cfg = RunConfig(
        precision_digits=args.digits,
        zeros_file=args.zeros_file,
        compute_to_height=args.zeros_to,
        n_max=args.n,
        methods=methods,
        integral_cutoff=args.cutoff,
        output_format=args.format,
        tail=args.tail,
    )
    _write_rows(_compute(cfg), cfg.output_format, out)
    return 0


def cmd_table(args, out) -> int:
    cfg = RunConfig(
        precision_digits=args.digits,
        zeros_file=args.zeros_file,
        compute_to_height=args.zeros_to,
        n_max=20,
        methods={"expansion", "integral", "sum"},
        integral_cutoff=args.cutoff,
        output_format=args.format,
    )
    rows = _compute(cfg)
    by = {(r.n, r.method): float(r.value) for r in rows}
    table = []
    for n in range(1, 21):
        e, i, s = by[n, "expansion"], by[n, "integral"], by[n, "sum"]
        # caption convention: percentage error of each method w.r.t. the expansion
        table.append((n, e, i, 100 * (e - i) / e, s, 100 * (e - s) / e))
    header = ["n", "expansion", "integral", "integral_diff_pct", "sum", "sum_diff_pct"]
    if cfg.output_format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for row in table:
            w.writerow([row[0]] + [_fmt(v) for v in row[1:]])
    elif cfg.output_format == "json":
        for row in table:
            out.write(json.dumps(dict(zip(header, row))) + "\n")
    else:
        out.write(f"{'n':>3} {'expansion':>12} {'integral':>12} {'diff%':>8} {'sum':>12} {'diff%':>8}\n")
        for n, e, i, di, s, ds in table:
            out.write(f"{n:>3} {e:>12.6g} {i:>12.6g} {di:>8.3f} {s:>12.6g} {ds:>8.3f}\n")
    return 0


def cmd_verify(args, out) -> int:
    ctx = PrecisionCtx.with_digits(args.digits)
    zeros = load_table(args.zeros_file) if args.zeros_file else reference_zeros()
    only = args.only or None
    if only:
        bad = set(only) - set(CHECK_NAMES)
        if bad:
            raise UsageError(f"unknown check(s): {', '.join(sorted(bad))}; known: {', '.join(CHECK_NAMES)}")
    reports = run_all(ctx, zeros, only=only)
    out.write(to_json_lines(reports))
    failed = sorted({r.name for r in reports if not r.passed})
    if failed:
        print(f"failed checks: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def cmd_constants(args, out) -> int:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    ctx = PrecisionCtx.with_digits(args.digits)
    mp = ctx.mp
    digits = min(args.digits, 30)
    g = stieltjes(args.n, ctx)
    b = b_coeffs(args.n, ctx)
    psi2 = polygamma(2, 1, ctx)
    rows = [(f"gamma_{k}", g[k]) for k in range(args.n + 1)]
    rows += [(f"b_{k}", b.b[k]) for k in range(args.n + 1)]
    rows.append(("psi_2(1)", psi2))
    if args.format == "json":
        for name, v in rows:
            out.write(json.dumps({"name": name, "value": mp.nstr(v, digits)}) + "\n")
    else:
        for name, v in rows:
            out.write(f"{name:<10s} {mp.nstr(v, digits)}\n")
    return 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _positive_digits(text):
    v = int(text)
    if v < 20:
        raise argparse.ArgumentTypeError("precision must be at least 20 digits")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liforge", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--digits",
        type=_positive_digits,
        default=None,
        help="working precision in decimal digits (default: $LIFORGE_DIGITS or 50)",
    )
    sub = p.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zeros", parents=[common], help="locate or ingest zero ordinates")
    src = z.add_mutually_exclusive_group(required=True)
    src.add_argument("--to", type=float, help="locate all zeros below this height")
    src.add_argument("--ingest", metavar="FILE", help="read a table of ordinates")
    z.add_argument("--verify-to", type=float, help="check an ingested table against N(T)")
    z.add_argument("--out", metavar="FILE", help="write the table in cache format")
    z.add_argument("--quiet", action="store_true", help="print only the summary line")
    z.set_defaults(func=cmd_zeros)

    c = sub.add_parser("count", parents=[common], help="N(T) by the argument principle")
    c.add_argument("T", type=float)
    c.set_defaults(func=cmd_count)

    def zero_source(sp):
        sp.add_argument(
            "--zeros-file",
            metavar="FILE",
            help=f"zero table file, or '{REFERENCE}' for the bundled first 10^4 zeros",
        )
        sp.add_argument("--zeros-to", type=float, metavar="T", help="compute zeros below T")
        sp.add_argument("--cutoff", type=float, default=DEFAULT_CUTOFF, help="integral upper limit")
        sp.add_argument("--format", choices=("csv", "json", "text"), default="csv")

    li = sub.add_parser("li", parents=[common], help="Li coefficients k_1..k_n")
    li.add_argument("--n", type=int, required=True)
    li.add_argument(
        "--method",
        action="append",
        required=True,
        help=f"one of {', '.join(METHODS)} (repeat or comma-separate)",
    )
    li.add_argument("--tail", choices=("smooth", "none"), default="smooth")
    zero_source(li)
    li.set_defaults(func=cmd_li)

    t = sub.add_parser("table", parents=[common], help="k_1..k_20 by expansion, integral and sum")
    zero_source(t)
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", parents=[common], help="run the identity checks")
    v.add_argument("--only", action="append", choices=CHECK_NAMES, help="restrict to a check family")
    v.add_argument("--zeros-file", metavar="FILE")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("constants", parents=[common], help="Stieltjes constants, b_n, psi_2(1)")
    k.add_argument("--n", type=int, default=3)
    k.add_argument("--format", choices=("text", "json"), default="text")
    k.set_defaults(func=cmd_constants)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        if args.digits is None:
            try:
                args.digits = default_ctx().work_digits
            except ValueError as e:
                raise UsageError(f"bad LIFORGE_DIGITS: {e}") from e
        if getattr(args, "zeros_file", None) == REFERENCE and args.command == "verify":
            args.zeros_file = None
        buf = io.StringIO()
        code = args.func(args, buf)
        out.write(buf.getvalue())
        return code
    except UsageError as e:
        print(f"liforge {args.command}: error: {e}", file=sys.stderr)
        return 2
    except (LiForgeError, OSError, ArithmeticError, ValueError) as e:
        print(f"liforge {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
