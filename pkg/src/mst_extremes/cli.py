"""Command-line front end: ``mst-extremes table|curve|plot|eval|coeffs``.

Exit status is 0 on success, 2 for invalid input (bad spec, flags or grid)
and 3 when a numerical kernel fails to converge.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from pathlib import Path

from mst_extremes import __version__, evt_expansions as evt, oracle
from mst_extremes.distributions import (
    MixtureSpec,
    check_tol,
    default_tol,
    example_spec,
    load_spec,
)
from mst_extremes.exceptions import NumericalFault, ValidationError
from mst_extremes.svg import line_chart
from mst_extremes.tail_expansion import mixture_tail_coefficients, pdf_coefficients

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

TABLE_HEADER = ("n", "d1_l", "d1_p", "d2_l", "d2_p", "d3_l", "d3_p")
CURVE_HEADER = ("n", "actual", "order1", "order2", "order3")
# decimals per mode; density errors are an order of magnitude smaller
TABLE_DECIMALS = {"cdf": 9, "pdf": 10}
BUILTIN_SPECS = {"example1": 1, "example2": 2}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, "%s: error: %s\n" % (self.prog, message))


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("not a number: %r" % text) from None
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError("must be positive and finite: %r" % text)
    return value


def _int(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("not an integer: %r" % text) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", default=None,
                        help="mixture JSON file (or 'example1'/'example2' for the bundled ones)")
    common.add_argument("--tol", type=float, default=None,
                        help="quadrature tolerance in [1e-13, 1e-6] "
                             "(default: $MST_EXTREMES_TOL or 1e-12)")
    common.add_argument("--seed", type=_int, default=None,
                        help="seed for the Monte Carlo estimate printed by 'eval'")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--mode", choices=("cdf", "pdf"), default="cdf")
    grid.add_argument("--x", type=_positive_float, default=None)
    grid.add_argument("--n-start", type=_int, default=25)
    grid.add_argument("--n-end", type=_int, default=1000)
    grid.add_argument("--n-step", type=_int, default=25)
    grid.add_argument("--workers", type=_int, default=1,
                      help="threads used to evaluate grid points")

    parser = _Parser(prog="mst-extremes",
                     description="Extreme value expansions for skew-t mixtures.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("table", parents=[common, grid],
                       help="absolute errors of the order 1-3 approximations over an n grid")
    p.add_argument("--norm", choices=("linear", "power", "both"), default="both",
                   help="accepted for symmetry; the table always holds both")
    p.add_argument("--out", default="-", help="CSV path ('-' for stdout)")

    p = sub.add_parser("curve", parents=[common, grid],
                       help="exact value and the three approximations over an n grid")
    p.add_argument("--norm", choices=("linear", "power", "both"), default="linear")
    p.add_argument("--out", default="-", help="CSV path ('-' for stdout)")

    p = sub.add_parser("plot", parents=[common, grid], help="SVG figure of a curve")
    p.add_argument("--norm", choices=("linear", "power", "both"), default="linear")
    p.add_argument("--out", required=True, help="SVG path")
    p.add_argument("--curve", default=None,
                   help="plot an existing curve CSV instead of recomputing")

    p = sub.add_parser("eval", parents=[common], help="one approximation against the exact value")
    p.add_argument("--mode", choices=("cdf", "pdf"), default="cdf")
    p.add_argument("--norm", choices=("linear", "power"), default="linear")
    p.add_argument("--x", type=_positive_float, required=True)
    p.add_argument("--n", type=_int, default=None, help="sample size (defaults to --n-start)")
    p.add_argument("--n-start", type=_int, default=None)
    p.add_argument("--order", type=_int, choices=(1, 2, 3), default=3)

    p = sub.add_parser("coeffs", parents=[common],
                       help="expansion coefficients and the classified regime")
    p.add_argument("--out", default="-", help="CSV path ('-' for stdout)")
    return parser


def _load(spec_arg) -> MixtureSpec:
    if spec_arg is None:
        raise ValidationError("give --spec")
    if spec_arg in BUILTIN_SPECS and not Path(spec_arg).exists():
        return example_spec(BUILTIN_SPECS[spec_arg])
    return load_spec(spec_arg)


def _tol(args) -> float:
    return default_tol() if args.tol is None else check_tol(args.tol)


def _grid(args) -> list:
    if args.x is None:
        raise ValidationError("give --x")
    if args.n_start < 2:
        raise ValidationError("--n-start must be at least 2")
    if args.n_step < 1:
        raise ValidationError("--n-step must be at least 1")
    grid = list(range(args.n_start, args.n_end + 1, args.n_step))
    if not grid:
        raise ValidationError("empty n grid (%d..%d step %d)" % (args.n_start, args.n_end, args.n_step))
    return grid


def _workers(args) -> int:
    if args.workers < 1:
        raise ValidationError("--workers must be at least 1")
    return min(args.workers, os.cpu_count() or 1)


def format_table(records, mode: str = "cdf") -> str:
    """CSV text of an error table; numbers use a fixed number of decimals."""
    fmt = "%%.%df" % TABLE_DECIMALS[mode]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_HEADER)
    for rec in records:
        w.writerow([str(rec.n)] + [fmt % v for v in rec.row()])
    return buf.getvalue()


def parse_table(text: str) -> list:
    """Inverse of :func:`format_table`: list of ``(n, [six floats])``."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != TABLE_HEADER:
        raise ValidationError("not an error table: unexpected header")
    return [(int(r[0]), [float(v) for v in r[1:]]) for r in rows[1:]]


def format_curve(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CURVE_HEADER)
    for n, *vals in rows:
        w.writerow([str(n)] + ["%.12g" % v for v in vals])
    return buf.getvalue()


def parse_curve(text: str) -> list:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CURVE_HEADER:
        raise ValidationError("not a curve file: expected header %s" % ",".join(CURVE_HEADER))
    return [(int(r[0]), *(float(v) for v in r[1:])) for r in rows[1:]]


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ValidationError("cannot write %s: %s" % (path, exc.strerror or exc)) from None


def _suffixed(path, norm):
    p = Path(path)
    return str(p.with_name("%s_%s%s" % (p.stem, norm, p.suffix)))


def _norms(norm):
    return ("linear", "power") if norm == "both" else (norm,)


def cmd_table(args) -> int:
    spec, tol, grid = _load(args.spec), _tol(args), _grid(args)
    records = oracle.error_table(spec, args.mode, args.x, grid, tol, workers=_workers(args))
    _write(args.out, format_table(records, args.mode))
    return EXIT_OK


def cmd_curve(args) -> int:
    spec, tol, grid = _load(args.spec), _tol(args), _grid(args)
    norms = _norms(args.norm)
    if len(norms) > 1 and args.out == "-":
        raise ValidationError("--norm both writes two files; give --out")
    for norm in norms:
        rows = oracle.curve(spec, args.mode, norm, args.x, grid, tol, workers=_workers(args))
        out = _suffixed(args.out, norm) if len(norms) > 1 else args.out
        _write(out, format_curve(rows))
    return EXIT_OK


def _title(mode, norm, x):
    what = "cdf" if mode == "cdf" else "pdf"
    where = "" if x is None else ", x = %s" % _num(x)
    return "%s of the normalized maximum, %s normalization%s" % (what, norm, where)


def cmd_plot(args) -> int:
    norms = _norms(args.norm)
    if args.curve is not None:
        if len(norms) > 1:
            raise ValidationError("--curve plots one file; choose --norm linear or power")
        try:
            text = Path(args.curve).read_text(encoding="utf-8")
        except OSError as exc:
            raise ValidationError("cannot read %s: %s" % (args.curve, exc.strerror or exc)) from None
        batches = [(norms[0], parse_curve(text))]
    else:
        spec, tol, grid = _load(args.spec), _tol(args), _grid(args)
        batches = [(norm, oracle.curve(spec, args.mode, norm, args.x, grid, tol,
                                       workers=_workers(args)))
                   for norm in norms]
    for norm, rows in batches:
        ns = [r[0] for r in rows]
        cols = [[r[i] for r in rows] for i in range(1, 5)]
        ylabel = "P(M_n <= x)" if args.mode == "cdf" else "density"
        svg = line_chart(ns, cols, title=_title(args.mode, norm, args.x), ylabel=ylabel)
        out = _suffixed(args.out, norm) if len(norms) > 1 else args.out
        _write(out, svg)
    return EXIT_OK


def _num(v) -> str:
    return "%.12g" % v


def cmd_eval(args) -> int:
    spec, tol = _load(args.spec), _tol(args)
    n = args.n if args.n is not None else args.n_start
    if n is None:
        raise ValidationError("give --n")
    if n < 2:
        raise ValidationError("--n must be at least 2")
    power = args.norm == "power"
    if args.mode == "cdf":
        approx = (evt.cdf_expansion_power if power else evt.cdf_expansion)(spec, n, args.x, args.order)
        exact = (oracle.exact_max_cdf_power if power else oracle.exact_max_cdf)(spec, n, args.x, tol)
    else:
        approx = (evt.pdf_expansion_power if power else evt.pdf_expansion)(spec, n, args.x, args.order)
        exact = (oracle.exact_max_pdf_power if power else oracle.exact_max_pdf)(spec, n, args.x, tol)
    approx = float(approx)
    print("expansion,%s" % _num(approx))
    print("exact,%s" % _num(exact))
    print("abs_diff,%s" % _num(abs(exact - approx)))
    if args.seed is not None and args.mode == "cdf":
        blocks = 10000
        maxima = oracle.block_maxima(spec, n, blocks, args.seed)
        point = args.x ** (1.0 / spec.vs[0]) if power else args.x
        print("monte_carlo,%s" % _num(float((maxima <= point).mean())))
    return EXIT_OK


def cmd_coeffs(args) -> int:
    spec = _load(args.spec)
    case = evt.classify_case(spec)
    tc = mixture_tail_coefficients(spec)
    kc = pdf_coefficients(spec)
    v1 = spec.vs[0]
    rows = [
        ("case", case.case_id),
        ("rho", _num(case.primary_power)),
        ("gamma", _num(case.gamma)),
        ("lead", _num(tc.lead)),
        ("a1", _num(tc.a1)),
        ("a2", _num(tc.a2)),
        ("a3", _num(tc.a3)),
        ("a4", _num(tc.a4)),
        ("a5", _num(tc.a5)),
        ("eta", _num(tc.eta)),
        ("k1", _num(kc.k1)),
        ("k2", _num(kc.k2)),
        ("k3", _num(kc.k3)),
        # a_n = an_scale * n ** an_exponent
        ("an_scale", _num(tc.lead ** (1.0 / v1))),
        ("an_exponent", _num(1.0 / v1)),
        ("active_terms", " ".join(sorted(evt.active_terms(spec)))),
    ]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("name", "value"))
    w.writerows(rows)
    _write(args.out, buf.getvalue())
    return EXIT_OK


COMMANDS = {
    "table": cmd_table,
    "curve": cmd_curve,
    "plot": cmd_plot,
    "eval": cmd_eval,
    "coeffs": cmd_coeffs,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        print("mst-extremes: invalid input: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except NumericalFault as exc:
        print("mst-extremes: numerical failure: %s" % exc, file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
