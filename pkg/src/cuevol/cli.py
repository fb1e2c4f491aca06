"""Command-line front end: ``cuevol <command> [options]``.

Each command prints records as CSV (default) or JSON, to stdout or ``--out``.
Exit codes: 0 ok, 2 domain error, 3 tolerance/convergence failure, 64 usage
error, 74 output not writable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import bounds, figures, mc, volume, zonal
from .errors import BudgetError, ConvergenceError, DomainError, ToleranceError

SCHEMA_VERSION = "1"
SEED_ENV = "CUEVOL_SEED"

EXIT_OK, EXIT_DOMAIN, EXIT_TOLERANCE, EXIT_USAGE, EXIT_IO = 0, 2, 3, 64, 74

_VOLUME_METHODS = ("exact", "asymptotic", "closed-n1", "closed-n2", "mc")
_INVERT_METHODS = ("exact", "asymptotic", "closed-n2")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Failure(Exception):
    def __init__(self, code, message, rows=None):
        super().__init__(message)
        self.code = code
        self.rows = rows


def _fmt(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return repr(float(v))   # shortest string that round-trips
    return "" if v is None else str(v)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def render(rows, fmt):
    """Serialise a list of flat dicts; CSV and JSON carry the same values."""
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION,
               "records": [{k: _json_value(v) for k, v in r.items()} for r in rows]}
        return json.dumps(doc, indent=2) + "\n"
    fields = ["schema_version"]
    for r in rows:
        fields += [k for k in r if k not in fields]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([SCHEMA_VERSION if k == "schema_version" else _fmt(r.get(k)) for k in fields])
    return buf.getvalue()


def _resolve_seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"{SEED_ENV} must be an integer") from None
    seed = mc.fresh_seed()
    print(f"seed={seed}", file=sys.stderr)
    return seed


# --- commands ---------------------------------------------------------------

def cmd_volume(args):
    q = {"n": args.n, "r": args.r}
    if args.method == "mc":
        seed = _resolve_seed(args)
        est = mc.mc_volume(args.n, args.r, args.samples, seed, workers=args.workers)
        return [{**q, "value": est.p_hat, "abs_error": est.std_err, "method": "monte_carlo",
                 "n_samples": est.n_samples, "seed": seed}]
    if args.method == "exact":
        tol = args.tol if args.tol is not None else volume.default_tolerance(args.n)
        est = volume.volume_exact(volume.BallQuery(args.n, args.r), tol)
        rows = [{**q, "value": est.value, "abs_error": est.abs_error,
                 "method": est.method.value, "tol": tol}]
        if est.abs_error > max(tol, volume.default_tolerance(args.n)):
            raise _Failure(EXIT_TOLERANCE, f"achieved error {est.abs_error:.3g} exceeds tol", rows)
        return rows
    if args.method == "asymptotic":
        est = volume.volume_asymptotic(volume.BallQuery(args.n, args.r))
    elif args.method == "closed-n1":
        if args.n != 1:
            raise DomainError("closed-n1 requires --n 1")
        est = volume.volume_n1_closed(args.r)
    else:
        if args.n != 2:
            raise DomainError("closed-n2 requires --n 2")
        est = volume.volume_n2_closed(args.r)
    return [{**q, "value": est.value, "abs_error": est.abs_error, "method": est.method.value}]


def cmd_table(args):
    if args.which == 2:
        return [{"R": R, "n": n, "r1": r1, "r2": r2, "r1_3dp": f"{r1:.3f}", "r2_3dp": f"{r2:.3f}",
                 "method": "asymptotic"} for R, n, r1, r2 in bounds.table_two()]
    return [{"n": n, "cardinality": c, "diversity_exact": ex, "diversity_asymptotic": ap,
             "relative_error": rel, "accuracy": flag, "method": "exact_vs_asymptotic"}
            for n, c, ex, ap, rel, flag in bounds.table_one()]


def cmd_figure(args):
    rows = figures.figure_rows(args.which, args.points)
    return [{"x": x, "series_name": s, "value": v, "method": m} for x, s, v, m in rows]


def cmd_series(args):
    series = zonal.d_n_series(args.n, args.order)
    return [{"n": args.n, "k": k, "power": 2 * k, "coefficient": c, "method": "exact_rational"}
            for k, c in enumerate(series.as_strings())]


def cmd_bounds(args):
    rep = bounds.bound_report(args.n, r=args.r, R=args.R, cardinality=args.cardinality)
    row = {k: v for k, v in rep.as_dict().items() if v is not None}
    row["method"] = "asymptotic"
    return [row]


def cmd_invert(args):
    r = volume.volume_inverse(args.n, args.v, args.method)
    return [{"n": args.n, "v": args.v, "r": r, "method": args.method}]


# --- parser -----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="write to this path instead of stdout")

    p = _Parser(prog="cuevol", description="Volumes of chordal balls in U(n) and code bounds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("volume", parents=[common], help="volume of one ball")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--method", choices=_VOLUME_METHODS, default="exact")
    s.add_argument("--tol", type=float)
    s.add_argument("--samples", type=int, default=1_000_000)
    s.add_argument("--seed", type=int)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_volume)

    s = sub.add_parser("table", parents=[common], help="diversity (1) or distance (2) table")
    s.add_argument("--which", type=int, choices=(1, 2), required=True)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("figure", parents=[common], help="curve data for a plot")
    s.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    s.add_argument("--points", type=int)
    s.set_defaults(func=cmd_figure)

    s = sub.add_parser("series", parents=[common], help="exact power series of D_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("bounds", parents=[common], help="cardinality, rate, distance or diversity bounds")
    s.add_argument("--n", type=int, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--r", type=float)
    g.add_argument("--R", type=float)
    g.add_argument("--cardinality", type=float)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("invert", parents=[common], help="radius with a given volume")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--v", type=float, required=True)
    s.add_argument("--method", choices=_INVERT_METHODS, default="asymptotic")
    s.set_defaults(func=cmd_invert)
    return p


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def main(argv=None):
    """Run the command line; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:   # usage errors and --help
        return exc.code
    code, rows = EXIT_OK, None
    try:
        rows = args.func(args)
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        code, rows = exc.code, exc.rows
    except (ToleranceError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except (DomainError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if rows is not None:
        try:
            _emit(render(rows, args.format), args.out)
        except OSError as exc:
            print(f"error: cannot write output: {exc}", file=sys.stderr)
            return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
