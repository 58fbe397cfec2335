"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage or precondition,
3 precision error, 4 resource error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from primesine import bigfloat, exact, experiments
from primesine.errors import (
    InvalidArgument,
    NotFound,
    PrecisionAmbiguity,
    PrecisionError,
    ResourceError,
)
from primesine.ntheory import sieve

SCHEMA_VERSION = 1
AGREEMENT_TOL = 1e-10

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_PRECISION, EXIT_RESOURCE = 0, 1, 2, 3, 4


def format_value(v, precision: int = 12) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, f".{precision}g")
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return ";".join(format_value(x, precision) for x in v)
    if v is None:
        return ""
    return str(v)


def jsonable(v, precision: int = 12):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        return float(format(v, f".{precision}g"))
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): jsonable(x, precision) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x, precision) for x in v]
    return str(v)


def to_csv(header, rows, precision: int = 12) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(row[h], precision) for h in header])
    return buf.getvalue()


def to_json(payload: dict, precision: int = 12) -> str:
    return json.dumps(jsonable({"schema_version": SCHEMA_VERSION, **payload}, precision), indent=2) + "\n"


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def render(args, kind: str, header, rows, extra: dict | None = None) -> str:
    if args.format == "json":
        payload = {"command": kind, **(extra or {}), "rows": [{h: row[h] for h in header} for row in rows]}
        return to_json(payload, args.float_precision)
    return to_csv(header, rows, args.float_precision)


def cmd_pi_count(args) -> int:
    if args.n < 2:
        raise InvalidArgument(f"--n must be > 1, got {args.n}")
    methods = ["formula", "sieve"] if args.method == "both" else [args.method]
    table = sieve(args.n)
    rows = []
    for m in methods:
        value = exact.pi_from_formula(args.n, table) if m == "formula" else table.pi(args.n)
        rows.append({"n": args.n, "method": m, "pi": value})
    emit(render(args, "pi-count", ["n", "method", "pi"], rows), args.out)
    if len({row["pi"] for row in rows}) > 1:
        print("error: formula and sieve disagree", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _series_spec(args) -> bigfloat.RealAngleSpec:
    given = [args.b is not None, args.x_decimal is not None, args.x_unit]
    if sum(given) != 1:
        raise InvalidArgument("give exactly one of --a/--b, --x-decimal, --x-unit")
    if args.b is not None:
        return bigfloat.RealAngleSpec.pi_rational(args.a, args.b)
    if args.x_unit:
        return bigfloat.RealAngleSpec.unit()
    return bigfloat.RealAngleSpec.decimal(args.x_decimal, args.digits)


def cmd_series(args) -> int:
    spec = _series_spec(args)
    engine = args.engine or ("exact" if spec.kind == "pi-rational" else "bigfloat")
    if engine in ("exact", "both") and spec.kind != "pi-rational":
        raise InvalidArgument("the exact engine needs a rational multiple of pi (--a/--b)")
    engines = ["exact", "bigfloat"] if engine == "both" else [engine]
    results = {}
    for e in engines:
        if e == "exact":
            results[e] = exact.s_rational(args.n, spec.angle, trace=args.trace)
        else:
            results[e] = bigfloat.s_real(args.n, spec, trace=args.trace)
    if args.trace:
        header = ["engine", "k", "term"]
        rows = [
            {"engine": e, "k": k, "term": t}
            for e, res in results.items()
            for k, t in enumerate(res.terms, start=1)
        ]
    else:
        header = ["engine", "n", "x", "value", "error_bound"]
        rows = [
            {"engine": e, "n": args.n, "x": str(spec), "value": res.value, "error_bound": res.error_bound}
            for e, res in results.items()
        ]
    emit(render(args, "series", header, rows), args.out)
    if len(results) == 2:
        gap = abs(results["exact"].value - results["bigfloat"].value)
        if gap > AGREEMENT_TOL:
            print(f"error: engines differ by {gap:.3g}", file=sys.stderr)
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_delta_csv(args) -> int:
    rows = [{"n": n, "delta": d} for n, d in exact.delta_table(args.nmax)]
    emit(render(args, "delta-csv", ["n", "delta"], rows), args.out)
    return EXIT_OK


def cmd_precision_plan(args) -> int:
    p = bigfloat.plan(args.n)
    header = ["k", "required_digits", "guard_digits"]
    rows = [
        {"k": b.k, "required_digits": b.required_decimal_digits, "guard_digits": b.guard_digits}
        for b in p.budgets
    ]
    if args.format == "json":
        emit(render(args, "precision-plan", header, rows, {"n": p.n, "overall": p.overall}), args.out)
    else:
        rows.append({"k": "overall", "required_digits": p.overall, "guard_digits": bigfloat.GUARD_DIGITS})
        emit(to_csv(header, rows, args.float_precision), args.out)
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _run_experiment(args) -> experiments.ExperimentReport:
    name = args.name
    if name == "rational-sweep":
        return experiments.rational_sweep(args.bs, args.n, args.a_policy)
    if name == "ae-sample":
        fixed = bigfloat.RealAngleSpec.unit() if args.x_unit else None
        return experiments.ae_sample(args.samples, args.n, args.seed, args.digits, fixed)
    if name == "lacunarity":
        return experiments.lacunarity_check(args.kmax)
    if name == "cancellation":
        return experiments.cancellation_count(args.n)
    if name == "moment4":
        return experiments.moment_report(args.n)
    if name == "weps-demo":
        if args.x0_b is not None:
            x0 = bigfloat.RealAngleSpec.pi_rational(args.x0_a, args.x0_b)
        else:
            x0 = bigfloat.RealAngleSpec.decimal(args.x0)
        return experiments.weps_demo(x0, args.eps, args.bmax, args.nmax)
    raise InvalidArgument(f"unknown experiment {name!r}")


def cmd_experiment(args) -> int:
    report = _run_experiment(args)
    if args.format == "json":
        payload = {
            "experiment": report.name,
            "parameters": report.parameters,
            "seed": report.seed,
            "generator": report.generator,
            "summary": report.summary,
            "rows": report.rows,
        }
        if args.timing:
            payload["duration_s"] = report.duration_s
        emit(to_json(payload, args.float_precision), args.out)
    else:
        emit(to_csv(list(report.rows[0]), report.rows, args.float_precision), args.out)
    if args.timing:
        print(f"{report.name}: {report.duration_s:.3f} s", file=sys.stderr)
    return EXIT_OK


def _output_options(p: argparse.ArgumentParser, default_format: str = "csv") -> None:
    p.add_argument("--format", choices=["csv", "json"], default=default_format)
    p.add_argument("--out", metavar="PATH", help="write here instead of standard output")
    p.add_argument("--float-precision", type=int, default=12, metavar="DIGITS")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="primesine", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pi-count", help="prime count from the sine series and/or a sieve")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["formula", "sieve", "both"], default="both")
    _output_options(p)
    p.set_defaults(func=cmd_pi_count)

    p = sub.add_parser("series", help="evaluate s(n, x)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, default=1, help="numerator of x = a*pi/b")
    p.add_argument("--b", type=int, help="denominator of x = a*pi/b")
    p.add_argument("--x-decimal", metavar="LITERAL", help="x as a decimal literal")
    p.add_argument("--digits", type=int, help="trusted significant digits of --x-decimal")
    p.add_argument("--x-unit", action="store_true", help="x = 1")
    p.add_argument("--engine", choices=["exact", "bigfloat", "both"])
    p.add_argument("--trace", action="store_true", help="emit per-term values")
    _output_options(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("delta-csv", help="rows (n, s(n, pi/2) - Pi(n)) for 2 <= n <= nmax")
    p.add_argument("--nmax", type=int, default=50)
    _output_options(p)
    p.set_defaults(func=cmd_delta_csv)

    p = sub.add_parser("precision-plan", help="decimal digits of x needed per term")
    p.add_argument("--n", type=int, required=True)
    _output_options(p)
    p.set_defaults(func=cmd_precision_plan)

    p = sub.add_parser("experiment", help="run one experiment and serialize its report")
    p.add_argument(
        "name",
        choices=["rational-sweep", "ae-sample", "lacunarity", "cancellation", "moment4", "weps-demo"],
    )
    p.add_argument("--n", type=int, help="series length, or quadruple range for cancellation/moment4")
    p.add_argument("--bs", type=_int_list, default=[2, 3, 4, 5, 7], help="comma-separated denominators")
    p.add_argument("--a-policy", choices=["one", "all"], default="one")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--digits", type=int, help="decimals of sampled x (default: planner)")
    p.add_argument("--x-unit", action="store_true", help="ae-sample at the single point x = 1")
    p.add_argument("--kmax", type=int, default=300)
    p.add_argument("--x0", default="1", help="weps-demo target as a decimal literal")
    p.add_argument("--x0-a", type=int, default=1)
    p.add_argument("--x0-b", type=int, help="weps-demo target x0 = a*pi/b")
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--bmax", type=int, default=1000)
    p.add_argument("--nmax", type=int, default=100_000)
    p.add_argument("--timing", action="store_true", help="include wall-clock duration")
    _output_options(p, default_format="json")
    p.set_defaults(func=cmd_experiment)
    return parser


_N_DEFAULTS = {"rational-sweep": 1_000_000, "ae-sample": 500, "cancellation": 12, "moment4": 12}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "experiment" and args.n is None:
        args.n = _N_DEFAULTS.get(args.name)
    try:
        return args.func(args)
    except PrecisionError as exc:
        print(f"error: {exc} (required digits: {exc.required_digits})", file=sys.stderr)
        return EXIT_PRECISION
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (PrecisionAmbiguity, NotFound) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except InvalidArgument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
