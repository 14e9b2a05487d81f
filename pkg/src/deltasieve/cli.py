"""Command-line harness.

One binary, four subcommands:

    deltasieve verify   --suite {arith,expsum,characters,oscint,density,sieve,poisson,all}
    deltasieve constant --theorem {1,2} --prime-bound P
    deltasieve count    --X 1 | --X 3,4,5,6 --mode {exact,smoothed}
    deltasieve balance  --preset paper | --terms FILE

Headers (version, resolved flags, wall clock) go to stderr; the payload
(JSON or CSV) goes to stdout or --out and is byte-identical across reruns
with the same flags and seed, except for the ``seconds`` timing column of
count reports.

Exit codes: 0 success, 1 assertion/guard failure, 2 usage error.
The environment variable DELTASIEVE_MAX_SECONDS aborts long runs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from . import __version__
from .density import (
    ExponentTerm,
    balance_exponents,
    euler_product,
    paper_balance,
)
from .sieve import MAIN_TERM_CSV_COLUMNS, compare_main_term
from .suites import TimeBudgetExceeded, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _header(args: argparse.Namespace):
    flags = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    print(
        f"deltasieve {__version__} | {args.command} | flags={flags} | "
        f"wall-clock={time.strftime('%Y-%m-%dT%H:%M:%S')}",
        file=sys.stderr,
    )


def _rows_to_csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        d = asdict(r) if is_dataclass(r) else r
        w.writerow([d[c] for c in columns])
    return buf.getvalue()


def _emit_artifacts(reports, out: str | None):
    """Write scan artifacts (omega/station/sj/main-term rows) as side CSVs."""
    if not out:
        return
    from .characters import SJ_CSV_COLUMNS
    from .oscint import OMEGA_CSV_COLUMNS, STATION_CSV_COLUMNS

    columns = {
        "omega_rows": OMEGA_CSV_COLUMNS,
        "station_rows": STATION_CSV_COLUMNS,
        "sj_rows": SJ_CSV_COLUMNS,
        "main_term_rows": MAIN_TERM_CSV_COLUMNS,
    }
    for rep in reports:
        for name, rows in rep.artifacts.items():
            if name in columns and rows:
                path = f"{out}.{rep.suite}.{name}.csv"
                with open(path, "w") as fh:
                    fh.write(_rows_to_csv(columns[name], rows))


def _cmd_verify(args) -> int:
    try:
        reports = run_suite(args.suite, args.seed)
    except TimeBudgetExceeded as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_FAIL
    payload = {
        "suite": args.suite,
        "seed": args.seed,
        "ok": all(r.ok for r in reports),
        "suites": [
            {
                "name": r.suite,
                "ok": r.ok,
                "n_checks": len(r.checks),
                "n_pass": sum(c.ok for c in r.checks),
                "max_deviation": r.max_deviation,
                "checks": [
                    {
                        "name": c.name,
                        "ok": c.ok,
                        "deviation": c.deviation,
                        "detail": c.detail,
                    }
                    for c in r.checks
                ],
            }
            for r in reports
        ],
    }
    if args.format == "text":
        lines = []
        for r in reports:
            for c in r.checks:
                lines.append(
                    f"[{'PASS' if c.ok else 'FAIL'}] {r.suite}.{c.name} "
                    f"deviation={c.deviation:.3g} {c.detail}"
                )
            lines.append(
                f"suite {r.suite}: {sum(c.ok for c in r.checks)}/{len(r.checks)} passed, "
                f"max deviation {r.max_deviation:.3g}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    elif args.format == "csv":
        rows = [
            {"suite": r.suite, "name": c.name, "ok": int(c.ok),
             "deviation": c.deviation, "detail": c.detail}
            for r in reports
            for c in r.checks
        ]
        _emit(_rows_to_csv(("suite", "name", "ok", "deviation", "detail"), rows), args.out)
        _emit_artifacts(reports, args.out)
    else:
        _emit(json.dumps(payload, indent=2, default=str) + "\n", args.out)
    for r in reports:
        fail = r.first_failure()
        if fail is not None:
            print(f"FAILED {r.suite}.{fail.name}: {fail.detail}", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


def _cmd_constant(args) -> int:
    res = euler_product(args.theorem, args.prime_bound)
    payload = {
        "theorem": res.theorem,
        "P": res.prime_bound,
        "value_lo": res.lo,
        "value_hi": res.hi,
        "tail_bound": res.tail_bound,
        "value": res.value,
        "partial_product": res.partial,
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_count(args) -> int:
    try:
        xs = [float(x) for x in args.X.split(",")]
    except ValueError:
        print(f"bad --X list: {args.X!r}", file=sys.stderr)
        return EXIT_USAGE
    rows = compare_main_term(xs, mode=args.mode, threads=args.threads)
    if args.format == "json":
        payload = [asdict(r) for r in rows]
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(_rows_to_csv(MAIN_TERM_CSV_COLUMNS, rows), args.out)
    return EXIT_OK


def _parse_terms_file(path: str) -> list[ExponentTerm]:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, list) or not data:
        raise ValueError("terms file must be a nonempty JSON list")
    terms = []
    for item in data:
        terms.append(
            ExponentTerm(
                Fraction(str(item.get("const", 0))),
                Fraction(str(item.get("t", 0))),
                Fraction(str(item.get("kappa", 0))),
                Fraction(str(item.get("t_kappa", 0))),
            )
        )
    return terms


def _cmd_balance(args) -> int:
    if args.terms:
        try:
            terms = _parse_terms_file(args.terms)
        except (OSError, ValueError, json.JSONDecodeError) as exc:
            print(f"bad terms file: {exc}", file=sys.stderr)
            return EXIT_USAGE
        res = balance_exponents(terms)
    elif args.preset == "paper":
        res = paper_balance()
    else:
        print(f"unknown preset {args.preset!r}", file=sys.stderr)
        return EXIT_USAGE
    payload = {
        "t": str(res.t),
        "kappa": str(res.kappa),
        "exponent": str(res.exponent),
        "exponent_decimal": float(res.exponent),
        "grid_best": res.grid_best,
        "grid_t": res.grid_t,
        "grid_kappa": res.grid_kappa,
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="deltasieve",
        description="verification and computation toolkit for square-free "
        "discriminant counts and complete cubic exponential sums",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a module verification suite")
    v.add_argument(
        "--suite",
        required=True,
        choices=["arith", "expsum", "characters", "oscint", "density", "sieve", "poisson", "all"],
    )
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", choices=["json", "csv", "text"], default="text")
    v.add_argument("--out", default=None)
    v.set_defaults(func=_cmd_verify)

    c = sub.add_parser("constant", help="Euler-product constant as an interval")
    c.add_argument("--theorem", type=int, required=True, choices=[1, 2])
    c.add_argument("--prime-bound", type=int, default=10**5)
    c.add_argument("--out", default=None)
    c.set_defaults(func=_cmd_constant)

    k = sub.add_parser("count", help="square-free discriminant counts vs main term")
    k.add_argument("--X", required=True, help="X value or comma list, e.g. 3,4,5,6")
    k.add_argument("--mode", choices=["exact", "smoothed"], default="exact")
    k.add_argument("--threads", type=int, default=1)
    k.add_argument("--format", choices=["json", "csv"], default="csv")
    k.add_argument("--out", default=None)
    k.set_defaults(func=_cmd_count)

    b = sub.add_parser("balance", help="minimax of the error-term exponents")
    b.add_argument("--preset", default="paper")
    b.add_argument("--terms", default=None, help="JSON file of exponent terms")
    b.add_argument("--out", default=None)
    b.set_defaults(func=_cmd_balance)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    _header(args)
    try:
        return args.func(args)
    except TimeBudgetExceeded as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
