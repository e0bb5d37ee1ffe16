"""Command-line interface: ``mtrees {build,count,verify,analyze,entropy}``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 resource limit, 4 counting methods disagree.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import gmpy2

from . import analysis, counting, kirchhoff, verify
from .graph import ResourceLimitError, build, export

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_LIMIT, EXIT_DISAGREE = 0, 1, 2, 3, 4

CLOSED_FORM_COUNT_MAX_T = 18
KIRCHHOFF_COUNT_MAX_T = 7
KIRCHHOFF_MOD_COUNT_MAX_T = 12
ANALYZE_MAX_T = 16

_EXPORT_NAMES = {"edgelist": "edge-list", "dot": "dot", "json": "json"}


class UsageError(Exception):
    pass


def _limit(default: int) -> int:
    # MGRAPH_MAX_T overrides every per-command ceiling at once
    value = os.environ.get("MGRAPH_MAX_T")
    return int(value) if value else default


def decimal_str(n: int) -> str:
    # CPython's int -> str is quadratic and capped; gmpy2 is neither
    return gmpy2.mpz(n).digits(10)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    g = build(args.t)
    summary = f"V={g.n} E={g.m}\n"
    if args.format is None:
        sys.stdout.write(summary)
        return EXIT_OK
    if args.format not in _EXPORT_NAMES:
        raise UsageError(f"build supports formats {sorted(_EXPORT_NAMES)}")
    data = export(g, _EXPORT_NAMES[args.format])
    if args.out:
        Path(args.out).write_bytes(data)
        sys.stdout.write(summary)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        sys.stderr.write(summary)
    return EXIT_OK


def _count_methods(t: int, method: str, modulus: int | None) -> tuple[dict[str, int], dict[str, str]]:
    wanted = ["recurrence", "closed-form", "kirchhoff"] if method == "all" else [method]
    explicit = method != "all"
    values: dict[str, int] = {}
    skipped: dict[str, str] = {}
    materialize = _limit(counting.DEFAULT_MATERIALIZE_T)

    for name in wanted:
        if name == "recurrence":
            if modulus:
                values[name] = _s_mod(t, modulus)
            elif t <= materialize:
                values[name] = counting.s_recurrence(t)
            else:
                skipped[name] = f"t > {materialize}: not materialized"
        elif name == "closed-form":
            top = _limit(CLOSED_FORM_COUNT_MAX_T)
            if t == 0:
                skipped[name] = "product formula starts at t = 1"
            elif t > top:
                skipped[name] = f"t > {top}"
            else:
                s = counting.s_theorem1(t)
                values[name] = s % modulus if modulus else s
        elif name == "kirchhoff":
            top = _limit(KIRCHHOFF_MOD_COUNT_MAX_T if modulus else KIRCHHOFF_COUNT_MAX_T)
            if t > top:
                skipped[name] = f"t > {top}"
            elif modulus:
                values[name] = kirchhoff.count_trees_mod(build(t), modulus)
            else:
                values[name] = kirchhoff.count_trees(build(t))
        # an explicitly requested method that cannot run is a resource error;
        # the recurrence alone degrades to a digit count instead
        if explicit and name in skipped and name != "recurrence":
            raise ResourceLimitError(f"{name}: {skipped[name]}")
    return values, skipped


def _s_mod(t: int, p: int) -> int:
    a, b = 1 % p, 4 % p
    if t == 0:
        return a
    for _ in range(2, t + 1):
        a, b = b, (4 * b * b - 2 * b * a * a) % p
    return b


def cmd_count(args) -> int:
    t = args.t
    if t < 0:
        raise UsageError("--t must be nonnegative")
    if args.modulus is not None and (args.modulus < 2 or not gmpy2.is_prime(args.modulus)):
        raise UsageError(f"--modulus {args.modulus} is not prime")

    values, skipped = _count_methods(t, args.method, args.modulus)
    agree = len(set(values.values())) <= 1
    value = next(iter(values.values()), None)
    digits = None
    if not args.modulus:
        digits = len(decimal_str(value)) if value is not None else counting.digit_count(t)

    if args.format == "json":
        doc = {
            "t": t,
            "modulus": args.modulus,
            "value": None if value is None or args.digits_only else decimal_str(value),
            "digits": digits,
            "methods": {k: decimal_str(v) for k, v in values.items()} if not args.digits_only else sorted(values),
            "skipped": skipped,
            "agree": agree,
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = []
        if args.digits_only or value is None:
            lines.append(f"digits {digits}")
            if value is None:
                lines.append(f"# s({t}) not materialized; digit count from the logarithm sum")
        else:
            lines.append(decimal_str(value))
        if args.method == "all":
            for name, v in values.items():
                lines.append(f"{name}: {'ok' if args.digits_only else decimal_str(v)}")
            for name, why in skipped.items():
                lines.append(f"{name}: skipped ({why})")
            lines.append(f"agreement: {'all ' + str(len(values)) + ' methods agree' if agree else 'DISAGREE'}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_verify(args) -> int:
    graph_for = verify.faulty_graph_for if args.inject_fault else build
    results = verify.run_checks(args.t_max, graph_for)
    doc = verify.report(results, args.t_max)
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.id}: {r.detail}", file=sys.stderr)
    return EXIT_OK if doc["passed"] else EXIT_VERIFY


def _analyze_levels(args) -> list[int]:
    if (args.t is None) == (args.t_max is None):
        raise UsageError("analyze needs exactly one of --t or --t-max")
    top = args.t if args.t is not None else args.t_max
    if top < 1:
        raise UsageError("analyze requires t >= 1")
    limit = _limit(ANALYZE_MAX_T)
    if top > limit:
        raise ResourceLimitError(f"analyze limited to t <= {limit}")
    return [args.t] if args.t is not None else list(range(1, args.t_max + 1))


def cmd_analyze(args) -> int:
    reports = [analysis.analyze(build(t)) for t in _analyze_levels(args)]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(analysis.CSV_FIELDS)
        writer.writerows(analysis.csv_row(r) for r in reports)
        text = buf.getvalue()
    elif args.format == "text":
        blocks = []
        for r in reports:
            blocks.append("\n".join(f"{k}: {v}" for k, v in r.to_dict().items()))
        text = "\n\n".join(blocks) + "\n"
    else:
        docs = [r.to_dict() for r in reports]
        text = json.dumps(docs[0] if args.t is not None else docs, indent=2) + "\n"
    _emit(text, args.out)

    if args.plot_dir:
        from . import plotting

        out = Path(args.plot_dir)
        for r in reports:
            plotting.plot_degree_law(r, out / f"degree_law_t{r.t}.png")
        if len(reports) > 1:
            plotting.plot_distance_scaling(reports, out / "distance_scaling.png")
    return EXIT_OK


def cmd_entropy(args) -> int:
    if args.t < 1:
        raise UsageError("entropy requires t >= 1")
    if args.precision < 10:
        raise UsageError("--precision must be at least 10")
    est = counting.entropy(args.t, args.precision)
    table = analysis.entropy_table() if args.compare or args.plot_dir else None

    if args.format == "json":
        doc = {"t": est.t, "h_t": str(est.h_t), "digits": est.digits, "precision": est.precision}
        if args.compare:
            doc["comparison"] = [vars(row) for row in table]
        text = json.dumps(doc, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["quantity", "value", "source"])
        writer.writerow([f"h_{est.t}", str(est.h_t), "computed"])
        writer.writerow([f"digits_s_{est.t}", est.digits, "computed"])
        if args.compare:
            writer.writerows([row.name, row.entropy, row.source] for row in table)
        text = buf.getvalue()
    else:
        lines = [f"h_{est.t} = {est.h_t}", f"digits(s({est.t})) = {est.digits}"]
        if args.compare:
            lines.append("")
            lines.append(f"{'graph family':<32}{'entropy':>10}  source")
            lines.extend(f"{row.name:<32}{row.entropy:>10}  {row.source}" for row in table)
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)

    if args.plot_dir:
        from . import plotting

        partial = [(t, float(counting.entropy(t, 15).h_t)) for t in range(1, args.t + 1)]
        plotting.plot_entropy(partial, table, Path(args.plot_dir) / "entropy_convergence.png")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mtrees", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("build", help="construct M(t) and export it")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--format", choices=["edgelist", "dot", "json"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("count", help="number of spanning trees s(t)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--method", choices=["recurrence", "closed-form", "kirchhoff", "all"], default="recurrence")
    p.add_argument("--modulus", type=int)
    p.add_argument("--digits-only", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="run every cross-check up to --t-max")
    p.add_argument("--t-max", type=int, default=6)
    p.add_argument("--out")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="structural report for M(t)")
    p.add_argument("--t", type=int)
    p.add_argument("--t-max", type=int)
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--out")
    p.add_argument("--plot-dir", help="write figures here")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("entropy", help="spanning-tree entropy h_t")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--precision", type=int, default=20)
    p.add_argument("--compare", action="store_true", help="include the comparison table")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--out")
    p.add_argument("--plot-dir", help="write figures here")
    p.set_defaults(func=cmd_entropy)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"mtrees: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"mtrees: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
