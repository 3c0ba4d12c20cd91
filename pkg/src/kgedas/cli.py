"""Command-line interface: ``kgedas {rank,metrics,correlate,ablate,plot}``.

Exit codes: 0 success, 2 bad input or configuration, 3 input that parses
but cannot be evaluated, 4 output could not be written.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import analysis, ingest, rank_metrics
from .edas_core import evaluate
from .errors import InputError, KgEdasError, ValidationError
from .svg import scatter_svg

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VALIDATION = 3
EXIT_OUTPUT = 4

FIXTURE_PREFIX = "fixture:"
EDAS_COLUMNS = ("WPDA_sum", "WNDA_sum", "NWPDA", "NWNDA", "M", "Rank")


class OutputError(Exception):
    pass


def _read_records(spec: str):
    if spec.startswith(FIXTURE_PREFIX):
        name = spec[len(FIXTURE_PREFIX):]
        if name not in ingest.FIXTURES:
            raise InputError(f"unknown fixture {name!r}; available: {', '.join(ingest.FIXTURES)}")
        return ingest.load_fixture(name)
    try:
        return ingest.read_leaderboard(spec)
    except OSError as exc:
        raise InputError(f"cannot read leaderboard {spec}: {exc.strerror or exc}") from None
    except InputError as exc:
        raise type(exc)(f"{spec}: {exc}") from None


def _load_matrix(args):
    records = _read_records(args.leaderboard)
    try:
        config = ingest.load_config(args.config)
    except OSError as exc:
        raise InputError(f"cannot read config {args.config}: {exc.strerror or exc}") from None
    except InputError as exc:
        if args.config and str(args.config) not in str(exc):
            raise type(exc)(f"{args.config}: {exc}") from None
        raise
    if args.impute_average:
        config = config.with_policy(ingest.MissingPolicy.IMPUTE)
    return ingest.assemble(records, config)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.4f}"
    return str(v)


def _table(header, rows) -> str:
    cells = [[str(h) for h in header]] + [[_fmt(v) for v in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    lines = []
    for idx, r in enumerate(cells):
        parts = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(parts).rstrip())
        if idx == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _long_rows(rows, dataset, columns):
    return [(r["model"], dataset, c, r[c]) for r in rows for c in columns]


def cmd_rank(args) -> str:
    matrix = _load_matrix(args)
    rows = evaluate(matrix).rows()
    if args.format == "json":
        return _json(rows)
    if args.format == "csv":
        return _csv(ingest.HEADER, _long_rows(rows, "EDAS", EDAS_COLUMNS))
    return _table(("Model",) + EDAS_COLUMNS, [[r["model"]] + [r[c] for c in EDAS_COLUMNS] for r in rows])


def _read_ranks(path: str) -> list[int]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read ranks file {path}: {exc.strerror or exc}") from None
    ranks = []
    for lineno, line in enumerate(lines, 1):
        text = line.strip()
        if not text:
            continue
        try:
            value = int(text)
        except ValueError:
            raise InputError(f"{path}: line {lineno}: not an integer rank: {text!r}") from None
        if value < 1:
            raise InputError(f"{path}: line {lineno}: rank must be >= 1, got {value}")
        ranks.append(value)
    if not ranks:
        raise InputError(f"{path}: no ranks found")
    return ranks


def cmd_metrics(args) -> str:
    ranks = _read_ranks(args.ranks_file)
    ks = args.k or [1, 3, 10]
    result = rank_metrics.summary(ranks, ks)
    result = {k.replace("Hit@", "Hits@"): v for k, v in result.items()}
    if args.format == "json":
        return _json(result)
    if args.format == "csv":
        return _csv(("metric", "value"), list(result.items()))
    return _table(("Metric", "Value"), list(result.items()))


def cmd_correlate(args) -> str:
    matrix = _load_matrix(args)
    breakdown = evaluate(matrix)
    reports = [analysis.correlate(matrix, breakdown, t) for t in args.target]
    header = ("pair", "pearson_r", "pearson_p", "kendall_tau", "kendall_p", "n")
    rows = [[r.pair_label, r.pearson_r, r.pearson_p, r.kendall_tau, r.kendall_p, r.n] for r in reports]
    if args.format == "json":
        return _json([r.as_dict() for r in reports])
    if args.format == "csv":
        return _csv(header, rows)
    return _table(("Metric Pair", "Pearson r", "p-value", "Kendall tau", "p-value", "n"), rows)


def cmd_ablate(args) -> str:
    matrix = _load_matrix(args)
    groups = [[m.strip() for m in spec.split(",") if m.strip()] for spec in args.remove]
    if any(not g for g in groups):
        raise InputError("empty --remove value")
    rows = analysis.ablation_table(matrix, [g[0] if len(g) == 1 else g for g in groups])
    columns = ["Original"] + ["+".join(g) for g in groups] + ["Max Change"]
    if args.format == "json":
        return _json(rows)
    if args.format == "csv":
        return _csv(ingest.HEADER, _long_rows(rows, "ablation", columns))
    return _table(["Model"] + columns, [[r["model"]] + [r[c] for c in columns] for r in rows])


def cmd_plot(args) -> str:
    matrix = _load_matrix(args)
    breakdown = evaluate(matrix)
    x_label, xs = analysis.resolve_spec(matrix, breakdown, args.x)
    y_label, ys = analysis.resolve_spec(matrix, breakdown, args.y)
    out = Path(args.out)
    if out.suffix.lower() == ".csv":
        raise InputError(f"--out {out} must not be a .csv path; the point table is written next to it")
    points = out.with_suffix(".csv")
    rows = [(m, float(x), float(y)) for m, x, y in zip(matrix.model_names, xs, ys)]
    svg = scatter_svg(
        [r[0] for r in rows], [r[1] for r in rows], [r[2] for r in rows],
        x_title=x_label, y_title=y_label, title=f"{y_label} vs {x_label}",
    )
    try:
        with open(points, "w", encoding="utf-8", newline="") as fh:
            fh.write(_csv(("model", "x", "y"), rows))
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as exc:
        raise OutputError(f"cannot write {exc.filename or out}: {exc.strerror or exc}") from None
    return f"wrote {out} and {points} ({len(rows)} points)\n"


def _add_matrix_args(p):
    p.add_argument("--leaderboard", required=True,
                   help="leaderboard .csv/.json, or fixture:<name> for a bundled one")
    p.add_argument("--config", help="criteria config JSON (default: built-in directions)")
    p.add_argument("--impute-average", action="store_true",
                   help="fill missing cells with the column average instead of failing")


def _add_format(p):
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kgedas", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="appraisal scores and global ranking")
    _add_matrix_args(p)
    _add_format(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("metrics", help="MR, MRR and Hits@k from a file of ranks")
    p.add_argument("ranks_file", help="one positive integer rank per line")
    p.add_argument("--k", type=int, action="append", help="Hits@k cut-off (repeatable; default 1, 3, 10)")
    _add_format(p)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("correlate", help="Pearson / Kendall agreement of M with a metric")
    _add_matrix_args(p)
    p.add_argument("--target", action="append", required=True,
                   help="mean:<metric> or <dataset>/<metric> (repeatable)")
    _add_format(p)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("ablate", help="rank shifts after removing metric families")
    _add_matrix_args(p)
    p.add_argument("--remove", action="append", required=True,
                   help="metric to remove (repeatable; comma-separate to remove several together)")
    _add_format(p)
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("plot", help="scatter of M against a metric, as SVG plus point CSV")
    _add_matrix_args(p)
    p.add_argument("--x", required=True, help="x-axis spec: mean:<metric>, <dataset>/<metric> or M")
    p.add_argument("--y", default="M", help="y-axis spec (default: M)")
    p.add_argument("--out", required=True, help="SVG output path; <out>.csv gets the points")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except InputError as exc:
        print(f"kgedas {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValidationError, KgEdasError) as exc:
        print(f"kgedas {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OutputError as exc:
        print(f"kgedas {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
