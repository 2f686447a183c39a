"""Command-line entry point: ``qce <subcommand>``.

Exit codes: 0 ok, 1 usage/config error, 2 data error, 3 I/O error. Every
failure prints one line to stderr starting ``qce: error[<kind>]:``.
"""
from __future__ import annotations

import argparse
import io
import os
import sys
from typing import Optional, Sequence

import yaml

from . import __version__, geo
from .benchmarks import derive_benchmark
from .config import CONFIG_ENV, Window, load_config
from .errors import (
    ConfigError,
    DegenerateDimension,
    DimensionMismatch,
    DuplicateRecordError,
    EmptyClusterError,
    EmptyPanelError,
    ParseError,
    QCEError,
    RangeError,
    ScaleError,
    SchemaError,
    UnknownBenchmark,
    UnknownCountry,
    WeightError,
)
from .ingest import average_period, export_panel_csv
from .metrics import Mode, format_score
from .pipeline import build_benchmarks, load_panel, run
from .ranking import export_scores_csv, read_scores_csv, top_n

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_IO = 0, 1, 2, 3

_USAGE_ERRORS = (ConfigError, UnknownBenchmark, UnknownCountry, WeightError)
_DATA_ERRORS = (
    SchemaError, RangeError, DuplicateRecordError, EmptyPanelError, EmptyClusterError,
    ParseError, ScaleError, DimensionMismatch, DegenerateDimension,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fail(kind: str, message: str, code: int) -> int:
    message = " ".join(str(message).split())
    print(f"qce: error[{kind}]: {message}", file=sys.stderr)
    return code


def _open_out(path: Optional[str]):
    if not path or path == "-":
        return None
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    return path


def _write_text(path: Optional[str], text: str) -> None:
    if _open_out(path) is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _config(args):
    cfg = load_config(args.config)
    window = cfg.window
    if args.start is not None or args.end is not None or args.min_years is not None:
        window = Window(
            args.start if args.start is not None else window.start,
            args.end if args.end is not None else window.end,
            args.min_years if args.min_years is not None else window.min_years,
        )
    weights = None
    if args.weights:
        try:
            weights = tuple(float(w) for w in args.weights.split(","))
        except ValueError:
            raise ConfigError(f"--weights: expected comma-separated numbers, got {args.weights!r}") from None
    breaks = None
    if getattr(args, "breaks", None) is not None:
        try:
            breaks = tuple(float(b) for b in args.breaks.split(",") if b.strip())
        except ValueError:
            raise ConfigError(f"--breaks: expected comma-separated numbers, got {args.breaks!r}") from None
    cfg = cfg.replace(
        dataset=args.dataset,
        panel=args.panel,
        window=window,
        mode=Mode(args.mode) if args.mode else None,
        avg_order=args.avg_order,
        weights=weights,
        dp=args.dp,
        geometry=getattr(args, "geometry", None),
        key_property=getattr(args, "key_property", None),
        prefix=getattr(args, "prefix", None),
        breaks=breaks,
    )
    return cfg.validate()


def _output(args, cfg, key):
    flag = getattr(args, "out", None)
    return flag if flag is not None else cfg.outputs.get(key)


def cmd_ingest(args) -> int:
    cfg = _config(args)
    panel = load_panel(cfg)
    out = _output(args, cfg, "panel")
    if _open_out(out) is None:
        export_panel_csv(panel, sys.stdout)
    else:
        export_panel_csv(panel, out)
    lines = panel.exclusions()
    excl_path = args.exclusions or cfg.outputs.get("exclusions")
    if excl_path:
        _open_out(excl_path)
        _write_text(excl_path, "".join(f"{line}\n" for line in lines))
    print(f"{len(panel)} records, {len(panel.countries())} countries, {len(lines)} exclusions", file=sys.stderr)
    for line in lines:
        print(line, file=sys.stderr)
    return EXIT_OK


def cmd_score(args) -> int:
    cfg = _config(args)
    result = run(cfg)
    out = _output(args, cfg, "scores")
    if _open_out(out) is None:
        buf = io.StringIO()
        n = export_scores_csv(result.report, buf, cfg.dp)
        sys.stdout.write(buf.getvalue())
    else:
        n = export_scores_csv(result.report, out, cfg.dp)
    excl_path = args.exclusions or cfg.outputs.get("exclusions")
    if excl_path:
        _open_out(excl_path)
        _write_text(excl_path, "".join(f"{line}\n" for line in result.exclusions))
    print(f"{n} countries scored, {len(result.exclusions)} exclusions", file=sys.stderr)
    return EXIT_OK


def _report(args, cfg):
    if getattr(args, "report", None):
        return read_scores_csv(args.report)
    return run(cfg).report


def cmd_rank(args) -> int:
    cfg = _config(args)
    report = _report(args, cfg)
    name = args.benchmark
    if name not in report.benchmarks:
        from .benchmarks import ALIASES

        name = ALIASES.get(name.lower(), name)
    table = top_n(report, name, args.n)
    text = table.to_csv(cfg.dp) if args.format == "csv" else table.to_text(cfg.dp)
    _write_text(_output(args, cfg, "rank"), text)
    return EXIT_OK


def cmd_export_geojson(args) -> int:
    cfg = _config(args)
    if not cfg.geometry:
        raise ConfigError("no geometry file given (--geometry or geo.geometry)")
    geometry = geo.read_geojson(cfg.geometry)
    report = _report(args, cfg)
    spec = geo.GeoJoinSpec(cfg.key_property, cfg.prefix, cfg.breaks, args.geo_dp)
    result = geo.merge_geojson(report, geometry, spec)
    out = _output(args, cfg, "geojson")
    if _open_out(out) is None:
        sys.stdout.write(geo.dumps(result.geojson) + "\n")
    else:
        geo.write_geojson(result.geojson, out)
    print(f"{len(result.matched)} matched, {len(result.unmatched)} unmatched", file=sys.stderr)
    for line in result.report_lines():
        print(line, file=sys.stderr)
    return EXIT_OK


def cmd_benchmarks(args) -> int:
    cfg = _config(args)
    if args.action == "list":
        panel = load_panel(cfg) if cfg.derived_benchmarks else None
        bset = build_benchmarks(cfg, panel)
        for b in bset:
            coords = ", ".join(format_score(c, cfg.dp) for c in b.position)
            extra = f"  weights=({', '.join(map(repr, b.weights.weights))})" if b.weights else ""
            print(f"{b.name}: ({coords}){extra}")
        return EXIT_OK

    if not args.name or not args.countries:
        raise ConfigError("benchmarks derive needs --name and --countries")
    panel = load_panel(cfg)
    w = cfg.window
    averages = average_period(panel, w.start, w.end, w.min_years).vectors
    members = [c.strip().upper() for c in args.countries.split(",") if c.strip()]
    missing = [c for c in members if c not in averages]
    if missing:
        raise EmptyClusterError(f"no averaged scores in {w.start}-{w.end} for {', '.join(missing)}")
    bench = derive_benchmark(args.name, [averages[c] for c in members])
    entry = {
        args.name: {
            "name": args.name,
            "coordinates": list(bench.position.scores),
            "members": members,
            "display": [float(format_score(c, cfg.dp)) for c in bench.position],
        }
    }
    sys.stdout.write(yaml.safe_dump(entry, sort_keys=False))
    return EXIT_OK


def cmd_validate(args) -> int:
    cfg = _config(args)
    problems = []
    for label, p in (("dataset", cfg.dataset), ("panel", cfg.panel), ("geometry", cfg.geometry),
                     ("benchmarks file", cfg.benchmarks_file)):
        if p and not os.path.exists(p):
            problems.append(f"{label} {p!r} does not exist")
    if problems:
        raise ConfigError("; ".join(problems))
    bset = build_benchmarks(cfg.replace(derived_benchmarks={}) if cfg.derived_benchmarks else cfg)
    print(
        f"ok: mode={cfg.mode.value} order={cfg.avg_order} window={cfg.window.start}-{cfg.window.end} "
        f"min_years={cfg.window.min_years} benchmarks={','.join(bset.names)}"
        + (f"+{len(cfg.derived_benchmarks)} derived" if cfg.derived_benchmarks else "")
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-c", "--config", help=f"YAML run config (default: ${CONFIG_ENV})")
    common.add_argument("--dataset", help="Fraser-style CSV")
    common.add_argument("--panel", help="canonical panel CSV (instead of --dataset)")
    common.add_argument("--start", type=int, help="first year of the averaging window")
    common.add_argument("--end", type=int, help="last year of the averaging window")
    common.add_argument("--min-years", type=int, help="complete years required per country")
    common.add_argument("--mode", choices=[m.value for m in Mode])
    common.add_argument("--avg-order", choices=["average-then-score", "score-then-average"])
    common.add_argument("--weights", help="comma-separated MO,PO,SG weights")
    common.add_argument("--dp", type=int, help="decimal places in written scores")

    parser = _Parser(prog="qce", description="Similarity of economic systems to benchmark systems.")
    parser.add_argument("--version", action="version", version=f"qce {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", parents=[common], help="parse the dataset into a canonical panel")
    p.add_argument("-o", "--out", help="panel CSV path ('-' for stdout)")
    p.add_argument("--exclusions", help="exclusion report path")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("score", parents=[common], help="score every country against every benchmark")
    p.add_argument("-o", "--out", help="scores CSV path ('-' for stdout)")
    p.add_argument("--exclusions", help="exclusion report path")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("rank", parents=[common], help="top-N table for one benchmark")
    p.add_argument("benchmark")
    p.add_argument("-n", type=int, default=20)
    p.add_argument("--report", help="rank an existing scores CSV instead of recomputing")
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("export-geojson", parents=[common], help="merge scores into GeoJSON features")
    p.add_argument("--geometry", help="input FeatureCollection")
    p.add_argument("--report", help="use an existing scores CSV instead of recomputing")
    p.add_argument("--key-property")
    p.add_argument("--prefix")
    p.add_argument("--breaks", help="comma-separated class breaks in [0,1]; empty for none")
    p.add_argument("--geo-dp", type=int, default=None, help="round injected scores (default: full precision)")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_export_geojson)

    p = sub.add_parser("benchmarks", parents=[common], help="list or derive benchmarks")
    p.add_argument("action", choices=["list", "derive"])
    p.add_argument("--name")
    p.add_argument("--countries", help="comma-separated alpha-3 codes")
    p.set_defaults(func=cmd_benchmarks)

    p = sub.add_parser("validate", parents=[common], help="check a config file")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _fail("usage", exc, EXIT_USAGE)
    except _USAGE_ERRORS as exc:
        return _fail(exc.kind, exc, EXIT_USAGE)
    except _DATA_ERRORS as exc:
        return _fail(exc.kind, exc, EXIT_DATA)
    except QCEError as exc:
        return _fail(exc.kind, exc, EXIT_DATA)
    except ValueError as exc:
        return _fail("data", exc, EXIT_DATA)
    except OSError as exc:
        where = f" {exc.filename}" if exc.filename else ""
        return _fail("io", f"{exc.strerror or exc}{where}", EXIT_IO)


if __name__ == "__main__":
    sys.exit(main())
