"""ingest -> average -> benchmark -> score, as driven by a :class:`RunConfig`."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .benchmarks import BenchmarkSet, builtin_benchmarks, derive_benchmark
from .config import RunConfig, load_benchmark_file
from .errors import ConfigError, EmptyPanelError
from .ingest import CountryPanel, average_period, parse_dataset, read_panel_csv, window_vectors
from .metrics import DEFAULT_SCALE, similarity
from .ranking import ClassificationReport, ReportMetadata, score_all


@dataclass(frozen=True)
class RunResult:
    panel: CountryPanel
    benchmarks: BenchmarkSet
    report: ClassificationReport
    exclusions: tuple[str, ...]


def load_panel(cfg: RunConfig) -> CountryPanel:
    if cfg.panel:
        return read_panel_csv(cfg.panel, cfg.name_overrides)
    if not cfg.dataset:
        raise ConfigError("no dataset given (set 'dataset' in the config or pass --dataset)")
    return parse_dataset(cfg.dataset, cfg.mapping, cfg.name_overrides)


def build_benchmarks(cfg: RunConfig, panel: CountryPanel | None = None) -> BenchmarkSet:
    base = builtin_benchmarks() if cfg.builtin_benchmarks else BenchmarkSet((), DEFAULT_SCALE)
    extra = []
    if cfg.benchmarks_file:
        extra.extend(load_benchmark_file(cfg.benchmarks_file))
    extra.extend(cfg.custom_benchmarks)
    if cfg.derived_benchmarks:
        if panel is None:
            raise ConfigError("derived benchmarks need a dataset or panel")
        w = cfg.window
        averages = average_period(panel, w.start, w.end, w.min_years).vectors
        for name, members in cfg.derived_benchmarks.items():
            missing = [c for c in members if c not in averages]
            if missing:
                raise ConfigError(
                    f"derived benchmark {name!r}: no averaged scores for {', '.join(missing)}"
                )
            extra.append(derive_benchmark(name, [averages[c] for c in members]))
    label = base.label if not extra else ("builtin+custom" if cfg.builtin_benchmarks else "custom")
    merged = base.extended(extra, label)
    if not len(merged):
        raise ConfigError("no benchmarks configured")
    return merged


def score_panel(cfg: RunConfig, panel: CountryPanel, benchmarks: BenchmarkSet) -> tuple[ClassificationReport, list[str]]:
    w = cfg.window
    weights = cfg.weight_vector
    meta = ReportMetadata(
        mode=cfg.mode,
        weights=cfg.weights,
        benchmarks=benchmarks.label,
        window=(w.start, w.end),
        order=cfg.avg_order,
    )
    if cfg.avg_order == "average-then-score":
        averages = average_period(panel, w.start, w.end, w.min_years)
        vectors, excluded = averages.vectors, averages.excluded
        if not vectors:
            raise EmptyPanelError(f"no country has enough complete years in {w.start}-{w.end}")
        report = score_all(vectors, benchmarks, cfg.mode, weights, meta)
    else:
        grouped, excluded = window_vectors(panel, w.start, w.end, w.min_years)
        if not grouped:
            raise EmptyPanelError(f"no country has enough complete years in {w.start}-{w.end}")
        scores = {}
        for cid in sorted(grouped):
            vecs = grouped[cid]
            scores[cid] = {
                b.name: math.fsum(
                    similarity(v, b, benchmarks.scale, b.weights or weights, cfg.mode) for v in vecs
                ) / len(vecs)
                for b in benchmarks
            }
        report = ClassificationReport(tuple(benchmarks.names), scores, meta)
    lines = [f"{cid}: {reason}" for cid, reason in sorted(excluded.items())]
    return report, lines


def run(cfg: RunConfig) -> RunResult:
    panel = load_panel(cfg)
    benchmarks = build_benchmarks(cfg, panel)
    report, excluded = score_panel(cfg, panel, benchmarks)
    return RunResult(panel, benchmarks, report, tuple(panel.exclusions() + excluded))
