"""Scoring every country against every benchmark, and ranking the result."""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .benchmarks import BenchmarkSet
from .countries import display_name
from .errors import DimensionMismatch, UnknownBenchmark, UnknownCountry
from .metrics import FoundationVector, Mode, WeightVector, format_score, similarity


@dataclass(frozen=True)
class ReportMetadata:
    mode: Mode = Mode.FIXED_RANGE
    weights: Optional[tuple[float, ...]] = None
    benchmarks: str = "builtin"
    window: Optional[tuple[int, int]] = None
    order: str = "average-then-score"


@dataclass(frozen=True)
class ClassificationReport:
    """``scores[country_id][benchmark_name]``; benchmark order is ``benchmarks``."""

    benchmarks: tuple[str, ...]
    scores: Mapping[str, Mapping[str, float]]
    metadata: ReportMetadata = field(default_factory=ReportMetadata)

    def __post_init__(self):
        for cid, row in self.scores.items():
            if set(row) != set(self.benchmarks):
                raise ValueError(f"{cid}: scores for {sorted(row)}, expected {list(self.benchmarks)}")
            for name, value in row.items():
                if not 0.0 <= value <= 1.0:
                    raise ValueError(f"{cid}/{name}: score {value} outside [0, 1]")

    def __len__(self):
        return len(self.scores)

    def countries(self) -> list[str]:
        return sorted(self.scores)

    def column(self, benchmark: str) -> dict[str, float]:
        if benchmark not in self.benchmarks:
            raise UnknownBenchmark(
                f"unknown benchmark {benchmark!r}; known: {', '.join(self.benchmarks)}"
            )
        return {cid: row[benchmark] for cid, row in self.scores.items()}


def score_all(
    vectors: Mapping[str, FoundationVector],
    benchmarks: BenchmarkSet,
    mode: Union[Mode, str] = Mode.FIXED_RANGE,
    weights: Optional[WeightVector] = None,
    metadata: Optional[ReportMetadata] = None,
) -> ClassificationReport:
    mode = Mode(mode)
    scale = benchmarks.scale
    scores = {}
    for cid in sorted(vectors):
        x = vectors[cid]
        if x.scale != scale:
            raise DimensionMismatch(f"{cid}: vector scale differs from the benchmark set's")
        scores[cid] = {
            b.name: similarity(x, b, scale, b.weights or weights, mode) for b in benchmarks
        }
    if metadata is None:
        metadata = ReportMetadata(
            mode=mode,
            weights=weights.weights if weights else None,
            benchmarks=benchmarks.label,
        )
    return ClassificationReport(tuple(benchmarks.names), scores, metadata)


@dataclass(frozen=True)
class RankRow:
    rank: int
    country_id: str
    score: float


@dataclass(frozen=True)
class RankTable:
    benchmark: str
    rows: tuple[RankRow, ...]

    def to_csv(self, dp: Optional[int] = 2) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["rank", "country_id", "country_name", "score"])
        for r in self.rows:
            writer.writerow([r.rank, r.country_id, display_name(r.country_id), format_score(r.score, dp)])
        return buf.getvalue()

    def to_text(self, dp: Optional[int] = 2) -> str:
        cells = [("rank", "code", "country", self.benchmark)]
        cells += [
            (str(r.rank), r.country_id, display_name(r.country_id), format_score(r.score, dp))
            for r in self.rows
        ]
        widths = [max(len(row[i]) for row in cells) for i in range(4)]
        lines = []
        for row in cells:
            lines.append(
                f"{row[0]:>{widths[0]}}  {row[1]:<{widths[1]}}  {row[2]:<{widths[2]}}  {row[3]:>{widths[3]}}".rstrip()
            )
        return "\n".join(lines) + "\n"


def top_n(report: ClassificationReport, benchmark: str, n: int = 20) -> RankTable:
    """Highest ``n`` scores; ties go to the lexicographically smaller code."""
    if n < 1:
        raise ValueError("n must be at least 1")
    column = report.column(benchmark)
    ordered = sorted(column.items(), key=lambda kv: (-kv[1], kv[0]))[:n]
    rows = tuple(RankRow(i, cid, score) for i, (cid, score) in enumerate(ordered, start=1))
    return RankTable(benchmark, rows)


def nearest_benchmark(report: ClassificationReport, country: str) -> str:
    """Derived categorical label: the benchmark the country is most similar to.

    Ties go to the benchmark declared first. This is a convenience view; the
    continuous scores remain the primary output.
    """
    if country not in report.scores:
        raise UnknownCountry(f"country {country!r} not in report")
    row = report.scores[country]
    best = report.benchmarks[0]
    for name in report.benchmarks[1:]:
        if row[name] > row[best]:
            best = name
    return best


def export_scores_csv(
    report: ClassificationReport,
    destination: Union[str, os.PathLike, io.TextIOBase],
    dp: Optional[int] = 2,
) -> int:
    """One row per country, sorted by code; returns the row count."""

    def write(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["country_id", "country_name", *report.benchmarks])
        for cid in report.countries():
            row = report.scores[cid]
            writer.writerow(
                [cid, display_name(cid), *(format_score(row[b], dp) for b in report.benchmarks)]
            )
        return len(report.scores)

    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            return write(fh)
    return write(destination)


def read_scores_csv(source: Union[str, os.PathLike]) -> ClassificationReport:
    """Load a scores CSV written by :func:`export_scores_csv`."""
    with open(source, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[:2] != ["country_id", "country_name"]:
            raise ValueError(f"{source}: not a scores CSV (header {header!r})")
        names = tuple(header[2:])
        scores = {row[0]: dict(zip(names, map(float, row[2:]))) for row in reader if row}
    return ClassificationReport(names, scores)
