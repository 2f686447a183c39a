"""Run configuration: a YAML file, overridable field by field from the CLI.

Example::

    dataset: efw.csv
    mapping:
      country: Countries
      year: Year
      mo: Regulation
      po: {source: State Ownership of Assets, invert: false}
      sg: Size of Government
    overrides: {"Hong Kong SAR, China": HKG}
    window: {start: 1995, end: 2020, min_years: 1}
    mode: fixed-range            # or benchmark-relative
    avg_order: average-then-score  # or score-then-average
    weights: [1, 1, 1]
    dp: 2
    benchmarks:
      builtin: true
      file: my_benchmarks.yaml
      custom:
        liberal_market: {name: liberal_market, coordinates: [8.5, 8.0, 6.5]}
      derive:
        nordic_recomputed: {countries: [DNK, FIN, ISL, NOR, SWE]}
    outputs:
      panel: out/panel.csv
      exclusions: out/exclusions.txt
      scores: out/scores.csv
      rank: out/rank.txt
      geojson: out/merged.geojson
    geo:
      geometry: world.geojson
      key_property: ISO_A3
      prefix: qce_
      breaks: [0.2, 0.4, 0.6, 0.8]
"""
from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

import yaml

from .countries import NameOverrides
from .errors import ConfigError
from .geo import check_breaks
from .ingest import FRASER_DEFAULT, ColumnMapping
from .metrics import Benchmark, FoundationVector, Mode, WeightVector

CONFIG_ENV = "QCE_CONFIG"
AVG_ORDERS = ("average-then-score", "score-then-average")


@dataclass(frozen=True)
class Window:
    start: int = 1995
    end: int = 2020
    min_years: int = 1


@dataclass(frozen=True)
class RunConfig:
    dataset: Optional[str] = None
    panel: Optional[str] = None
    mapping: ColumnMapping = FRASER_DEFAULT
    overrides: Mapping[str, str] = field(default_factory=dict)
    window: Window = Window()
    builtin_benchmarks: bool = True
    benchmarks_file: Optional[str] = None
    custom_benchmarks: tuple[Benchmark, ...] = ()
    derived_benchmarks: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    mode: Mode = Mode.FIXED_RANGE
    avg_order: str = "average-then-score"
    weights: Optional[tuple[float, ...]] = None
    dp: int = 2
    outputs: Mapping[str, str] = field(default_factory=dict)
    geometry: Optional[str] = None
    key_property: str = "ISO_A3"
    prefix: str = "qce_"
    breaks: Optional[tuple[float, ...]] = None

    def validate(self) -> "RunConfig":
        w = self.window
        if w.start > w.end:
            raise ConfigError(f"window start {w.start} is after end {w.end}")
        if w.min_years < 1:
            raise ConfigError("window.min_years must be at least 1")
        if self.dp < 0:
            raise ConfigError("dp must be nonnegative")
        if self.avg_order not in AVG_ORDERS:
            raise ConfigError(f"avg_order must be one of {', '.join(AVG_ORDERS)}")
        if self.weights is not None:
            try:
                wv = WeightVector(self.weights)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
            if len(wv) != 3:
                raise ConfigError(f"weights need 3 entries, got {len(wv)}")
        if self.breaks is not None:
            try:
                check_breaks(self.breaks)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        try:
            NameOverrides(self.overrides)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return self

    @property
    def weight_vector(self) -> Optional[WeightVector]:
        return WeightVector(self.weights) if self.weights is not None else None

    @property
    def name_overrides(self) -> NameOverrides:
        return NameOverrides(self.overrides)

    def replace(self, **changes: Any) -> "RunConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)


def _benchmark(key: str, entry: Any) -> Benchmark:
    if isinstance(entry, (list, tuple)):
        entry = {"coordinates": entry}
    if not isinstance(entry, Mapping) or "coordinates" not in entry:
        raise ConfigError(f"benchmark {key!r}: expected a mapping with 'coordinates'")
    name = str(entry.get("name", key))
    try:
        coords = tuple(float(c) for c in entry["coordinates"])
        position = FoundationVector(coords)
        weights = WeightVector(entry["weights"]) if entry.get("weights") is not None else None
        return Benchmark(name, position, weights)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"benchmark {key!r}: {exc}") from None


def load_benchmark_file(path: str) -> tuple[Benchmark, ...]:
    """A YAML mapping ``key -> {name, coordinates, weights}``."""
    data = _read_yaml(path)
    if not isinstance(data, Mapping):
        raise ConfigError(f"{path}: expected a mapping of benchmarks")
    return tuple(_benchmark(str(k), v) for k, v in data.items())


def _read_yaml(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        try:
            return yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            where = f"{path}:{mark.line + 1}:{mark.column + 1}" if mark else path
            raise ConfigError(f"{where}: invalid YAML") from None


_TOP_KEYS = {
    "dataset", "panel", "mapping", "overrides", "window", "mode", "avg_order",
    "weights", "dp", "benchmarks", "outputs", "geo",
}


def from_dict(data: Mapping, base_dir: str = ".") -> RunConfig:
    data = dict(data or {})
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")

    def path(p):
        if p is None:
            return None
        return p if os.path.isabs(p) else os.path.normpath(os.path.join(base_dir, p))

    kw: dict[str, Any] = {}
    kw["dataset"] = path(data.get("dataset"))
    kw["panel"] = path(data.get("panel"))
    if "mapping" in data:
        try:
            kw["mapping"] = ColumnMapping.from_dict(data["mapping"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"mapping: {exc}") from None
    kw["overrides"] = dict(data.get("overrides") or {})
    if "window" in data:
        try:
            kw["window"] = Window(**{k: int(v) for k, v in data["window"].items()})
        except (TypeError, ValueError, AttributeError) as exc:
            raise ConfigError(f"window: {exc}") from None
    if "mode" in data:
        try:
            kw["mode"] = Mode(data["mode"])
        except ValueError:
            raise ConfigError(f"mode must be one of {', '.join(m.value for m in Mode)}") from None
    if "avg_order" in data:
        kw["avg_order"] = data["avg_order"]
    if data.get("weights") is not None:
        kw["weights"] = tuple(float(w) for w in data["weights"])
    if "dp" in data:
        kw["dp"] = int(data["dp"])

    bm = data.get("benchmarks") or {}
    kw["builtin_benchmarks"] = bool(bm.get("builtin", True))
    kw["benchmarks_file"] = path(bm.get("file"))
    kw["custom_benchmarks"] = tuple(
        _benchmark(str(k), v) for k, v in (bm.get("custom") or {}).items()
    )
    derived = {}
    for name, entry in (bm.get("derive") or {}).items():
        countries = entry.get("countries") if isinstance(entry, Mapping) else entry
        if not countries:
            raise ConfigError(f"derived benchmark {name!r} lists no countries")
        derived[str(name)] = tuple(str(c) for c in countries)
    kw["derived_benchmarks"] = derived

    kw["outputs"] = {k: path(v) for k, v in (data.get("outputs") or {}).items()}
    geo = data.get("geo") or {}
    kw["geometry"] = path(geo.get("geometry"))
    if "key_property" in geo:
        kw["key_property"] = geo["key_property"]
    if "prefix" in geo:
        kw["prefix"] = geo["prefix"]
    if geo.get("breaks") is not None:
        kw["breaks"] = tuple(float(b) for b in geo["breaks"])
    return RunConfig(**kw).validate()


def load_config(path: Optional[str] = None) -> RunConfig:
    """Load ``path``, else ``$QCE_CONFIG``, else defaults."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return RunConfig()
    data = _read_yaml(path)
    if data is not None and not isinstance(data, Mapping):
        raise ConfigError(f"{path}: top level must be a mapping")
    return from_dict(data or {}, os.path.dirname(os.path.abspath(path)))
