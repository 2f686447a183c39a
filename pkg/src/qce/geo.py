"""Choropleth data: joining scores onto GeoJSON features by country code.

Numbers in the input document are carried through as their original text,
so coordinates come out byte-for-byte as they went in. Keys keep their input
order; injected properties are appended in benchmark order.
"""
from __future__ import annotations

import json
import os
import statistics
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence, Union

from .errors import ParseError
from .metrics import round_display
from .ranking import ClassificationReport


class RawNumber(str):
    """A JSON number kept as its source text."""


@dataclass(frozen=True)
class GeoJoinSpec:
    key_property: str = "ISO_A3"
    properties_prefix: str = "qce_"
    # None: quintiles of the observed scores; (): no class properties.
    class_breaks: Optional[tuple[float, ...]] = None
    dp: Optional[int] = None

    def __post_init__(self):
        if self.class_breaks is not None:
            breaks = tuple(float(b) for b in self.class_breaks)
            check_breaks(breaks)
            object.__setattr__(self, "class_breaks", breaks)


def check_breaks(breaks: Sequence[float]) -> None:
    for b in breaks:
        if not 0.0 <= b <= 1.0:
            raise ValueError(f"class break {b} outside [0, 1]")
    if any(a >= b for a, b in zip(breaks, breaks[1:])):
        raise ValueError(f"class breaks must be strictly ascending: {list(breaks)}")


def class_index(score: float, breaks: Sequence[float]) -> int:
    """Number of breaks at or below ``score``."""
    return sum(1 for b in breaks if b <= score)


def quintile_breaks(scores: Sequence[float]) -> tuple[float, ...]:
    if len(scores) < 2:
        return ()
    cuts = statistics.quantiles(scores, n=5, method="inclusive")
    out = []
    for c in cuts:
        c = min(1.0, max(0.0, c))
        if not out or c > out[-1]:
            out.append(c)
    return tuple(out)


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=RawNumber, parse_int=RawNumber)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None


def dumps(obj: Any) -> str:
    """Serialize with raw numbers verbatim; no whitespace changes inside arrays."""
    parts: list[str] = []

    def emit(o):
        if isinstance(o, RawNumber):
            parts.append(str(o))
        elif isinstance(o, str):
            parts.append(json.dumps(o, ensure_ascii=False))
        elif o is None or isinstance(o, bool):
            parts.append(json.dumps(o))
        elif isinstance(o, (int, float)):
            parts.append(json.dumps(o, allow_nan=False))
        elif isinstance(o, dict):
            parts.append("{")
            for i, (k, v) in enumerate(o.items()):
                if i:
                    parts.append(", ")
                parts.append(json.dumps(str(k), ensure_ascii=False))
                parts.append(": ")
                emit(v)
            parts.append("}")
        elif isinstance(o, (list, tuple)):
            parts.append("[")
            for i, v in enumerate(o):
                if i:
                    parts.append(", ")
                emit(v)
            parts.append("]")
        else:
            raise TypeError(f"cannot serialize {type(o).__name__}")

    emit(obj)
    return "".join(parts)


def _validate(doc: Any) -> list:
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise ParseError("expected a GeoJSON FeatureCollection", "$")
    features = doc.get("features")
    if not isinstance(features, list):
        raise ParseError("'features' must be an array", "$.features")
    for i, feat in enumerate(features):
        where = f"$.features[{i}]"
        if not isinstance(feat, dict) or feat.get("type") != "Feature":
            raise ParseError("expected a Feature object", where)
        props = feat.get("properties")
        if props is not None and not isinstance(props, dict):
            raise ParseError("'properties' must be an object or null", f"{where}.properties")
    return features


@dataclass
class MergeResult:
    geojson: dict
    matched: list[str] = field(default_factory=list)
    unmatched_features: list[str] = field(default_factory=list)
    unmatched_countries: list[str] = field(default_factory=list)

    @property
    def unmatched(self) -> list[str]:
        return self.unmatched_features + self.unmatched_countries

    def report_lines(self) -> list[str]:
        lines = [f"{key}: feature has no score" for key in self.unmatched_features]
        lines += [f"{cid}: no feature in geometry" for cid in self.unmatched_countries]
        return lines


def merge_geojson(
    report: ClassificationReport,
    geometry: Union[dict, str],
    spec: GeoJoinSpec = GeoJoinSpec(),
) -> MergeResult:
    """Copy each country's scores onto the feature whose key property matches.

    ``geometry`` is a document from :func:`loads` (or its text). The input
    document is not modified. Features lacking the key property are listed
    as unmatched under ``<feature i>``.
    """
    doc = loads(geometry) if isinstance(geometry, str) else geometry
    features = _validate(doc)

    breaks: dict[str, tuple[float, ...]] = {}
    for name in report.benchmarks:
        if spec.class_breaks is None:
            breaks[name] = quintile_breaks(list(report.column(name).values()))
        else:
            breaks[name] = spec.class_breaks

    out_features = []
    result = MergeResult(geojson={})
    seen = set()
    for i, feat in enumerate(features):
        props = feat.get("properties") or {}
        key = props.get(spec.key_property)
        row = report.scores.get(str(key)) if key is not None else None
        if row is None:
            result.unmatched_features.append(f"<feature {i}>" if key is None else str(key))
            out_features.append(feat)
            continue
        seen.add(str(key))
        result.matched.append(str(key))
        new_props = dict(props)
        for name in report.benchmarks:
            value = row[name]
            if spec.dp is not None:
                value = float(round_display(value, spec.dp))
            new_props[spec.properties_prefix + name] = value
            if breaks[name]:
                new_props[f"{spec.properties_prefix}{name}_class"] = class_index(row[name], breaks[name])
        new_feat = dict(feat)
        new_feat["properties"] = new_props
        out_features.append(new_feat)

    result.unmatched_countries = [cid for cid in report.countries() if cid not in seen]
    merged = dict(doc)
    merged["features"] = out_features
    result.geojson = merged
    return result


def read_geojson(path: Union[str, os.PathLike]) -> dict:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return loads(text)
    except ParseError as exc:
        raise ParseError(exc.message, f"{os.fspath(path)}:{exc.location}") from None


def write_geojson(doc: dict, path: Union[str, os.PathLike]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(doc))
        fh.write("\n")
