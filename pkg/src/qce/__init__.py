"""Distance-based similarity of national economic systems to benchmark systems."""

__version__ = "0.1.0"

from .benchmarks import BenchmarkSet, builtin_benchmarks, derive_benchmark
from .countries import NameOverrides, Unresolved, normalize_country_name
from .errors import QCEError
from .geo import GeoJoinSpec, merge_geojson
from .ingest import ColumnMapping, CountryPanel, FoundationColumn, average_period, parse_dataset
from .metrics import (
    Benchmark,
    DimensionDistances,
    FoundationScale,
    FoundationVector,
    Mode,
    WeightVector,
    capsi,
    comsi,
    l1_distance,
    similarity,
    similarity_benchmark_relative,
    similarity_fixed_range,
    socsi,
    vector,
)
from .ranking import ClassificationReport, RankTable, export_scores_csv, nearest_benchmark, score_all, top_n

__all__ = [
    "Benchmark", "BenchmarkSet", "ClassificationReport", "ColumnMapping", "CountryPanel",
    "DimensionDistances", "FoundationColumn", "FoundationScale", "FoundationVector",
    "GeoJoinSpec", "Mode", "NameOverrides", "QCEError", "RankTable", "Unresolved",
    "WeightVector", "average_period", "builtin_benchmarks", "capsi", "comsi",
    "derive_benchmark", "export_scores_csv", "l1_distance", "merge_geojson",
    "nearest_benchmark", "normalize_country_name", "parse_dataset", "score_all",
    "similarity", "similarity_benchmark_relative", "similarity_fixed_range", "socsi",
    "top_n", "vector",
]
