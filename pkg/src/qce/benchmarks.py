"""Benchmark sets: the three built-in systems plus empirically derived ones."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import DimensionMismatch, EmptyClusterError, UnknownBenchmark
from .metrics import (
    CAPITALISM,
    COMMUNISM,
    DEFAULT_SCALE,
    SCANDINAVIAN_SOCIALISM,
    Benchmark,
    FoundationScale,
    FoundationVector,
    WeightVector,
    mean_vector,
)

# Short names accepted wherever a benchmark is looked up by name.
ALIASES = {
    "capsi": "capitalism",
    "comsi": "communism",
    "socsi": "scandinavian_socialism",
    "scandinavian": "scandinavian_socialism",
}


@dataclass(frozen=True)
class BenchmarkSet:
    benchmarks: tuple[Benchmark, ...]
    scale: FoundationScale = DEFAULT_SCALE
    label: str = field(default="custom", compare=False)

    def __post_init__(self):
        benchmarks = tuple(self.benchmarks)
        seen = set()
        for b in benchmarks:
            if b.name in seen:
                raise ValueError(f"duplicate benchmark name {b.name!r}")
            seen.add(b.name)
            if len(b.position) != self.scale.dims:
                raise DimensionMismatch(f"benchmark {b.name!r} does not match the scale")
            self.scale.check(b.position.scores, f"benchmark {b.name!r}")
        object.__setattr__(self, "benchmarks", benchmarks)

    def __iter__(self) -> Iterator[Benchmark]:
        return iter(self.benchmarks)

    def __len__(self):
        return len(self.benchmarks)

    @property
    def names(self) -> list[str]:
        return [b.name for b in self.benchmarks]

    def resolve(self, name: str) -> str:
        if name in self.names:
            return name
        alias = ALIASES.get(name.lower())
        if alias in self.names:
            return alias
        raise UnknownBenchmark(
            f"unknown benchmark {name!r}; known: {', '.join(self.names)}"
        )

    def get(self, name: str) -> Benchmark:
        name = self.resolve(name)
        return next(b for b in self.benchmarks if b.name == name)

    def extended(self, extra: Iterable[Benchmark], label: Optional[str] = None) -> "BenchmarkSet":
        """Append ``extra``; an extra benchmark replaces a same-named one in place."""
        extra = list(extra)
        by_name = {b.name: b for b in extra}
        merged = [by_name.pop(b.name, b) for b in self.benchmarks]
        merged.extend(b for b in extra if b.name in by_name)
        return BenchmarkSet(tuple(merged), self.scale, label or self.label)


def builtin_benchmarks() -> BenchmarkSet:
    return BenchmarkSet((CAPITALISM, COMMUNISM, SCANDINAVIAN_SOCIALISM), DEFAULT_SCALE, "builtin")


def derive_benchmark(
    name: str,
    vectors: Iterable[FoundationVector],
    weights: Optional[WeightVector] = None,
) -> Benchmark:
    """Benchmark at the componentwise mean of ``vectors`` (full precision)."""
    vectors = list(vectors)
    if not vectors:
        raise EmptyClusterError(f"cannot derive benchmark {name!r} from no vectors")
    return Benchmark(name, mean_vector(vectors), weights)
