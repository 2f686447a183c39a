"""Foundation vectors, the L1 distance, and the similarity indices.

A country's economic system is a point in a box of foundation scores
(market organization, private ownership, small government; each 0-10 by
default). Similarity to a benchmark system is one minus a normalized L1
distance. Two normalizations are offered:

* ``fixed-range``: summed (weighted) distances over summed range widths.
  This is the canonical form and yields CapSI, ComSI and SocSI.
* ``benchmark-relative``: each distance divided by the largest distance
  attainable from the benchmark in that dimension, then averaged.

Both agree when the benchmark sits on a corner of the box and weights
are equal.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DegenerateDimension, DimensionMismatch, ScaleError, WeightError

FOUNDATIONS = ("mo", "po", "sg")


class Mode(str, enum.Enum):
    FIXED_RANGE = "fixed-range"
    BENCHMARK_RELATIVE = "benchmark-relative"


@dataclass(frozen=True)
class FoundationScale:
    """Closed per-dimension score ranges."""

    bounds: tuple[tuple[float, float], ...] = ((0.0, 10.0),) * 3

    def __post_init__(self):
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        if not bounds:
            raise ScaleError("a scale needs at least one dimension")
        for i, (lo, hi) in enumerate(bounds):
            if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
                raise ScaleError(f"dimension {i}: need min < max, got [{lo}, {hi}]")
        object.__setattr__(self, "bounds", bounds)

    @classmethod
    def uniform(cls, n: int, lo: float = 0.0, hi: float = 10.0) -> "FoundationScale":
        return cls(((lo, hi),) * n)

    @property
    def dims(self) -> int:
        return len(self.bounds)

    @property
    def ranges(self) -> tuple[float, ...]:
        return tuple(hi - lo for lo, hi in self.bounds)

    def check(self, scores: Sequence[float], what: str = "vector") -> None:
        if len(scores) != self.dims:
            raise DimensionMismatch(
                f"{what} has {len(scores)} dimensions, scale has {self.dims}"
            )
        for i, (s, (lo, hi)) in enumerate(zip(scores, self.bounds)):
            if not (lo <= s <= hi):
                raise ScaleError(f"{what}: score {s!r} in dimension {i} outside [{lo}, {hi}]")

    def corners(self, position: Sequence[float]) -> bool:
        """True when every coordinate of ``position`` sits on a bound."""
        return all(p == lo or p == hi for p, (lo, hi) in zip(position, self.bounds))


DEFAULT_SCALE = FoundationScale()


@dataclass(frozen=True)
class FoundationVector:
    scores: tuple[float, ...]
    scale: FoundationScale = DEFAULT_SCALE

    def __post_init__(self):
        scores = tuple(float(s) for s in self.scores)
        if any(math.isnan(s) for s in scores):
            raise ScaleError("scores must not be NaN")
        self.scale.check(scores)
        object.__setattr__(self, "scores", scores)

    def __len__(self):
        return len(self.scores)

    def __iter__(self):
        return iter(self.scores)

    def __getitem__(self, i):
        return self.scores[i]

    @property
    def mo(self) -> float:
        return self.scores[0]

    @property
    def po(self) -> float:
        return self.scores[1]

    @property
    def sg(self) -> float:
        return self.scores[2]


def vector(*scores: float, scale: FoundationScale = DEFAULT_SCALE) -> FoundationVector:
    """Shorthand: ``vector(7.69, 6.92, 5.17)``."""
    if len(scores) == 1 and not isinstance(scores[0], (int, float)):
        scores = tuple(scores[0])
    return FoundationVector(tuple(scores), scale)


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[float, ...]

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        if not weights:
            raise WeightError("weights must not be empty")
        if any(not math.isfinite(w) or w < 0 for w in weights):
            raise WeightError(f"weights must be finite and nonnegative, got {weights}")
        if sum(weights) <= 0:
            raise WeightError("at least one weight must be positive")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def equal(cls, n: int = 3) -> "WeightVector":
        return cls((1.0,) * n)

    def __len__(self):
        return len(self.weights)

    @property
    def is_equal(self) -> bool:
        return len(set(self.weights)) == 1

    def relative(self) -> tuple[float, ...]:
        """Weights divided by the largest one; identical for proportional vectors."""
        top = max(self.weights)
        return tuple(w / top for w in self.weights)

    def normalized(self) -> tuple[float, ...]:
        total = math.fsum(self.weights)
        return tuple(w / total for w in self.weights)


@dataclass(frozen=True)
class Benchmark:
    """A named reference position. ``weights`` overrides run-wide weights."""

    name: str
    position: FoundationVector
    weights: Optional[WeightVector] = None

    def __post_init__(self):
        if not self.name or not self.name.strip():
            raise ValueError("benchmark name must be nonempty")
        if not isinstance(self.position, FoundationVector):
            object.__setattr__(self, "position", FoundationVector(tuple(self.position)))
        if self.weights is not None and len(self.weights) != len(self.position):
            raise WeightError(
                f"benchmark {self.name!r}: {len(self.weights)} weights for "
                f"{len(self.position)} dimensions"
            )


@dataclass(frozen=True)
class DimensionDistances:
    per_dimension: tuple[float, ...]
    aggregate: float


def l1_distance(x: FoundationVector, y: FoundationVector) -> DimensionDistances:
    if len(x) != len(y):
        raise DimensionMismatch(f"cannot compare {len(x)}-d and {len(y)}-d vectors")
    d = tuple(abs(a - b) for a, b in zip(x, y))
    return DimensionDistances(d, math.fsum(d))


def _prepare(x, b, scale, weights):
    position = b.position if isinstance(b, Benchmark) else b
    if len(x) != scale.dims or len(position) != scale.dims:
        raise DimensionMismatch(
            f"vector ({len(x)}), benchmark ({len(position)}) and scale ({scale.dims}) disagree"
        )
    scale.check(x.scores)
    scale.check(position.scores, "benchmark")
    if weights is None:
        weights = WeightVector.equal(scale.dims)
    elif len(weights) != scale.dims:
        raise DimensionMismatch(f"{len(weights)} weights for {scale.dims} dimensions")
    return position, weights


def _clamp(value: float) -> float:
    return min(1.0, max(0.0, value))


def similarity_fixed_range(
    x: FoundationVector,
    b: Benchmark,
    scale: FoundationScale = DEFAULT_SCALE,
    weights: Optional[WeightVector] = None,
) -> float:
    """``1 - sum(w*|x-b|) / sum(w*range)``; with defaults, ``1 - D/30``."""
    position, weights = _prepare(x, b, scale, weights)
    d = l1_distance(x, position).per_dimension
    w = weights.relative()
    num = math.fsum(wi * di for wi, di in zip(w, d))
    den = math.fsum(wi * ri for wi, ri in zip(w, scale.ranges))
    return _clamp(1.0 - num / den)


def max_attainable_distance(position: FoundationVector, scale: FoundationScale) -> tuple[float, ...]:
    return tuple(max(p - lo, hi - p) for p, (lo, hi) in zip(position, scale.bounds))


def similarity_benchmark_relative(
    x: FoundationVector,
    b: Benchmark,
    scale: FoundationScale = DEFAULT_SCALE,
    weights: Optional[WeightVector] = None,
) -> float:
    """``1 - sum(w_norm * d_i / max d_i)`` with ``max d_i`` the farthest point of the range."""
    position, weights = _prepare(x, b, scale, weights)
    d = l1_distance(x, position).per_dimension
    reach = max_attainable_distance(position, scale)
    for i, r in enumerate(reach):
        if r <= 0:
            raise DegenerateDimension(f"dimension {i} has zero attainable distance")
    w = weights.relative()
    total = math.fsum(w)
    wn = tuple(wi / total for wi in w)
    return _clamp(1.0 - math.fsum(wi * di / ri for wi, di, ri in zip(wn, d, reach)))


def similarity(
    x: FoundationVector,
    b: Benchmark,
    scale: FoundationScale = DEFAULT_SCALE,
    weights: Optional[WeightVector] = None,
    mode: Mode | str = Mode.FIXED_RANGE,
) -> float:
    if Mode(mode) is Mode.BENCHMARK_RELATIVE:
        return similarity_benchmark_relative(x, b, scale, weights)
    return similarity_fixed_range(x, b, scale, weights)


CAPITALISM = Benchmark("capitalism", FoundationVector((10.0, 10.0, 10.0)))
COMMUNISM = Benchmark("communism", FoundationVector((0.0, 0.0, 0.0)))
# Nordic means published to two decimals; used verbatim.
SCANDINAVIAN_SOCIALISM = Benchmark("scandinavian_socialism", FoundationVector((7.83, 7.26, 5.28)))


def capsi(x: FoundationVector) -> float:
    return similarity_fixed_range(x, CAPITALISM)


def comsi(x: FoundationVector) -> float:
    return similarity_fixed_range(x, COMMUNISM)


def socsi(x: FoundationVector, b: Benchmark = SCANDINAVIAN_SOCIALISM) -> float:
    return similarity_fixed_range(x, b)


def round_display(value: float, dp: int = 2) -> Decimal:
    """Half-away-from-zero rounding of the shortest decimal form of ``value``."""
    q = Decimal(1).scaleb(-dp)
    return Decimal(repr(float(value))).quantize(q, rounding=ROUND_HALF_UP)


def format_score(value: float, dp: Optional[int] = 2) -> str:
    if dp is None:
        return repr(float(value))
    return str(round_display(value, dp))


def mean_vector(vectors: Iterable[FoundationVector]) -> FoundationVector:
    vectors = list(vectors)
    scale = vectors[0].scale
    n = len(vectors)
    for v in vectors:
        if v.scale != scale:
            raise DimensionMismatch("vectors on different scales")
    # Exact mean of the shortest decimal forms, rounded once at the end.
    cols = zip(*(v.scores for v in vectors))
    means = []
    for (lo, hi), col in zip(scale.bounds, cols):
        m = float(sum(Fraction(repr(s)) for s in col) / n)
        means.append(min(hi, max(lo, m)))
    return FoundationVector(tuple(means), scale)
