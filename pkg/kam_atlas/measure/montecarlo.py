from __future__ import annotations
import logging
from concurrent import futures
from enum import Enum
from typing import Callable, Optional, Sequence
import numpy as np
from attr import define, field
from kam_atlas.errors import DomainError
from kam_atlas.resonance.covering import CoveringParams, ZoneTag, classify_many

MIN_SAMPLES = 10 ** 3
CHUNK_SIZE = 2 ** 18

Predicate = Callable[[np.ndarray], np.ndarray]


class MeasureMethod(Enum):
    MONTE_CARLO = "monte_carlo"
    GRID = "grid"


@define(frozen=True)
class MeasureEstimate:
    """
    Measure of a set inside a box. For hit-or-miss sampling the standard error is
    √(p(1 − p)/N)·volume; grid estimates report zero.
    """

    value: float = field(kw_only=True)
    stderr: float = field(kw_only=True)
    samples: int = field(kw_only=True)
    hits: int = field(kw_only=True)
    volume: float = field(kw_only=True)
    method: MeasureMethod = field(kw_only=True)
    seed: Optional[int] = field(default=None, kw_only=True)

    @property
    def fraction(self) -> float:
        return self.hits / self.samples

    def interval(self, sigmas: float = 3.0) -> tuple[float, float]:
        return max(self.value - sigmas * self.stderr, 0.0), min(self.value + sigmas * self.stderr, self.volume)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "stderr": self.stderr,
            "samples": self.samples,
            "hits": self.hits,
            "volume": self.volume,
            "method": self.method.value,
            "seed": self.seed
        }


def _box(box: Sequence[Sequence[float]]) -> tuple[np.ndarray, np.ndarray]:
    box = np.asarray(box, dtype=float)

    if box.ndim != 2 or box.shape[1] != 2 or np.any(box[:, 1] <= box[:, 0]):
        raise DomainError("box must be a list of (low, high) pairs with low < high")

    return box[:, 0], box[:, 1]


def _draw(low: np.ndarray, high: np.ndarray, size: int, stream: np.random.SeedSequence) -> np.ndarray:
    generator = np.random.Generator(np.random.Philox(stream))

    return generator.uniform(low, high, size=(size, low.size))


def _tally(counter: Callable[[np.ndarray], np.ndarray], low, high, samples: int, seed: int, workers: int, chunk: int) -> np.ndarray:
    """Sums counter(points) over chunks; chunk i draws from the i-th child of SeedSequence(seed)."""
    sizes = [chunk] * (samples // chunk) + ([samples % chunk] if samples % chunk else [])
    streams = np.random.SeedSequence(seed).spawn(len(sizes))

    def job(size: int, stream: np.random.SeedSequence) -> np.ndarray:
        return np.asarray(counter(_draw(low, high, size, stream)), dtype=np.int64)

    if workers > 1:
        with futures.ThreadPoolExecutor(max_workers=workers) as executor:
            counts = list(executor.map(job, sizes, streams))
    else:
        counts = [job(size, stream) for size, stream in zip(sizes, streams)]

    return np.sum(counts, axis=0)


def mc_measure(
    predicate: Predicate,
    box: Sequence[Sequence[float]],
    samples: int,
    seed: int,
    workers: int = 1,
    chunk: int = CHUNK_SIZE
) -> MeasureEstimate:
    """
    Hit-or-miss estimate with a Philox generator. The estimate depends on (seed, samples, chunk) only, never
    on the number of workers.
    """
    if samples < MIN_SAMPLES:
        raise DomainError(f"at least {MIN_SAMPLES} samples are required")

    low, high = _box(box)
    volume = float(np.prod(high - low))
    hits = int(_tally(lambda points: [np.count_nonzero(predicate(points))], low, high, samples, seed, workers, chunk)[0])

    p = hits / samples

    return MeasureEstimate(
        value=volume * p,
        stderr=volume * float(np.sqrt(p * (1 - p) / samples)),
        samples=samples,
        hits=hits,
        volume=volume,
        method=MeasureMethod.MONTE_CARLO,
        seed=seed
    )


def grid_measure(predicate: Predicate, box: Sequence[Sequence[float]], points_per_axis: int) -> MeasureEstimate:
    """Midpoint rule on a regular grid with points_per_axis cells per side."""
    low, high = _box(box)
    axes = [lo + (hi - lo) * (np.arange(points_per_axis) + 0.5) / points_per_axis for lo, hi in zip(low, high)]
    points = np.stack([a.ravel() for a in np.meshgrid(*axes, indexing="ij")], axis=1)
    volume = float(np.prod(high - low))
    hits = int(np.count_nonzero(predicate(points)))

    return MeasureEstimate(
        value=volume * hits / len(points),
        stderr=0.0,
        samples=len(points),
        hits=hits,
        volume=volume,
        method=MeasureMethod.GRID
    )


def zone_predicate(params: CoveringParams, tag: ZoneTag) -> Predicate:
    def predicate(points: np.ndarray) -> np.ndarray:
        inside = np.sum(points ** 2, axis=1) < 1
        result = np.zeros(len(points), dtype=bool)

        if inside.any():
            tags, _ = classify_many(points[inside], params)
            result[inside] = tags == tag.value

        return result

    return predicate


def zone_measure(
    params: CoveringParams,
    tag: ZoneTag = ZoneTag.DOUBLY_RESONANT,
    samples: int = 10 ** 6,
    seed: int = 0,
    workers: int = 1,
    radius: float = 1.0
) -> MeasureEstimate:
    """
    Measure of one covering zone inside the unit ball. `radius` shrinks the sampling box [−radius, radius]ⁿ
    when the zone is known to sit near the origin.
    """
    params.require_small_alpha()

    if not 0 < radius <= 1:
        raise DomainError("radius must lie in (0, 1]")

    logging.info(f"measuring {tag.name} for ε = {params.epsilon:.3e} with {samples} samples")

    return mc_measure(zone_predicate(params, tag), [(-radius, radius)] * params.n, samples, seed, workers)


def zone_census(
    params: CoveringParams,
    samples: int = 2 ** 18,
    seed: int = 0,
    workers: int = 1,
    chunk: int = CHUNK_SIZE
) -> dict[ZoneTag, MeasureEstimate]:
    """All three zone measures inside the unit ball from one stream of samples in [−1, 1]ⁿ."""
    params.require_small_alpha()

    if samples < MIN_SAMPLES:
        raise DomainError(f"at least {MIN_SAMPLES} samples are required")

    def counter(points: np.ndarray) -> np.ndarray:
        inside = np.sum(points ** 2, axis=1) < 1

        if not inside.any():
            return np.zeros(len(ZoneTag), dtype=np.int64)

        tags, _ = classify_many(points[inside], params)

        return np.bincount(tags, minlength=len(ZoneTag))

    low, high = _box([(-1.0, 1.0)] * params.n)
    volume = float(np.prod(high - low))
    counts = _tally(counter, low, high, samples, seed, workers, chunk)
    census = {}

    for tag in ZoneTag:
        hits = int(counts[tag.value])
        p = hits / samples
        census[tag] = MeasureEstimate(
            value=volume * p,
            stderr=volume * float(np.sqrt(p * (1 - p) / samples)),
            samples=samples,
            hits=hits,
            volume=volume,
            method=MeasureMethod.MONTE_CARLO,
            seed=seed
        )

    return census
