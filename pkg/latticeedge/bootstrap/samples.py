"""Observed samples stored as lattice indices"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidModelError
from ..lattice import MeanSumModel

LATTICE_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class PopulationSample:
    """Observations offset + span * index from one population"""

    offset: float
    span: float
    indices: np.ndarray

    def __post_init__(self):
        indices = np.asarray(self.indices, dtype=np.int64)
        if indices.ndim != 1 or indices.size == 0:
            raise InvalidModelError("each sample must be a nonempty 1-D array")
        if not self.span > 0:
            raise InvalidModelError(f"span must be positive, got {self.span}")
        object.__setattr__(self, "indices", indices)

    @property
    def n(self) -> int:
        return int(self.indices.size)

    @property
    def values(self) -> np.ndarray:
        return self.offset + self.span * self.indices.astype(np.float64)

    @property
    def index_sum(self) -> int:
        return int(self.indices.sum())

    @property
    def mean(self) -> float:
        return self.offset + self.span * self.index_sum / self.n

    def distinct(self) -> Tuple[np.ndarray, np.ndarray]:
        """Distinct indices and their counts"""
        return np.unique(self.indices, return_counts=True)

    @property
    def is_degenerate(self) -> bool:
        return bool(np.all(self.indices == self.indices[0]))


@dataclass(frozen=True, eq=False)
class SampleSet:
    samples: Tuple[PopulationSample, ...]

    def __post_init__(self):
        if len(self.samples) < 1:
            raise InvalidModelError("at least one population sample is required")

    @property
    def k(self) -> int:
        return len(self.samples)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(s.n for s in self.samples)

    @property
    def statistic(self) -> float:
        """S = sum of the sample means"""
        return math.fsum(s.mean for s in self.samples)

    @classmethod
    def draw(cls, model: MeanSumModel, rng: np.random.Generator) -> "SampleSet":
        """One dataset with n_j draws from each population law"""
        samples = []
        for population in model.populations:
            law = population.law
            idx = rng.choice(law.index_array, size=population.n, p=law.prob_array)
            samples.append(PopulationSample(law.offset, law.span, idx))
        return cls(tuple(samples))

    @classmethod
    def from_values(
        cls,
        values: Sequence[Sequence[float]],
        lattices: Optional[Sequence[Tuple[float, float]]] = None,
    ) -> "SampleSet":
        """Samples from raw values.

        `lattices` gives (offset, span) per population; when omitted the
        smallest value is the offset and the span is the gcd of the gaps.
        """
        if lattices is not None and len(lattices) != len(values):
            raise InvalidModelError("one lattice per population is required")
        samples = []
        for j, raw in enumerate(values):
            arr = np.asarray(raw, dtype=np.float64)
            if arr.size == 0:
                raise InvalidModelError(f"sample {j} is empty")
            if lattices is None:
                offset, span = float(arr.min()), _infer_span(arr)
            else:
                offset, span = lattices[j]
            idx = np.rint((arr - offset) / span)
            fitted = offset + span * idx
            scale = np.maximum(1.0, np.abs(arr))
            if np.any(np.abs(fitted - arr) > LATTICE_TOLERANCE * scale):
                raise InvalidModelError(f"sample {j} does not lie on its lattice")
            samples.append(PopulationSample(offset, span, idx.astype(np.int64)))
        return cls(tuple(samples))


def _infer_span(values: np.ndarray) -> float:
    gaps = np.unique(values - values.min())
    gaps = gaps[gaps > 0]
    if gaps.size == 0:
        return 1.0
    base = float(gaps[0])
    ratios = [Fraction(float(g) / base).limit_denominator(10**6) for g in gaps]
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (r.denominator for r in ratios))
    ints = [int(r * lcm) for r in ratios]
    return base * reduce(math.gcd, ints, 0) / lcm
