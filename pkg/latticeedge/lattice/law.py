"""Lattice laws and their moments"""

import math
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Mapping, Tuple

import numpy as np

from ..errors import InvalidModelError

PROBABILITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PopulationMoments:
    """Exact moments of one population law"""

    mean: float
    variance: float
    mu3: float
    mu4: float

    def __post_init__(self):
        if not self.variance > 0:
            raise InvalidModelError(f"variance must be positive, got {self.variance}")
        # mu4 >= variance**2 up to rounding
        if self.mu4 < self.variance**2 * (1 - 1e-12):
            raise InvalidModelError("fourth central moment below variance squared")

    @property
    def sigma(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class LatticeLaw:
    """A finite law on offset + nu * span with a maximal span.

    Build through :func:`make_lattice_law` or :func:`bernoulli`; the
    constructor only checks invariants and never renormalizes.
    """

    offset: float
    span: float
    indices: Tuple[int, ...]
    probs: Tuple[float, ...]

    def __post_init__(self):
        if not (math.isfinite(self.span) and self.span > 0):
            raise InvalidModelError(f"span must be positive, got {self.span}")
        if len(self.indices) != len(self.probs):
            raise InvalidModelError("indices and probabilities differ in length")
        if len(self.indices) < 2:
            raise InvalidModelError("degenerate law: at least two atoms required")
        if list(self.indices) != sorted(set(self.indices)):
            raise InvalidModelError("indices must be strictly increasing")
        if any(p <= 0 for p in self.probs):
            raise InvalidModelError("atom probabilities must be positive")
        if abs(math.fsum(self.probs) - 1.0) > PROBABILITY_TOLERANCE:
            raise InvalidModelError("probabilities must sum to 1")
        differences = [nu - self.indices[0] for nu in self.indices[1:]]
        if reduce(math.gcd, differences, 0) != 1:
            raise InvalidModelError("span is not maximal")

    @property
    def index_array(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=np.int64)

    @property
    def prob_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=np.float64)

    @property
    def support(self) -> np.ndarray:
        return self.offset + self.span * self.index_array

    @property
    def index_range(self) -> int:
        return self.indices[-1] - self.indices[0]

    def pmf(self) -> Dict[float, float]:
        return {
            float(x): p for x, p in zip(self.support.tolist(), self.probs)
        }


def make_lattice_law(
    offset: float, span: float, pmf: Mapping[int, float]
) -> LatticeLaw:
    """Build a law on offset + nu * span, reducing the span to the maximal one.

    Zero-probability atoms are dropped. The smallest remaining index becomes
    index 0 (the offset absorbs it) and the indices are divided by their gcd
    while the span is multiplied by it.
    """
    if not (math.isfinite(span) and span > 0):
        raise InvalidModelError(f"span must be positive, got {span}")
    if not math.isfinite(offset):
        raise InvalidModelError(f"offset must be finite, got {offset}")

    items = []
    for nu, p in pmf.items():
        p = float(p)
        if not math.isfinite(p) or p < 0:
            raise InvalidModelError(f"negative or non-finite probability {p} at {nu}")
        items.append((int(nu), p))
    if abs(math.fsum(p for _, p in items) - 1.0) > PROBABILITY_TOLERANCE:
        raise InvalidModelError("probabilities must sum to 1 within 1e-12")

    atoms = sorted((nu, p) for nu, p in items if p > 0)
    if len(atoms) < 2:
        raise InvalidModelError("degenerate law: at least two atoms required")

    low = atoms[0][0]
    shifted = [nu - low for nu, _ in atoms]
    g = reduce(math.gcd, shifted, 0)
    return LatticeLaw(
        offset=offset + low * span,
        span=span * g,
        indices=tuple(nu // g for nu in shifted),
        probs=tuple(p for _, p in atoms),
    )


def bernoulli(p: float, success_prob: bool = False) -> LatticeLaw:
    """Two-point law on {0, 1}.

    By default ``p`` is P(X = 0); ``success_prob=True`` reads it as P(X = 1).
    """
    if not 0.0 < p < 1.0:
        raise InvalidModelError(f"Bernoulli parameter must lie in (0, 1), got {p}")
    p_zero = 1.0 - p if success_prob else p
    return LatticeLaw(
        offset=0.0, span=1.0, indices=(0, 1), probs=(p_zero, 1.0 - p_zero)
    )


def moments(law: LatticeLaw) -> PopulationMoments:
    """Mean, variance and third/fourth central moments by direct summation"""
    support = law.support.tolist()
    probs = law.probs
    mean = math.fsum(p * x for x, p in zip(support, probs))
    centered = [x - mean for x in support]
    return PopulationMoments(
        mean=mean,
        variance=math.fsum(p * d * d for d, p in zip(centered, probs)),
        mu3=math.fsum(p * d**3 for d, p in zip(centered, probs)),
        mu4=math.fsum(p * d**4 for d, p in zip(centered, probs)),
    )


def scale_law(law: LatticeLaw, weight: float) -> LatticeLaw:
    """Law of weight * X; a negative weight reflects the lattice."""
    if weight == 0 or not math.isfinite(weight):
        raise InvalidModelError("weight must be finite and nonzero")
    if weight > 0:
        return LatticeLaw(
            offset=law.offset * weight,
            span=law.span * weight,
            indices=law.indices,
            probs=law.probs,
        )
    return scale_law(reflect_law(law), -weight)


def reflect_law(law: LatticeLaw) -> LatticeLaw:
    """Law of -X, re-indexed so the smallest index is 0"""
    top = law.indices[-1]
    pairs = sorted((top - nu, p) for nu, p in zip(law.indices, law.probs))
    return LatticeLaw(
        offset=-(law.offset + top * law.span),
        span=law.span,
        indices=tuple(nu for nu, _ in pairs),
        probs=tuple(p for _, p in pairs),
    )
