"""Exact law of S by direct convolution"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config import oracle_budget
from ..errors import InvalidModelError, OracleInfeasibleError
from .model import MeanSumModel

logger = logging.getLogger(__name__)

MASS_TOLERANCE = 1e-10
MERGE_TOLERANCE = 1e-12
THRESHOLD_TOLERANCE = 1e-12
_MAX_DENOMINATOR = 10**6
_MAX_KEY = 2**62


@dataclass(frozen=True, eq=False)
class DiscreteCdf:
    """Finite law on a strictly increasing support with a cumulative cache"""

    support: np.ndarray
    probs: np.ndarray
    _cumulative: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        support = np.ascontiguousarray(self.support, dtype=np.float64)
        probs = np.ascontiguousarray(self.probs, dtype=np.float64)
        if support.ndim != 1 or support.shape != probs.shape or support.size == 0:
            raise InvalidModelError(
                "support and probabilities must be equal-length 1-D arrays"
            )
        if np.any(np.diff(support) <= 0):
            raise InvalidModelError("support must be strictly increasing")
        if np.any(probs < 0):
            raise InvalidModelError("probabilities must be nonnegative")
        if abs(math.fsum(probs.tolist()) - 1.0) > MASS_TOLERANCE:
            raise InvalidModelError("probabilities must sum to 1 within 1e-10")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "_cumulative", np.cumsum(probs))

    def __len__(self) -> int:
        return int(self.support.size)

    @property
    def atoms(self) -> List[Tuple[float, float]]:
        return list(zip(self.support.tolist(), self.probs.tolist()))

    def pmf(self) -> np.ndarray:
        return self.probs.copy()

    def cdf(self, s: float) -> float:
        """P(S <= s), counting atoms within 1e-12 relative of s"""
        if s == math.inf:
            return 1.0
        if s == -math.inf:
            return 0.0
        threshold = s + THRESHOLD_TOLERANCE * max(1.0, abs(s))
        idx = int(np.searchsorted(self.support, threshold, side="right"))
        if idx == 0:
            return 0.0
        if idx >= self.support.size:
            return 1.0
        return float(min(1.0, self._cumulative[idx - 1]))

    def mean(self) -> float:
        return math.fsum((self.support * self.probs).tolist())

    def variance(self) -> float:
        d = self.support - self.mean()
        return math.fsum((d * d * self.probs).tolist())

    def third_central_moment(self) -> float:
        d = self.support - self.mean()
        return math.fsum((d**3 * self.probs).tolist())


def self_convolve(probs: np.ndarray, times: int) -> np.ndarray:
    """Dense pmf of the sum of `times` iid copies, by repeated squaring"""
    if times < 1:
        raise InvalidModelError(f"times must be >= 1, got {times}")
    base = np.asarray(probs, dtype=np.float64)
    acc: Optional[np.ndarray] = None
    while times > 0:
        if times & 1:
            acc = base if acc is None else np.convolve(acc, base)
        times >>= 1
        if times > 0:
            base = np.convolve(base, base)
    assert acc is not None
    return acc


def oracle_atom_count(model: MeanSumModel) -> int:
    """Upper bound on the atoms of S before any merging"""
    return reduce(
        lambda acc, p: acc * (p.n * p.law.index_range + 1), model.populations, 1
    )


def exact_sum_distribution(
    model: MeanSumModel, budget: Optional[int] = None
) -> DiscreteCdf:
    """Exact law of S = sum_j Xbar_j.

    Each law is convolved n_j times with itself on its index grid, the
    support is rescaled by 1/n_j and the populations are cross-convolved.
    Raises :class:`OracleInfeasibleError` when the atom count exceeds the
    budget (``LE_ORACLE_BUDGET``, default 10**7).
    """
    limit = oracle_budget(budget)
    atoms = oracle_atom_count(model)
    if atoms > limit:
        raise OracleInfeasibleError(atoms, limit)
    return _exact_sum_distribution(model)


@lru_cache(maxsize=128)
def _exact_sum_distribution(model: MeanSumModel) -> DiscreteCdf:
    parts = []
    for population in model.populations:
        law = population.law
        dense = np.zeros(law.index_range + 1)
        dense[law.index_array - law.indices[0]] = law.prob_array
        summed = self_convolve(dense, population.n)
        keys = np.nonzero(summed > 0)[0].astype(np.int64)
        parts.append((keys, summed[keys]))

    offset = math.fsum(
        p.law.offset + p.law.span * p.law.indices[0] for p in model.populations
    )
    steps = [p.law.span / p.n for p in model.populations]

    strides = _integer_strides(steps)
    if strides is not None:
        unit, ints = strides
        try:
            keys, probs = _combine_integer(parts, ints)
        except OverflowError:
            logger.debug("integer grid overflow, using the float grid")
        else:
            support = offset + unit * keys.astype(np.float64)
            logger.debug("oracle integer grid: %d atoms, unit %.6g", keys.size, unit)
            return DiscreteCdf(support, probs)

    support, probs = _combine_float(parts, steps, offset)
    logger.debug("oracle float grid: %d atoms after merging", support.size)
    return DiscreteCdf(support, probs)


def _integer_strides(steps: Sequence[float]) -> Optional[Tuple[float, List[int]]]:
    """Express every step as an integer multiple of one unit, if possible"""
    base = steps[0]
    ratios = []
    for step in steps:
        r = step / base
        approx = Fraction(r).limit_denominator(_MAX_DENOMINATOR)
        if abs(float(approx) - r) > MERGE_TOLERANCE * r:
            return None
        ratios.append(approx)
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in ratios))
    ints = [int(f * lcm) for f in ratios]
    g = reduce(math.gcd, ints, 0)
    ints = [i // g for i in ints]
    return base * g / lcm, ints


def _combine_integer(
    parts: Sequence[Tuple[np.ndarray, np.ndarray]], strides: Sequence[int]
) -> Tuple[np.ndarray, np.ndarray]:
    keys = np.zeros(1, dtype=np.int64)
    probs = np.ones(1)
    top = 0
    for (part_keys, part_probs), stride in zip(parts, strides):
        top += int(part_keys[-1]) * stride
        if top > _MAX_KEY:
            raise OverflowError("integer grid key overflow")
        outer_keys = np.add.outer(keys, part_keys * stride).ravel()
        outer_probs = np.multiply.outer(probs, part_probs).ravel()
        keys, inverse = np.unique(outer_keys, return_inverse=True)
        probs = np.bincount(inverse.ravel(), weights=outer_probs, minlength=keys.size)
    return keys, probs


def _combine_float(
    parts: Sequence[Tuple[np.ndarray, np.ndarray]],
    steps: Sequence[float],
    offset: float,
) -> Tuple[np.ndarray, np.ndarray]:
    values = np.zeros(1)
    probs = np.ones(1)
    for (part_keys, part_probs), step in zip(parts, steps):
        values = np.add.outer(values, part_keys * step).ravel()
        probs = np.multiply.outer(probs, part_probs).ravel()
        values, probs = _merge_close(values, probs)
    return _merge_close(offset + values, probs)


def _merge_close(
    values: np.ndarray, probs: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    order = np.argsort(values, kind="stable")
    values, probs = values[order], probs[order]
    gaps = np.diff(values)
    scale = np.maximum(1.0, np.abs(values[1:]))
    starts = np.concatenate(([0], np.nonzero(gaps > MERGE_TOLERANCE * scale)[0] + 1))
    return values[starts], np.add.reduceat(probs, starts)


def exact_cdf_standardized(
    model: MeanSumModel, x: float, budget: Optional[int] = None
) -> float:
    """P{(S - ES)/sqrt(Var S) <= x} from the exact oracle"""
    dist = exact_sum_distribution(model, budget)
    if math.isinf(x):
        return 1.0 if x > 0 else 0.0
    return dist.cdf(model.mean + x * model.sd)
