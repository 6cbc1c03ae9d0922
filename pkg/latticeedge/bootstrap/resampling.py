"""Nonparametric and parametric resampling of the sum of sample means"""

import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ..errors import InvalidModelError
from .samples import PopulationSample, SampleSet

QUANTILE_SLACK = 1e-9


def _check_level(alpha: float) -> float:
    if not 0.0 < alpha < 1.0:
        raise InvalidModelError(f"alpha must lie in (0, 1), got {alpha}")
    return float(alpha)


def _check_replicates(B: int) -> int:
    if isinstance(B, bool) or int(B) != B or B < 1:
        raise InvalidModelError(f"B must be a positive integer, got {B}")
    return int(B)


def _resampled_index_sums(
    sample: PopulationSample, B: int, rng: np.random.Generator, parametric: bool
) -> np.ndarray:
    """Index sums of B resamples of size n; shape (B,)"""
    values, counts = sample.distinct()
    if values.size == 1:
        return np.full(B, sample.index_sum, dtype=np.int64)
    if parametric:
        if values.size != 2:
            raise InvalidModelError(
                "parametric resampling needs two-point samples, "
                f"found {values.size} distinct values"
            )
        upper = rng.binomial(sample.n, counts[1] / sample.n, size=B)
        return sample.n * values[0] + upper * (values[1] - values[0])
    draws = rng.multinomial(sample.n, counts / sample.n, size=B)
    return draws @ values


def resample_differences(
    data: SampleSet, B: int, rng: np.random.Generator, parametric: bool = False
) -> np.ndarray:
    """B draws of S* - S.

    Each population is resampled with replacement from its own observations,
    or from the fitted two-point law when `parametric` is set. Differences are
    formed in index space so that shifting a population by a constant leaves
    them unchanged.
    """
    B = _check_replicates(B)
    out = np.zeros(B)
    for sample in data.samples:
        delta = _resampled_index_sums(sample, B, rng, parametric) - sample.index_sum
        out += sample.span * delta / sample.n
    return out


def resample_sum(
    data: SampleSet, rng: np.random.Generator, parametric: bool = False
) -> float:
    """One bootstrap value of S*"""
    return data.statistic + float(resample_differences(data, 1, rng, parametric)[0])


def inf_quantile(values: np.ndarray, alpha: float) -> float:
    """inf{s : #(values <= s) / B >= alpha}, the ceil(alpha B)-th order statistic"""
    alpha = _check_level(alpha)
    ordered = np.sort(np.asarray(values, dtype=np.float64))
    if ordered.size == 0:
        raise InvalidModelError("quantile of an empty set")
    rank = min(max(math.ceil(alpha * ordered.size - QUANTILE_SLACK), 1), ordered.size)
    return float(ordered[rank - 1])


@dataclass(frozen=True)
class BootstrapQuantile:
    alpha: float
    s_hat: float
    B: int


def bootstrap_quantiles(
    data: SampleSet,
    alphas: Sequence[float],
    B: int,
    rng: np.random.Generator,
    parametric: bool = False,
) -> List[BootstrapQuantile]:
    """Quantiles of S* - S at several levels from one set of B resamples"""
    diffs = resample_differences(data, B, rng, parametric)
    return [BootstrapQuantile(float(a), inf_quantile(diffs, a), int(B)) for a in alphas]


def bootstrap_quantile(
    data: SampleSet,
    alpha: float,
    B: int,
    rng: np.random.Generator,
    parametric: bool = False,
) -> BootstrapQuantile:
    return bootstrap_quantiles(data, [alpha], B, rng, parametric)[0]


@dataclass(frozen=True)
class PercentileInterval:
    """One-sided interval (-inf, upper] for E S with upper = S - s_hat"""

    statistic: float
    s_hat: float
    alpha: float

    @property
    def upper(self) -> float:
        return self.statistic - self.s_hat

    def contains(self, value: float) -> bool:
        return value <= self.upper


def percentile_interval(
    data: SampleSet,
    alpha: float,
    B: int,
    rng: np.random.Generator,
    parametric: bool = False,
) -> PercentileInterval:
    quantile = bootstrap_quantile(data, alpha, B, rng, parametric)
    return PercentileInterval(data.statistic, quantile.s_hat, quantile.alpha)
