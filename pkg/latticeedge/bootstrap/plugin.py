"""Plug-in moments and expansions of the bootstrap distribution"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..edgeworth import (
    ExpansionBreakdown,
    ExpansionSettings,
    Variant,
    full_expansion,
)
from ..errors import InvalidModelError
from ..lattice import MeanSumModel, make_lattice_law
from .samples import SampleSet


@dataclass(frozen=True)
class SampleMoments:
    """Empirical mean and central moments (divisor n) of one sample"""

    n: int
    mean: float
    variance: float
    mu3: float


@dataclass(frozen=True)
class PluginMoments:
    """Moments of S* given the data"""

    populations: Tuple[SampleMoments, ...]
    mean: float
    variance: float
    third: float


def _sample_moments(values: np.ndarray) -> SampleMoments:
    n = values.size
    mean = math.fsum(values.tolist()) / n
    centred = values - mean
    return SampleMoments(
        n=n,
        mean=mean,
        variance=math.fsum((centred**2).tolist()) / n,
        mu3=math.fsum((centred**3).tolist()) / n,
    )


def plugin_moments(data: SampleSet) -> PluginMoments:
    """E(S*|X) = S, Var(S*|X) = sum sigma_j^2 / n_j, third = sum mu3_j / n_j^2"""
    per_population = tuple(_sample_moments(s.values) for s in data.samples)
    return PluginMoments(
        populations=per_population,
        mean=math.fsum(m.mean for m in per_population),
        variance=math.fsum(m.variance / m.n for m in per_population),
        third=math.fsum(m.mu3 / m.n**2 for m in per_population),
    )


def empirical_model(data: SampleSet) -> MeanSumModel:
    """Model whose population laws are the empirical distributions of the data"""
    laws = []
    for j, sample in enumerate(data.samples):
        if sample.is_degenerate:
            raise InvalidModelError(
                f"sample {j} has a single distinct value: plug-in variance is zero"
            )
        values, counts = sample.distinct()
        pmf = {int(v): int(c) / sample.n for v, c in zip(values, counts)}
        laws.append(make_lattice_law(sample.offset, sample.span, pmf))
    return MeanSumModel.of(laws, data.sizes)


def plugin_expansion(
    data: SampleSet,
    x: float,
    variant: Variant = "two-sample-direct",
    settings: Optional[ExpansionSettings] = None,
) -> ExpansionBreakdown:
    """Expansion of P{(S* - S)/sqrt(Var(S*|X)) <= x | X}"""
    return full_expansion(empirical_model(data), x, variant, settings)
