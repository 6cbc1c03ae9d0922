"""Coverage of the one-sided bootstrap percentile interval"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Dict, List, Literal, Tuple

import pandas as pd

from ..errors import InvalidModelError
from ..lattice import MeanSumModel
from ..lattice.oracle import THRESHOLD_TOLERANCE
from ..rng import check_seed, substream
from .resampling import inf_quantile, resample_differences
from .samples import SampleSet

logger = logging.getLogger(__name__)

Convention = Literal["literal", "complement"]
CONVENTIONS = ("literal", "complement")
COVERAGE_COLUMNS = (
    "n1",
    "n2",
    "alpha",
    "convention",
    "coverage",
    "stderr",
    "reps",
    "B",
    "seed",
)


def nominal_coverage(alpha: float, convention: str) -> float:
    """literal uses s_hat_alpha (nominal 1 - alpha); complement uses s_hat_(1-alpha)"""
    if convention not in CONVENTIONS:
        raise InvalidModelError(f"unknown convention '{convention}'")
    return 1.0 - alpha if convention == "literal" else alpha


@dataclass(frozen=True)
class CoverageRow:
    n1: int
    n2: int
    alpha: float
    convention: str
    coverage: float
    stderr: float
    reps: int
    B: int
    seed: int

    @property
    def nominal(self) -> float:
        return nominal_coverage(self.alpha, self.convention)


@dataclass(frozen=True)
class CoverageResult:
    rows: Tuple[CoverageRow, ...]

    def to_records(self) -> List[Dict[str, object]]:
        return [asdict(row) for row in self.rows]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.to_records(), columns=list(COVERAGE_COLUMNS))


def coverage_row(
    model: MeanSumModel,
    alpha: float,
    reps: int,
    B: int,
    seed: int,
    convention: Convention = "literal",
    parametric: bool = False,
    row: int = 0,
) -> CoverageRow:
    """Fraction of datasets whose interval (-inf, S - s_hat] contains E S.

    Replicate r draws its data and its resamples from the stream keyed by
    (seed, row, r), so rows can run on any worker in any order.
    """
    seed = check_seed(seed)
    if reps < 1:
        raise InvalidModelError(f"reps must be >= 1, got {reps}")
    nominal_coverage(alpha, convention)
    level = alpha if convention == "literal" else 1.0 - alpha
    target = model.mean
    slack = THRESHOLD_TOLERANCE * max(1.0, abs(target))

    hits = 0
    for rep in range(reps):
        rng = substream(seed, row, rep)
        data = SampleSet.draw(model, rng)
        s_hat = inf_quantile(resample_differences(data, B, rng, parametric), level)
        if target <= data.statistic - s_hat + slack:
            hits += 1

    coverage = hits / reps
    n1, n2 = (model.sizes + (0,))[:2]
    logger.debug(
        "coverage row %d: n=%s alpha=%s -> %.4f", row, model.sizes, alpha, coverage
    )
    return CoverageRow(
        n1=n1,
        n2=n2,
        alpha=float(alpha),
        coverage=coverage,
        stderr=math.sqrt(coverage * (1.0 - coverage) / reps),
        reps=int(reps),
        B=int(B),
        seed=seed,
        convention=convention,
    )


def coverage_experiment(
    model: MeanSumModel,
    alpha: float,
    reps: int,
    B: int,
    seed: int,
    convention: Convention = "literal",
    parametric: bool = False,
) -> CoverageResult:
    return CoverageResult(
        (coverage_row(model, alpha, reps, B, seed, convention, parametric),)
    )
