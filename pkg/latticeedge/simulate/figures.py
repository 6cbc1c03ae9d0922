"""Experiment grids: P(x) against n1, and bootstrap coverage against n1"""

import logging
import math
from dataclasses import asdict, dataclass
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple, cast

import numpy as np
import pandas as pd

from ..bootstrap import CoverageResult, CoverageRow, coverage_row
from ..core import RowTask, run_rows
from ..edgeworth import Variant, full_expansion
from ..errors import InvalidModelError
from ..lattice import MeanSumModel, exact_cdf_standardized
from ..storage import RunRecordStore
from .config import ExperimentConfig, design_pairs
from .estimate import estimate_P_grid, z_alpha

logger = logging.getLogger(__name__)

SIM_COLUMNS = (
    "n1",
    "n2",
    "x",
    "alpha",
    "estimate",
    "stderr",
    "method",
    "seed",
    "status",
)
MIN_AMPLITUDE_ROWS = 8


@dataclass(frozen=True)
class SimRow:
    n1: int
    n2: int
    x: float
    alpha: float
    estimate: float
    stderr: float
    method: str
    seed: Optional[int]
    status: str = "ok"


@dataclass(frozen=True)
class SimTable:
    rows: Tuple[SimRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def at_alpha(self, alpha: float) -> List[SimRow]:
        return [row for row in self.rows if row.alpha == alpha]

    def to_records(self) -> List[Dict[str, object]]:
        return [asdict(row) for row in self.rows]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.to_records(), columns=list(SIM_COLUMNS))
        frame["seed"] = frame["seed"].astype("Int64")
        return frame


def _pvals_row(
    model: MeanSumModel, config: ExperimentConfig, row: int
) -> List[Tuple[float, float]]:
    """(estimate, stderr) for each configured alpha at one design pair"""
    xs = [z_alpha(alpha) for alpha in config.alphas]
    if config.method == "mc":
        return estimate_P_grid(model, xs, config.reps, config.require_seed(), row)
    if config.method == "oracle":
        return [
            (exact_cdf_standardized(model, x, config.oracle_budget), 0.0) for x in xs
        ]
    settings = config.expansion_settings()
    variant = cast(Variant, config.method)
    return [(full_expansion(model, x, variant, settings).total, 0.0) for x in xs]


def run_figure1(
    config: ExperimentConfig,
    max_workers: Optional[int] = None,
    store: Optional[RunRecordStore] = None,
    run_id: Optional[str] = None,
) -> SimTable:
    """One row per (n1, alpha) with x = Phi^(-1)(alpha).

    Rows whose exact oracle is over budget are kept with status
    ``infeasible`` and NaN estimates.
    """
    if config.method == "mc":
        config.require_seed()
    template = config.template()
    pairs = design_pairs(config)
    tasks = [
        RowTask(
            fn=partial(_pvals_row, template.with_sizes((n1, n2)), config, i),
            index=i,
            name=f"n1_{n1}_n2_{n2}",
            tags={"pvals", config.method},
            description=f"P(x) at alphas {list(config.alphas)}",
        )
        for i, (n1, n2) in enumerate(pairs)
    ]
    outcomes = run_rows(tasks, max_workers, run_id=run_id, store=store)

    rows = []
    for (n1, n2), outcome in zip(pairs, outcomes):
        values = outcome.value if outcome.status == "success" else None
        for a, alpha in enumerate(config.alphas):
            estimate, stderr = values[a] if values else (math.nan, math.nan)
            rows.append(
                SimRow(
                    n1=n1,
                    n2=n2,
                    x=z_alpha(alpha),
                    alpha=alpha,
                    estimate=estimate,
                    stderr=stderr,
                    method=config.method,
                    seed=config.seed,
                    status="ok" if values else outcome.status,
                )
            )
    logger.debug("P(x) grid: %d rows from %d designs", len(rows), len(pairs))
    return SimTable(tuple(rows))


def run_figure2(
    config: ExperimentConfig,
    max_workers: Optional[int] = None,
    store: Optional[RunRecordStore] = None,
    run_id: Optional[str] = None,
) -> CoverageResult:
    """One coverage_row per (n1, alpha), row r keyed as (seed, r, replicate)"""
    seed = config.require_seed()
    template = config.template()
    tasks = []
    for i, (n1, n2) in enumerate(design_pairs(config)):
        for a, alpha in enumerate(config.alphas):
            index = i * len(config.alphas) + a
            tasks.append(
                RowTask(
                    fn=partial(
                        coverage_row,
                        template.with_sizes((n1, n2)),
                        alpha,
                        config.reps,
                        config.B,
                        seed,
                        config.convention,
                        config.parametric,
                        index,
                    ),
                    index=index,
                    name=f"n1_{n1}_n2_{n2}_alpha_{alpha}",
                    tags={"coverage", config.convention},
                    description=f"coverage at alpha {alpha}, B={config.B}",
                )
            )
    outcomes = run_rows(tasks, max_workers, run_id=run_id, store=store)
    rows: List[CoverageRow] = [outcome.value for outcome in outcomes]
    return CoverageResult(tuple(rows))


def oscillation_amplitude(table: SimTable, alpha: float) -> float:
    """Spread of the estimates at one alpha after removing a trend in n1^(-1/2).

    A least-squares line in 1/sqrt(n1) absorbs the smooth skewness decay;
    the population standard deviation of the residuals measures what is left.
    """
    rows = [r for r in table.at_alpha(alpha) if math.isfinite(r.estimate)]
    return detrended_spread([r.n1 for r in rows], [r.estimate for r in rows])


def detrended_spread(n1: Sequence[int], estimates: Sequence[float]) -> float:
    if len(estimates) < MIN_AMPLITUDE_ROWS:
        raise InvalidModelError(
            f"need at least {MIN_AMPLITUDE_ROWS} finite rows, got {len(estimates)}"
        )
    u = 1.0 / np.sqrt(np.asarray(n1, dtype=np.float64))
    y = np.asarray(estimates, dtype=np.float64)
    slope, intercept = np.polyfit(u, y, 1)
    return float(np.std(y - (slope * u + intercept)))
