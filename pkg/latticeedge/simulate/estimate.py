"""Monte Carlo estimates of P{(S - ES)/sqrt(Var S) <= x}"""

import math
from typing import List, Sequence, Tuple

import numpy as np
from scipy.special import ndtri

from ..errors import InvalidModelError
from ..lattice import MeanSumModel
from ..lattice.oracle import THRESHOLD_TOLERANCE
from ..rng import block_sizes, check_seed, substream

MC_BLOCK = 10_000


def z_alpha(alpha: float) -> float:
    """Standard normal quantile Phi^(-1)(alpha)"""
    if not 0.0 < alpha < 1.0:
        raise InvalidModelError(f"alpha must lie in (0, 1), got {alpha}")
    return float(ndtri(alpha))


def simulate_sums(
    model: MeanSumModel, size: int, rng: np.random.Generator
) -> np.ndarray:
    """`size` independent draws of S.

    Each population contributes offset + span * (index sum) / n_j, the index
    sum of n_j iid draws coming from one multinomial count vector.
    """
    out = np.zeros(size)
    for population in model.populations:
        law = population.law
        counts = rng.multinomial(population.n, law.prob_array, size=size)
        index_sums = counts @ law.index_array
        out += law.offset + law.span * index_sums / population.n
    return out


def estimate_P_grid(
    model: MeanSumModel,
    xs: Sequence[float],
    reps: int,
    seed: int,
    row: int = 0,
    block: int = MC_BLOCK,
) -> List[Tuple[float, float]]:
    """(estimate, stderr) at every x from one set of `reps` draws.

    Draws come in fixed blocks, block b from the stream keyed by
    (seed, row, b), and hits are integer counts, so the result does not
    depend on how rows are scheduled.
    """
    seed = check_seed(seed)
    if isinstance(reps, bool) or int(reps) != reps or reps < 1:
        raise InvalidModelError(f"reps must be a positive integer, got {reps}")
    thresholds = np.array(
        [model.mean + float(x) * model.sd for x in xs], dtype=np.float64
    )
    slack = THRESHOLD_TOLERANCE * np.maximum(1.0, np.abs(thresholds))
    hits = np.zeros(thresholds.size, dtype=np.int64)
    for b, size in enumerate(block_sizes(int(reps), block)):
        sums = simulate_sums(model, size, substream(seed, row, b))
        hits += np.count_nonzero(sums[:, None] <= (thresholds + slack)[None, :], axis=0)

    results = []
    for h in hits.tolist():
        p = h / reps
        results.append((p, math.sqrt(p * (1.0 - p) / reps)))
    return results


def estimate_P(
    model: MeanSumModel,
    x: float,
    reps: int,
    seed: int,
    row: int = 0,
) -> Tuple[float, float]:
    """Fraction of replicates with (S - ES)/sqrt(Var S) <= x, with binomial stderr"""
    if math.isinf(x):
        return (1.0, 0.0) if x > 0 else (0.0, 0.0)
    return estimate_P_grid(model, [x], reps, seed, row)[0]
