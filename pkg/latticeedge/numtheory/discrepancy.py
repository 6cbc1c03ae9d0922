"""Weighted sawtooth sums along arithmetic progressions modulo one"""

import math
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from ..errors import InvalidModelError, UndefinedBoundError
from .diophantine import sin_multiple

BREAKPOINT_OFFSET = 1e-9
DEFAULT_ERDOS_TURAN_C = 3.0


def _fractional_parts(values: np.ndarray) -> np.ndarray:
    return values - np.floor(values)


def breakpoint_grid(N: int, tau: float) -> np.ndarray:
    """frac(tau i) for i = 1..N, each with neighbours at +-1e-9, reduced mod 1"""
    if N < 1:
        raise InvalidModelError(f"N must be >= 1, got {N}")
    f = _fractional_parts(tau * np.arange(1, N + 1, dtype=np.float64))
    grid = np.concatenate((f, f + BREAKPOINT_OFFSET, f - BREAKPOINT_OFFSET))
    return np.unique(_fractional_parts(grid))


def chi_discrepancy(
    N: int,
    q_coeffs: Sequence[float],
    tau: float,
    z_grid: Optional[Sequence[float]] = None,
) -> float:
    """max over z in the grid of |sum_{i=1}^N q(i/N) psi(z - tau i)|.

    With z and frac(tau i) reduced to [0, 1) the sum equals
    sum_i q_i (f_i + 1/2) - Q z - sum_{f_i > z} q_i, evaluated for the whole
    grid at once from sorted fractional parts.
    """
    if N < 1:
        raise InvalidModelError(f"N must be >= 1, got {N}")
    if len(q_coeffs) == 0:
        raise InvalidModelError("at least one polynomial coefficient is required")
    grid = breakpoint_grid(N, tau) if z_grid is None else np.asarray(z_grid, float)
    if grid.size == 0:
        raise InvalidModelError("z grid must be nonempty")

    i = np.arange(1, N + 1, dtype=np.float64)
    weights = P.polyval(i / N, np.asarray(q_coeffs, dtype=np.float64))
    f = _fractional_parts(tau * i)

    order = np.argsort(f, kind="stable")
    f_sorted, w_sorted = f[order], weights[order]
    # suffix[k] = sum of weights with sorted index >= k
    suffix = np.concatenate((np.cumsum(w_sorted[::-1])[::-1], [0.0]))

    z = _fractional_parts(grid)
    above = suffix[np.searchsorted(f_sorted, z, side="right")]
    base = math.fsum((weights * (f + 0.5)).tolist())
    total_weight = math.fsum(weights.tolist())
    values = base - total_weight * z - above
    return float(np.max(np.abs(values)))


def chi_block(z: float, tau: float, start: int, length: int) -> float:
    """sum of psi(z - tau nu) over nu = start .. start + length - 1"""
    if length < 1:
        raise InvalidModelError(f"length must be >= 1, got {length}")
    y = z - tau * np.arange(start, start + length, dtype=np.float64)
    return math.fsum((np.floor(y) - y + 0.5).tolist())


def _reciprocal_sines(tau: float, m: int) -> np.ndarray:
    sines = np.array([sin_multiple(ell, tau) for ell in range(1, m + 1)])
    zero = np.nonzero(sines == 0.0)[0]
    if zero.size:
        raise UndefinedBoundError(
            f"bound undefined: sin({zero[0] + 1} tau pi) = 0 "
            f"(tau rational with denominator <= {m})"
        )
    return 1.0 / (np.arange(1, m + 1) * sines)


def erdos_turan_rhs(
    N: int, m: int, tau: float, C: float = DEFAULT_ERDOS_TURAN_C
) -> float:
    """C (N/m + sum_{ell=1}^m 1/(ell |sin(ell tau pi)|))"""
    if m < 1:
        raise InvalidModelError(f"m must be >= 1, got {m}")
    return C * (N / m + math.fsum(_reciprocal_sines(tau, m).tolist()))


def exponential_sum_bound(p: int, rho: float, m: int) -> Tuple[float, float]:
    """(sum_{ell<=m} ell^-1 |sum_{r=1}^p exp(2 pi i ell r rho)|, its sine majorant)"""
    if p < 1 or m < 1:
        raise InvalidModelError("p and m must be >= 1")
    ell = np.arange(1, m + 1, dtype=np.float64)
    r = np.arange(1, p + 1, dtype=np.float64)
    phases = 2j * np.pi * rho * np.outer(ell, r)
    direct = np.abs(np.exp(phases).sum(axis=1)) / ell
    return math.fsum(direct.tolist()), math.fsum(_reciprocal_sines(rho, m).tolist())
