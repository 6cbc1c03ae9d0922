"""The sawtooth psi and lattice-phase helpers"""

from typing import Union

import numpy as np

ArrayLike = Union[float, np.ndarray]

SNAP_TOLERANCE = 1e-9


def psi(x: ArrayLike) -> ArrayLike:
    """psi(x) = floor(x) - x + 1/2, with floor rounding toward -inf"""
    arr = np.asarray(x, dtype=np.float64)
    out = np.floor(arr) - arr + 0.5
    if out.ndim == 0:
        return float(out)
    return out


def snap_to_integer(x: ArrayLike, tol: float = SNAP_TOLERANCE) -> ArrayLike:
    """Round values lying within tol * max(1, |x|) of an integer"""
    arr = np.asarray(x, dtype=np.float64)
    nearest = np.rint(arr)
    close = np.abs(arr - nearest) <= tol * np.maximum(1.0, np.abs(arr))
    out = np.where(close, nearest, arr)
    if out.ndim == 0:
        return float(out)
    return out


def lattice_psi(x: ArrayLike) -> ArrayLike:
    """psi evaluated after snapping arguments that sit on a lattice point"""
    return psi(snap_to_integer(x))


def fractional_phase(y: float) -> float:
    """y - floor(y) in [0, 1), with near-integers snapped to 0"""
    y = float(snap_to_integer(y))
    return y - float(np.floor(y))
