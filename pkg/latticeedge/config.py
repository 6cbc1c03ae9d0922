"""Environment-driven defaults.

Every knob follows the same rule: explicit arguments win, then the
environment variable, then the built-in default. Unparseable values fall
back to the default instead of raising.
"""

import os
from typing import Optional

DEFAULT_ORACLE_BUDGET = 10**7
DEFAULT_TAIL_EPS = 1e-14
MAX_TAIL_EPS = 1e-6


def worker_cap(explicit: Optional[int] = None) -> int:
    """Number of concurrent row workers; ``LE_THREADS`` (0 = auto)."""
    if explicit is None:
        env_cap = os.getenv("LE_THREADS")
        if env_cap:
            try:
                explicit = int(env_cap)
            except ValueError:
                explicit = 0
        else:
            explicit = 0
    if explicit <= 0:
        return max(1, os.cpu_count() or 1)
    return max(1, int(explicit))


def oracle_budget(explicit: Optional[int] = None) -> int:
    """Atom budget for the exact oracle; ``LE_ORACLE_BUDGET``."""
    if explicit is not None:
        return max(1, int(explicit))
    env_budget = os.getenv("LE_ORACLE_BUDGET")
    if env_budget:
        try:
            return max(1, int(float(env_budget)))
        except ValueError:
            return DEFAULT_ORACLE_BUDGET
    return DEFAULT_ORACLE_BUDGET


def tail_eps(explicit: Optional[float] = None) -> float:
    """Series truncation threshold; ``LE_TAIL_EPS`` clamped into (0, 1e-6]."""
    value = explicit
    if value is None:
        env_eps = os.getenv("LE_TAIL_EPS")
        value = DEFAULT_TAIL_EPS
        if env_eps:
            try:
                value = float(env_eps)
            except ValueError:
                value = DEFAULT_TAIL_EPS
        if not 0.0 < value <= MAX_TAIL_EPS:
            value = DEFAULT_TAIL_EPS
    return value
