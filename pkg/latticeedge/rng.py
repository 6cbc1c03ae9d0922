"""Counter-based random streams keyed by (seed, row, replicate)"""

from typing import Iterator

import numpy as np

from .errors import InvalidModelError

MAX_SEED = 2**64 - 1


def check_seed(seed: int) -> int:
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed <= MAX_SEED:
        raise InvalidModelError(f"seed must be an integer in [0, 2**64), got {seed}")
    return int(seed)


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent Philox stream for one key path below a seed.

    The same (seed, key) always yields the same stream, whatever order or
    worker evaluates it.
    """
    spawn_key = tuple(int(k) for k in key)
    sequence = np.random.SeedSequence(check_seed(seed), spawn_key=spawn_key)
    return np.random.Generator(np.random.Philox(sequence))


def block_sizes(total: int, block: int) -> Iterator[int]:
    """Split `total` draws into fixed blocks; the last may be short"""
    if total < 1 or block < 1:
        raise InvalidModelError("total and block size must be >= 1")
    full, rest = divmod(total, block)
    for _ in range(full):
        yield block
    if rest:
        yield rest
