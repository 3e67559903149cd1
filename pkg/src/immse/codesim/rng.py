"""Counter-based random streams keyed by (seed, purpose, worker).

Every Monte Carlo estimate draws from its own Philox stream, so estimates
do not depend on the order in which other estimates were computed and
parallel workers never share state.
"""

from __future__ import annotations

import zlib

import numpy as np

__all__ = ["stream", "purpose_key"]


def purpose_key(purpose: str) -> int:
    return zlib.crc32(purpose.encode("utf-8"))


def stream(seed: int, purpose: str, worker: int = 0) -> np.random.Generator:
    """Independent generator for one (seed, purpose, worker) triple."""
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    ss = np.random.SeedSequence(int(seed), spawn_key=(purpose_key(purpose), int(worker)))
    return np.random.Generator(np.random.Philox(ss))
