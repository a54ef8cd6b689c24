"""Counter-based random streams.

All randomness in the package flows through Philox4x64 keyed by
``(seed, stream)``.  Philox is counter-based, so per-trial streams are
independent of execution order: trial ``i`` of a Monte Carlo run always
draws from ``stream_rng(seed, i)`` no matter how trials are scheduled.
"""

from __future__ import annotations

import numpy as np

GENERATOR_NAME = "philox4x64"


def stream_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Generator for sub-stream ``stream`` of the master ``seed``.

    Same (seed, stream) pair -> bit-identical draw sequence, on every
    platform numpy supports.
    """
    if not 0 <= int(seed) < 2**64:
        raise ValueError(f"seed must fit in uint64, got {seed}")
    if not 0 <= int(stream) < 2**64:
        raise ValueError(f"stream index must fit in uint64, got {stream}")
    key = np.array([seed, stream], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
