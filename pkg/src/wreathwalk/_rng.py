"""Per-trial random streams shared by both kernel backends.

Trial ``t`` of an experiment tagged ``tag`` draws from a Philox generator keyed by
``(seed, tag, t)``, so trials are order-independent and can be split across
workers without changing any output.
"""

import numpy as np

WALK = 1
COUPON = 2

_MASK64 = (1 << 64) - 1


def trial_stream(seed, tag, trial):
    if not 0 <= trial < (1 << 56):
        raise ValueError("trial index must fit in 56 bits")
    return np.random.Philox(key=(((tag << 56) | trial) << 64) | (seed & _MASK64))


def bounded(x, m):
    """Map a raw 64-bit draw to ``0..m-1`` using its top 32 bits (m < 2**32)."""
    return ((x >> 32) * m) >> 32
