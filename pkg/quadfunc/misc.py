"""Miscellaneous numeric helpers.

Standard-normal density and tail functions built on scipy's complementary error function, and the seed mixing used
to give every replication its own reproducible random stream.
"""

import logging
import math

import numpy as np
from scipy import special

_LOGGER = logging.getLogger(__name__)
SQRT2 = math.sqrt(2.0)
SQRT2PI = math.sqrt(2.0 * math.pi)


def norm_pdf(z):
    """Standard-normal density.

    Positional arguments:
    z -- float or numpy array.

    Returns:
    φ(z), same shape as `z`. Underflows to 0.0 for large |z|.
    """
    z = np.asarray(z, dtype=float)
    out = np.exp(-0.5 * z * z) / SQRT2PI
    return out if out.ndim else float(out)


def norm_sf(z):
    """Standard-normal survival function Φ̃(z) = 1 - Φ(z), computed as erfc(z/√2)/2 to keep tail precision.

    Positional arguments:
    z -- float or numpy array.

    Returns:
    Φ̃(z), same shape as `z`.
    """
    out = 0.5 * special.erfc(np.asarray(z, dtype=float) / SQRT2)
    return out if np.ndim(out) else float(out)


def norm_cdf(z):
    """Standard-normal distribution function Φ(z)."""
    return norm_sf(-np.asarray(z, dtype=float))


def derive_seed(master_seed, *indexes):
    """Mix a master seed with stream indexes into a new 64-bit seed.

    SeedSequence hashing makes the result depend on every index, so a stream for replication 7 of cell 3 never
    collides with the stream for replication 3 of cell 7 and scheduling order has no influence.

    Positional arguments:
    master_seed -- non-negative integer.
    indexes -- non-negative integers identifying the stream.

    Returns:
    Integer in [0, 2**64).
    """
    entropy = [int(master_seed) & 0xFFFFFFFFFFFFFFFF] + [int(i) for i in indexes]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0])


def rng_from_seed(seed):
    """Return a numpy Generator (Philox counter-based bit generator) for a 64-bit seed."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))


def safe_exp(value):
    """math.exp() that returns +inf instead of raising OverflowError."""
    try:
        return math.exp(value)
    except OverflowError:
        _LOGGER.debug('exp(%r) overflowed, reporting inf', value)
        return float('inf')
