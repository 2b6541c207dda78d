"""Counter-based random streams.

Every sample is a pure function of (seed, tag, index): the Philox generator
is keyed by (seed, tag) and its 256-bit counter is positioned at a fixed
block offset per sample index.  Batch generation therefore produces exactly
the same values as per-index generation, regardless of call order, batch
split, or worker count.

Tags separate the independent streams used by the samplers; they are part
of the reproducibility contract and must not be reused across purposes.
"""

from __future__ import annotations

import numpy as np
from numpy.random import Philox
from scipy.special import ndtri

# one Philox round yields 4 64-bit words; the counter counts rounds
WORDS_PER_BLOCK = 4

# stream tags (fixed; part of the output-reproducibility contract)
TAG_SPHERE = 1
TAG_TANGENT = 2
TAG_GRASSMANN = 3
TAG_ISOMETRY = 4
TAG_DILATION_LATITUDE = 5
TAG_CAP = 6
TAG_EQUATOR = 7
TAG_SLICE_PLANE = 8
TAG_SLICE_POINT = 9
TAG_INVARIANTS = 10
TAG_PROBE = 11

_MASK64 = (1 << 64) - 1


def _key(seed: int, tag: int) -> np.ndarray:
    return np.array([seed & _MASK64, tag & _MASK64], dtype=np.uint64)


def blocks_for(words_per_sample: int) -> int:
    """Number of counter blocks reserved per sample index."""
    if words_per_sample < 1:
        raise ValueError(f"words_per_sample must be >= 1, got {words_per_sample}")
    return -(-words_per_sample // WORDS_PER_BLOCK)


def raw_words(seed: int, tag: int, start_index: int, count: int,
              words_per_sample: int) -> np.ndarray:
    """uint64 words for sample indices [start_index, start_index + count).

    Returns shape (count, words_per_sample).  Row i equals the words that a
    separate call with start_index + i and count 1 would produce.
    """
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    blocks = blocks_for(words_per_sample)
    if count == 0:
        return np.empty((0, words_per_sample), dtype=np.uint64)
    bg = Philox(key=_key(seed, tag), counter=start_index * blocks)
    raw = bg.random_raw(count * blocks * WORDS_PER_BLOCK)
    raw = raw.reshape(count, blocks * WORDS_PER_BLOCK)
    return raw[:, :words_per_sample]


def uniforms(seed: int, tag: int, start_index: int, count: int,
             per_sample: int) -> np.ndarray:
    """Uniform floats on the open interval (0, 1), shape (count, per_sample)."""
    w = raw_words(seed, tag, start_index, count, per_sample)
    # 53-bit mantissa, offset by half a ulp so 0 and 1 are unreachable
    return ((w >> np.uint64(11)).astype(np.float64) + 0.5) * (2.0 ** -53)


def normals(seed: int, tag: int, start_index: int, count: int,
            per_sample: int) -> np.ndarray:
    """Standard normals via the inverse CDF, shape (count, per_sample).

    Inverse-CDF conversion consumes exactly one word per normal, which keeps
    the per-index stream layout fixed (rejection methods would not).
    """
    return ndtri(uniforms(seed, tag, start_index, count, per_sample))
