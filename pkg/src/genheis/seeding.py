"""Seed splitting.

Every random stream is derived from one root seed and a tuple of labels::

    rng_for(root, "phi", seed_index, "u")

Labels are hashed with CRC-32 into the ``spawn_key`` of a
:class:`numpy.random.SeedSequence`, so streams with different labels are
independent and the same labels always give the same stream.
"""

import zlib

import numpy as np


def split(root: int, *labels) -> np.random.SeedSequence:
    key = tuple(zlib.crc32(str(label).encode("utf-8")) for label in labels)
    return np.random.SeedSequence(entropy=int(root), spawn_key=key)


def rng_for(root: int, *labels) -> np.random.Generator:
    return np.random.default_rng(split(root, *labels))


def derive_seed(root: int, *labels) -> int:
    """A 63-bit integer seed for APIs that want a plain int."""
    return int(split(root, *labels).generate_state(2, dtype=np.uint32).view(np.uint64)[0] >> 1)
