"""Splittable 64-bit seed derivation.

Seeds for trial i of an experiment are the (i+1)-th output of a splitmix64
stream started at the master seed, so every trial owns an independent
stream no matter which worker runs it.
"""

import numpy as np

MASK_64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64_mix(z: int) -> int:
    """Finaliser of splitmix64 applied to a 64-bit state."""
    z &= MASK_64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK_64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK_64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, index: int) -> int:
    """Seed of stream `index` under `master_seed`.

    Equals the (index+1)-th value produced by splitmix64 seeded with
    master_seed, e.g. derive_seed(0, 0) == 0xE220A8397B1DCDAF.
    """
    if index < 0:
        raise ValueError("index must be non-negative")
    state = (int(master_seed) + (index + 1) * GOLDEN_GAMMA) & MASK_64
    return splitmix64_mix(state)


def make_rng(seed: int) -> np.random.Generator:
    """numpy Generator for a 64-bit seed."""
    return np.random.Generator(np.random.PCG64(int(seed) & MASK_64))
