"""
🎲 Seeded Random Streams
Every random draw derives from a master seed plus structural keys
"""

from typing import Union

from numpy.random import Generator, Philox, SeedSequence

SeedLike = Union[int, Generator, None]


def make_rng(*keys: int) -> Generator:
    """Counter-based generator keyed by (master seed, k, ell, code id, ...)"""
    return Generator(Philox(SeedSequence([int(key) for key in keys])))


def as_generator(seed: SeedLike) -> Generator:
    if isinstance(seed, Generator):
        return seed
    if seed is None:
        return Generator(Philox())
    return make_rng(seed)
