"""Seedable randomness with exact coin flips and exact median-of-k sampling.

Jump indices follow the sublist convention of :mod:`jumplists.core`: the
header is index 0 and the sample range is ``[2, m - 1]``.
"""

from __future__ import annotations

import random
from fractions import Fraction

GENERATOR = f"python-random-mt19937/{random.Random.VERSION}"

Rational = Fraction


class RandomSource:
    """Thin wrapper around :class:`random.Random`.

    ``randrange`` draws by rejection on ``getrandbits``, so every value below
    the bound is exactly equally likely.
    """

    def __init__(self, seed: int | str | tuple | None = 0):
        if isinstance(seed, tuple):
            seed = ":".join(str(s) for s in seed)
        self.seed = seed
        self._random = random.Random(seed)

    @classmethod
    def derive(cls, seed, index: int) -> "RandomSource":
        """Independent source for trial ``index`` of a run seeded with ``seed``."""
        return cls((seed, index))

    def uniform_below(self, bound: int) -> int:
        return self._random.randrange(bound)

    def shuffle(self, items: list) -> None:
        # Fisher-Yates on uniform_below, so replayed sources see every draw
        for i in range(len(items) - 1, 0, -1):
            j = self.uniform_below(i + 1)
            items[i], items[j] = items[j], items[i]

    def choice(self, items):
        return items[self.uniform_below(len(items))]


def coin_flip(rng: RandomSource, p: Fraction) -> bool:
    """True with probability exactly ``p``."""
    num, den = p.numerator, p.denominator
    if num <= 0:
        return False
    if num >= den:
        return True
    return rng.uniform_below(den) < num


def sample_subset(rng: RandomSource, population: int, size: int) -> list[int]:
    """Uniform ``size``-subset of ``range(population)`` (Floyd's algorithm)."""
    if not 0 <= size <= population:
        raise ValueError(f"cannot sample {size} of {population}")
    chosen = set()
    for top in range(population - size, population):
        r = rng.uniform_below(top + 1)
        chosen.add(top if r in chosen else r)
    return sorted(chosen)


def draw_jump_index(rng: RandomSource, m: int, k: int) -> int:
    """Median of a uniform ``k``-subset of ``[2, m - 1]``."""
    if m - 2 < k:
        raise ValueError(f"sample range of a {m}-node sublist is smaller than k={k}")
    if k == 1:
        return 2 + rng.uniform_below(m - 2)
    sample = sample_subset(rng, m - 2, k)
    return 2 + sample[k // 2]


def draw_jump_index_conditional(rng: RandomSource, m: int, k: int, forced: int) -> int:
    """Median of a uniform ``k``-subset of ``[2, m - 1]`` conditioned to contain ``forced``."""
    if m - 2 < k:
        raise ValueError(f"sample range of a {m}-node sublist is smaller than k={k}")
    if not 2 <= forced <= m - 1:
        raise ValueError(f"forced index {forced} outside [2, {m - 1}]")
    if k == 1:
        return forced
    # draw from the range with `forced` removed, then shift values past it
    rest = [2 + s if 2 + s < forced else 3 + s for s in sample_subset(rng, m - 3, k - 1)]
    sample = sorted(rest + [forced])
    return sample[k // 2]
