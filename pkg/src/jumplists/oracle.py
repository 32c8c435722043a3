"""Exact configuration laws, fringe-balanced dangling-min BSTs and distance statistics.

Everything here is exact rational arithmetic and independent of the runtime
update code, so it can serve as ground truth for the randomized algorithms.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

from scipy import stats

from .core import Config, Leaf, Params, Split, config_is_legal, parse, render

MAX_CONFIGS = 10**6
MAX_PERMUTATION_N = 9


class GuardExceeded(ValueError):
    pass


def jump_index_weight(m: int, j: int, params: Params) -> Fraction:
    """Probability that the top jump of an ``m``-node sublist lands on index ``j``."""
    t, k = params.t, params.k
    return Fraction(math.comb(j - 2, t) * math.comb(m - 1 - j, t), math.comb(m - 2, k))


def jump_index_law(m: int, params: Params) -> dict[int, Fraction]:
    return {j: jump_index_weight(m, j, params) for j in range(2, m)}


def conditional_jump_index_law(m: int, k: int, forced: int) -> dict[int, Fraction]:
    """Median law of a ``k``-subset of ``[2, m - 1]`` containing ``forced``, by enumeration."""
    rest = [i for i in range(2, m) if i != forced]
    counts = Counter()
    for extra in itertools.combinations(rest, k - 1):
        counts[sorted(extra + (forced,))[k // 2]] += 1
    total = sum(counts.values())
    return {j: Fraction(c, total) for j, c in sorted(counts.items())}


@dataclass
class ExactDistribution:
    n: int
    params: Params
    entries: dict[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.entries = dict(sorted(self.entries.items()))

    def __getitem__(self, config: str) -> Fraction:
        return self.entries.get(config, Fraction(0))

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, ExactDistribution):
            return NotImplemented
        return self.n == other.n and self.params == other.params and self.entries == other.entries

    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def to_text(self) -> str:
        return "".join(f"{c}\t{p.numerator}/{p.denominator}\n" for c, p in self.entries.items())

    @classmethod
    def from_text(cls, text: str, n: int, params: Params) -> "ExactDistribution":
        entries = {}
        for line in text.splitlines():
            if line.strip():
                config, prob = line.split("\t")
                entries[config] = Fraction(prob)
        return cls(n, params, entries)


def enumerate_configs(n: int, params: Params) -> ExactDistribution:
    """Every configuration of positive probability on ``n`` keys, with its probability."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if _config_count(n + 1, params.k, params.w) > MAX_CONFIGS:
        raise GuardExceeded(f"more than {MAX_CONFIGS} configurations for n={n}")
    law = _configs(n + 1, params.k, params.w)
    return ExactDistribution(n, params, dict(law))


@lru_cache(maxsize=None)
def _config_count(m: int, k: int, w: int) -> int:
    if m <= w:
        return 1
    t = (k - 1) // 2
    return sum(_config_count(j - 1, k, w) * _config_count(m - j, k, w)
               for j in range(2, m) if j - 2 >= t and m - 1 - j >= t)


@lru_cache(maxsize=None)
def _configs(m: int, k: int, w: int) -> tuple[tuple[str, Fraction], ...]:
    if m <= w:
        return ((f"L{m}", Fraction(1)),)
    params = Params(k, w)
    out = []
    for j in range(2, m):
        weight = jump_index_weight(m, j, params)
        if not weight:
            continue
        for a, pa in _configs(j - 1, k, w):
            for b, pb in _configs(m - j, k, w):
                out.append((f"({j}:{a}{b})", weight * pa * pb))
    return tuple(out)


def config_probability(config: Union[Config, str], params: Params) -> Fraction:
    if isinstance(config, str):
        config = parse(config)
    if not config_is_legal(config, params):
        raise ValueError(f"{render(config)} is not a legal configuration for {params}")

    def p(c):
        if isinstance(c, Leaf):
            return Fraction(1)
        return jump_index_weight(c.m, c.j, params) * p(c.next) * p(c.jump)

    return p(config)


# ---------------------------------------------------------------------------
# dangling-min BSTs

@dataclass(frozen=True)
class MinLeaf:
    keys: tuple

    @property
    def count(self) -> int:
        return len(self.keys)


@dataclass(frozen=True)
class MinInner:
    root: object
    minimum: object
    left: "MinBST"
    right: "MinBST"

    @property
    def count(self) -> int:
        return 2 + self.left.count + self.right.count


MinBST = Union[MinLeaf, MinInner]


def minbst_from_permutation(perm, params: Params) -> MinBST:
    """Fringe-balanced dangling-min BST built from the insertion order ``perm``."""
    perm = list(perm)
    if len(set(perm)) != len(perm):
        raise ValueError("keys must be distinct")
    k, w = params.k, params.w

    def build(seq):
        if len(seq) <= w - 1:
            return MinLeaf(tuple(sorted(seq)))
        lowest = min(seq)
        rest = [x for x in seq if x != lowest]
        root = sorted(rest[:k])[k // 2]
        left = [x for x in rest if x < root]
        right = [x for x in rest if x > root]
        return MinInner(root, lowest, build(left), build(right))

    return build(perm)


def minbst_to_config(tree: MinBST) -> Config:
    if isinstance(tree, MinLeaf):
        return Leaf(tree.count + 1)
    left = minbst_to_config(tree.left)
    right = minbst_to_config(tree.right)
    return Split(tree.count + 1, left.m + 1, left, right)


def permutation_distribution(n: int, params: Params) -> ExactDistribution:
    """Configuration law induced by uniformly random insertion orders of ``n`` keys."""
    if n > MAX_PERMUTATION_N:
        raise GuardExceeded(f"n={n} exceeds the {MAX_PERMUTATION_N}! enumeration guard")
    counts = Counter(render(minbst_to_config(minbst_from_permutation(p, params)))
                     for p in itertools.permutations(range(1, n + 1)))
    total = math.factorial(n)
    return ExactDistribution(n, params, {c: Fraction(v, total) for c, v in counts.items()})


# ---------------------------------------------------------------------------
# comparing samples against exact laws

class IllegalConfig(AssertionError):
    pass


@dataclass
class DistanceReport:
    total_variation: float
    chi_square: float
    dof: int
    trials: int
    p_value: float
    illegal: list[str] = field(default_factory=list)


def compare_distributions(observed: Mapping[str, int], exact: ExactDistribution,
                          min_expected: float = 5.0) -> DistanceReport:
    """Total variation and pooled chi-square of a histogram against ``exact``.

    Cells whose expected count is below ``min_expected`` are merged into one
    bucket.  Observed configurations outside the support are collected in
    ``illegal``; callers treat any as a hard failure.
    """
    trials = sum(observed.values())
    if trials < 1:
        raise ValueError("need at least one observation")
    illegal = sorted(c for c, v in observed.items() if v and not exact[c])
    tv = Fraction(0)
    for config in set(observed) | set(exact.entries):
        tv += abs(Fraction(observed.get(config, 0), trials) - exact[config])
    tv /= 2

    obs_cells, exp_cells = [], []
    pooled_obs, pooled_exp = 0, 0.0
    for config, p in exact.entries.items():
        expected = float(p) * trials
        if expected < min_expected:
            pooled_obs += observed.get(config, 0)
            pooled_exp += expected
        else:
            obs_cells.append(observed.get(config, 0))
            exp_cells.append(expected)
    if pooled_exp > 0:
        obs_cells.append(pooled_obs)
        exp_cells.append(pooled_exp)
    chi2 = sum((o - e) ** 2 / e for o, e in zip(obs_cells, exp_cells))
    dof = max(len(obs_cells) - 1, 0)
    p_value = float(stats.chi2.sf(chi2, dof)) if dof else 1.0
    return DistanceReport(float(tv), chi2, dof, trials, p_value, illegal)
