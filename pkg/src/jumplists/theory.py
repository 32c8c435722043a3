"""Leading-term cost predictions for median-of-k jumplists."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import Params


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def harmonic_gap(k: int) -> Fraction:
    """``H_{k+1} - H_{t+1}`` for ``k = 2t + 1``."""
    if not isinstance(k, int) or k < 1 or k % 2 == 0:
        raise ValueError(f"k must be a positive odd integer, got {k!r}")
    t = (k - 1) // 2
    return harmonic(k + 1) - harmonic(t + 1)


@dataclass(frozen=True)
class TheoryConstants:
    k: int
    w: int
    harmonic_gap: Fraction
    search_coeff: Fraction
    classic_coeff: Fraction
    rebal_coeff: Fraction
    words_per_key: Fraction
    jump_fraction_bound: Fraction


def constants(params: Params) -> TheoryConstants:
    h = harmonic_gap(params.k)
    jump_fraction = 1 / ((params.w + 1) * h)
    return TheoryConstants(
        k=params.k,
        w=params.w,
        harmonic_gap=h,
        search_coeff=1 / h,
        # 3 ln n is the known k = 1 value; each backbone step costs a second
        # comparison, and half the descent steps are backbone steps.
        classic_coeff=Fraction(3, 2) / h,
        rebal_coeff=params.k / h,
        words_per_key=1 + 2 * jump_fraction,
        jump_fraction_bound=jump_fraction,
    )


METRICS = ("search", "classic_search", "insert_rebal", "delete_rebal", "words_per_key", "jump_fraction")

_ALIASES = {
    "spine-search": "search",
    "spine_search": "search",
    "classic-search": "classic_search",
    "insert-rebal": "insert_rebal",
    "delete-rebal": "delete_rebal",
    "words-per-key": "words_per_key",
    "jump-fraction": "jump_fraction",
}


def canonical_metric(metric: str) -> str:
    name = _ALIASES.get(metric, metric)
    if name not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {', '.join(METRICS)}")
    return name


def predict(metric: str, n: int, params: Params) -> float:
    """Leading-term prediction: ``coefficient * ln n``, or the n-free memory figures."""
    name = canonical_metric(metric)
    if n < 2:
        raise ValueError("predictions need n >= 2")
    c = constants(params)
    if name == "words_per_key":
        return float(c.words_per_key)
    if name == "jump_fraction":
        return float(c.jump_fraction_bound)
    coeff = {
        "search": c.search_coeff,
        "classic_search": c.classic_coeff,
        "insert_rebal": c.rebal_coeff,
        "delete_rebal": c.rebal_coeff,
    }[name]
    return float(coeff) * math.log(n)


def optimal_k(xi: float, k_max: int = 99) -> int:
    """Odd ``k`` minimizing ``xi / H(t) + (1 - xi) k / H(t)``."""
    best = min(range(1, k_max + 1, 2),
               key=lambda k: (xi + (1 - xi) * k) / float(harmonic_gap(k)))
    return best
