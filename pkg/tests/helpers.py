"""Shared test utilities.

``exhaust`` runs a function against every possible sequence of random draws
and returns the exact law of its results.  Combined with the rational
configuration law this turns "insert preserves the distribution" into an
equality between two finite dictionaries, no sampling needed.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import comb

from jumplists.rng import RandomSource


class ReplaySource(RandomSource):
    """A random source that replays a fixed prefix of draws, then draws zeros."""

    def __init__(self, path):
        super().__init__(0)
        self.path = path
        self.bounds = []

    def uniform_below(self, bound: int) -> int:
        pos = len(self.bounds)
        if pos == len(self.path):
            self.path.append(0)
        self.bounds.append(bound)
        return self.path[pos]


def exhaust(fn) -> dict:
    """Exact law of ``fn(rng)`` over all draw sequences, as ``{result: Fraction}``."""
    law = defaultdict(Fraction)
    path = []
    while True:
        src = ReplaySource(path)
        result = fn(src)
        prob = Fraction(1)
        for b in src.bounds:
            prob /= b
        law[result] += prob
        # odometer step: later bounds depend only on earlier draws
        del path[len(src.bounds):]
        while path and path[-1] + 1 >= src.bounds[len(path) - 1]:
            path.pop()
        if not path:
            return dict(law)
        path[-1] += 1


def expected_rebalanced(n_max: int, k: int, w: int):
    """Exact expected rebalanced elements of one update, as two dicts keyed by n.

    ``ins[n]`` averages one insert into an ``n``-key list over its ``n + 1``
    gaps; ``dele[n]`` averages one delete from an ``(n + 1)``-key list over its
    keys.  The recurrences are written from the jump-index law alone: given
    the current top index, the change position is uniform within whichever
    sublist the restore descends into.  ``zi``/``zd`` cover the case where the
    change hits the sublist head.
    """
    t = (k - 1) // 2

    def weight(m, j):
        return Fraction(comb(j - 2, t) * comb(m - 1 - j, t), comb(m - 2, k))

    size = n_max + 3
    fi = [Fraction(0)] * (size + 1)
    zi = [Fraction(0)] * (size + 1)
    fd = [Fraction(0)] * (size + 1)
    zd = [Fraction(0)] * (size + 1)
    for m in range(1, size + 1):
        # insert: the sublist has m nodes now, m - 1 before
        if m <= w + 1:
            fi[m] = zi[m] = Fraction(m if m == w + 1 else 0)
        else:
            p = Fraction(k, m - 2)
            avg = head = Fraction(0)
            for j in range(2, m - 1):
                q = weight(m - 1, j)
                j1 = j - 1
                avg += q * (zi[j1 + 1] + j1 * fi[j1 + 1] + (m - 2 - j1) * fi[m - 1 - j1]) / (m - 1)
                head += q * zi[j1 + 1]
            fi[m] = p * m + (1 - p) * avg
            zi[m] = p * m + (1 - p) * head
        # delete: the sublist has m nodes now, m + 1 before
        if m > w:
            avg = head = Fraction(0)
            for j in range(2, m + 1):
                q = weight(m + 1, j)
                j1 = j - 1
                if k == 1:
                    pn, pj = Fraction(int(j1 == 1)), Fraction(0)
                else:
                    pn = Fraction(t, j1 - 1) if j1 > 1 else Fraction(0)
                    pj = Fraction(t, m - 1 - j1) if m - 1 - j1 > 0 else Fraction(0)
                nj = m - 1 - j1
                nxt = j1 * pn * m + (1 - pn) * (zd[j1 - 1] + (j1 - 1) * fd[j1 - 1])
                jmp = nj * (pj * m + (1 - pj) * fd[nj])
                avg += q * (nxt + m + jmp) / m
                head += q * (pn * m + (1 - pn) * zd[j1 - 1])
            fd[m] = avg
            zd[m] = head
    ins = {n: fi[n + 2] for n in range(n_max + 1)}
    dele = {n: fd[n + 1] for n in range(n_max + 1)}
    return ins, dele
