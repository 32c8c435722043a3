"""Expected rebalanced elements per update: exact recurrence against simulation.

The recurrence is the floating-point twin of ``expected_rebalanced`` in the
test helpers (which is checked there, in exact arithmetic, against exhaustive
runs of insert and delete).  It runs in O(n^2) time, so n up to a few 10^4 is
quick and 10^5 takes a minute or two.

The cost of a single update is heavy-tailed: a sublist of m nodes is rebuilt
with probability about k/m, so a few rare operations carry a sizeable share of
the mean.  The simulation prints the standard error next to its mean and also
the share of the measured total carried by rebuilds larger than n/10.

    python scripts/rebalance_expectation.py --k 3 --w 4 --n 100000
    python scripts/rebalance_expectation.py --k 3 --w 4 --n 10000 --ops 200000
"""

import argparse
import math
import statistics

import numpy as np
from scipy.special import comb

from jumplists import Params
from jumplists.harness import cost_list, delete_rebalance_costs, insert_rebalance_costs
from jumplists.rng import RandomSource


def recurrence(n, k, w):
    """Expected rebalanced elements of one insert into / delete from an n-key list."""
    t = (k - 1) // 2
    size = n + 3
    fi, zi, fd, zd = (np.zeros(size + 1) for _ in range(4))
    for m in range(1, size + 1):
        if m <= w + 1:
            fi[m] = zi[m] = m if m == w + 1 else 0
        else:
            p = k / (m - 2)
            j = np.arange(2, m - 1)
            q = comb(j - 2, t) * comb(m - 2 - j, t) / comb(m - 3, k)
            j1 = j - 1
            avg = np.dot(q, (zi[j1 + 1] + j1 * fi[j1 + 1] + (m - 2 - j1) * fi[m - 1 - j1]) / (m - 1))
            fi[m] = p * m + (1 - p) * avg
            zi[m] = p * m + (1 - p) * np.dot(q, zi[j1 + 1])
        if m > w:
            j = np.arange(2, m + 1)
            q = comb(j - 2, t) * comb(m - j, t) / comb(m - 1, k)
            j1 = j - 1
            nj = m - 1 - j1
            if k == 1:
                pn, pj = (j1 == 1).astype(float), np.zeros(len(j))
            else:
                pn = t / np.maximum(j1 - 1, 1) * (j1 > 1)
                pj = t / np.maximum(nj, 1) * (nj > 0)
            nxt = j1 * pn * m + (1 - pn) * (zd[np.maximum(j1 - 1, 0)] + (j1 - 1) * fd[np.maximum(j1 - 1, 0)])
            jmp = nj * (pj * m + (1 - pj) * fd[nj])
            fd[m] = np.dot(q, (nxt + m + jmp) / m)
            zd[m] = np.dot(q, pn * m + (1 - pn) * zd[np.maximum(j1 - 1, 0)])
    return fi[n + 2], fd[n]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--w", type=int, default=4)
    ap.add_argument("--n", type=int, default=10_000)
    ap.add_argument("--ops", type=int, default=0, help="simulated operations per kind (0 skips)")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    params = Params(args.k, args.w)
    ln = math.log(args.n)
    ins, dele = recurrence(args.n, args.k, args.w)
    print(f"# k={args.k} w={args.w} n={args.n} ln n={ln:.4f}")
    print(f"exact    insert {ins:.3f} ({ins / ln:.4f} ln n)  delete {dele:.3f} ({dele / ln:.4f} ln n)")
    if args.ops:
        for name, measure in (("insert", insert_rebalance_costs), ("delete", delete_rebalance_costs)):
            rng = RandomSource((args.seed, name, args.k, args.w))
            costs = measure(cost_list(args.n, params, rng), args.ops, rng)
            mean = statistics.fmean(costs)
            se = statistics.stdev(costs) / math.sqrt(len(costs))
            big = sum(c for c in costs if c > args.n / 10) / max(sum(costs), 1)
            print(f"measured {name} {mean:.3f} +- {se:.3f} ({mean / ln:.4f} ln n), "
                  f"median {statistics.median(costs):.0f}, share of rebuilds > n/10: {big:.3f}")


if __name__ == "__main__":
    main()
