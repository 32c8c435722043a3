"""Leading-term cost constants per odd k, and the best k for a search share xi.

A workload where a fraction xi of the operations are searches and the rest
are updates costs about (xi + (1 - xi) k) / H(t) ln n per operation.

    python scripts/optimal_k.py
    python scripts/optimal_k.py --k-max 15 --grid 0.8,0.9,0.95,0.99
"""

import argparse

from jumplists import Params
from jumplists.theory import constants, optimal_k


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-max", type=int, default=11)
    ap.add_argument("--grid", default=",".join(f"{i / 10:.1f}" for i in range(11)))
    args = ap.parse_args()

    print("k\tH(t)\tsearch\trebalance\twords/key (w=k+1)")
    for k in range(1, args.k_max + 1, 2):
        c = constants(Params(k, k + 1))
        print(f"{k}\t{float(c.harmonic_gap):.4f}\t{float(c.search_coeff):.4f}\t"
              f"{float(c.rebal_coeff):.4f}\t{float(c.words_per_key):.4f}")
    print()
    print("xi\tbest k")
    for xi in (float(x) for x in args.grid.split(",")):
        print(f"{xi:g}\t{optimal_k(xi)}")


if __name__ == "__main__":
    main()
