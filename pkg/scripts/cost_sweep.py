"""Sweep every cost metric over list sizes and report measured/ln n next to theory.

    python scripts/cost_sweep.py --sizes 1e3,1e4,1e5 --trials 20 --jobs 4
    python scripts/cost_sweep.py --k 3 --w 4 --metrics spine-search,insert-rebal --out k3.csv

Output is CSV: the harness columns plus ``ratio`` (mean / ln n for the
logarithmic metrics, mean itself for the memory figures) and ``theory``.
"""

import argparse
import math
import sys

from jumplists import Params, harness, theory


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--w", type=int, default=2)
    ap.add_argument("--sizes", default="1e3,1e4,1e5")
    ap.add_argument("--metrics", default=",".join(harness.COST_METRICS))
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--probes", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    params = Params(args.k, args.w)
    sizes = tuple(int(float(s)) for s in args.sizes.split(","))
    lines = [harness.CSV_HEADER + ",ratio,theory"]
    for metric in args.metrics.split(","):
        spec = harness.ExperimentSpec("cost", params=params, sizes=sizes, trials=args.trials,
                                      probes=args.probes, seed=args.seed, metric=metric, jobs=args.jobs)
        for row in harness.run_cost(spec):
            logarithmic = metric not in ("jump-fraction", "words-per-key")
            scale = math.log(row.n) if logarithmic else 1.0
            coeff = row.prediction / scale
            lines.append(f"{row.csv()},{row.mean / scale:.4f},{coeff:.4f}")
            print(lines[-1], file=sys.stderr)
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


if __name__ == "__main__":
    main()
