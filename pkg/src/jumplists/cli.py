"""jumplists command line: ``distcheck``, ``cost``, ``fuzz`` and ``dump``.

Exit status is 0 when the run passes, 1 when a check fails and 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import sys

from . import harness
from .core import InvalidParams, Params
from .oracle import GuardExceeded
from .rng import RandomSource


def _sizes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(float(part)) for part in text.split(",") if part)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse sizes {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=1, help="sample size (odd)")
    common.add_argument("--w", type=int, default=2, help="leaf size, at least k+1")
    common.add_argument("--seed", type=int, default=0, help="64-bit seed (default 0)")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")

    parser = argparse.ArgumentParser(prog="jumplists", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("distcheck", parents=[common], help="compare a configuration law with the exact one")
    p.add_argument("--mode", choices=harness.MODES, default="rebalance")
    p.add_argument("--n", type=int, default=5, help="number of keys")
    p.add_argument("--trials", type=int, default=200_000)

    p = sub.add_parser("cost", parents=[common], help="measure cost constants as CSV")
    p.add_argument("--metric", choices=harness.COST_METRICS, default="spine-search")
    p.add_argument("--sizes", type=_sizes, default=(1000,), help="comma separated, e.g. 1e3,1e4")
    p.add_argument("--trials", type=int, default=10, help="lists per size")
    p.add_argument("--probes", type=int, default=1000, help="probes or operations per list")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("fuzz", parents=[common], help="random operations against a reference set")
    p.add_argument("--ops", type=int, default=100_000)
    p.add_argument("--n", type=int, default=10_000, help="maximum set size")

    p = sub.add_parser("dump", parents=[common], help="print the structure of a seeded list")
    p.add_argument("--n", type=int, default=0, help="number of keys (1..n)")
    return parser


def _spec(args) -> harness.ExperimentSpec:
    return harness.ExperimentSpec(
        subcommand=args.subcommand,
        params=Params(args.k, args.w),
        n=getattr(args, "n", 0),
        sizes=getattr(args, "sizes", ()),
        trials=getattr(args, "trials", 1),
        probes=getattr(args, "probes", 1000),
        seed=args.seed,
        mode=getattr(args, "mode", "rebalance"),
        metric=getattr(args, "metric", "spine-search"),
        jobs=getattr(args, "jobs", 1),
        ops=getattr(args, "ops", 1),
    )


def _run(spec: harness.ExperimentSpec) -> tuple[str, int]:
    if spec.subcommand == "distcheck":
        result = harness.run_distcheck(spec)
        return harness.format_distcheck(spec, result), 0 if result.passed else 1
    if spec.subcommand == "cost":
        # the CSV itself must start with the header row; provenance goes to stderr
        print(harness.header_line(spec, metric=spec.metric, trials=spec.trials, probes=spec.probes),
              file=sys.stderr)
        rows = harness.run_cost(spec)
        return "\n".join([harness.CSV_HEADER] + [r.csv() for r in rows]) + "\n", 0
    if spec.subcommand == "fuzz":
        result = harness.run_fuzz(spec.params, spec.ops, spec.seed, max_size=spec.n)
        lines = [harness.header_line(spec, ops=spec.ops, max_size=spec.n)]
        if result.ok:
            lines.append(f"PASS ops={result.ops} peak_size={result.max_size}")
        else:
            rules = ",".join(sorted(result.rules)) or "mismatch"
            lines.append(f"FAIL rule={rules} {result.failure}")
            lines.append(f"reproduce: jumplists fuzz --k {spec.params.k} --w {spec.params.w} "
                         f"--seed {spec.seed} --ops {result.ops} --n {spec.n}")
        return "\n".join(lines) + "\n", 0 if result.ok else 1
    lst = harness.sample_rebalance(spec.n, spec.params, RandomSource(spec.seed))
    return harness.header_line(spec, n=spec.n) + "\n" + harness.dump_text(lst), 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = _spec(args)
        text, status = _run(spec)
    except (InvalidParams, GuardExceeded, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"jumplists: error: {exc}", file=sys.stderr)
        return 2
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
