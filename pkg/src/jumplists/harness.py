"""Experiment machinery behind the command line: distribution checks, cost
measurements, fuzzing and structure dumps."""

from __future__ import annotations

import bisect
import math
import statistics
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import oracle, theory
from .core import JumpList, Params, extract_config, from_sorted, render, validate
from .rng import GENERATOR, RandomSource
from .search import _classic, _spine, contains, rank_select
from .update import delete, insert

MODES = ("rebalance", "insert-built", "delete-perturbed", "permutation")
COST_METRICS = ("spine-search", "classic-search", "insert-rebal", "delete-rebal",
                "jump-fraction", "words-per-key")
FULL_SWEEP_MAX_N = 10**4


@dataclass(frozen=True)
class Thresholds:
    # a correct implementation fails roughly once in 10^4 seeded runs
    tv_max: float = 0.01
    p_min: float = 1e-4
    min_expected: float = 5.0


@dataclass
class ExperimentSpec:
    subcommand: str
    params: Params = field(default_factory=Params)
    n: int = 5
    sizes: tuple[int, ...] = ()
    trials: int = 1
    probes: int = 1000
    seed: int = 0
    mode: str = "rebalance"
    metric: str = "spine-search"
    jobs: int = 1
    ops: int = 1

    def __post_init__(self):
        for name in ("n", "trials", "probes", "jobs", "ops"):
            value = getattr(self, name)
            if value < 0 or (value == 0 and name != "n"):
                raise ValueError(f"--{name} must be positive, got {value}")
        if any(s < 2 for s in self.sizes):
            raise ValueError("--sizes entries must be at least 2")


def header_line(spec: ExperimentSpec, **extra) -> str:
    fields = {"k": spec.params.k, "w": spec.params.w, **extra, "seed": spec.seed, "generator": GENERATOR}
    return f"# {spec.subcommand} " + " ".join(f"{k}={v}" for k, v in fields.items())


# ---------------------------------------------------------------------------
# distribution checks

def sample_rebalance(n: int, params: Params, rng: RandomSource) -> JumpList:
    return from_sorted(range(1, n + 1), params, rng)


def sample_insert_built(n: int, params: Params, rng: RandomSource) -> JumpList:
    keys = list(range(1, n + 1))
    rng.shuffle(keys)
    lst = JumpList(params, rng)
    for key in keys:
        insert(lst, key)
    return lst


def sample_delete_perturbed(n: int, params: Params, rng: RandomSource) -> JumpList:
    lst = from_sorted(range(1, n + 2), params, rng)
    delete(lst, 1 + rng.uniform_below(n + 1))
    return lst


SAMPLERS = {
    "rebalance": sample_rebalance,
    "insert-built": sample_insert_built,
    "delete-perturbed": sample_delete_perturbed,
}

INVALID = "INVALID"


def config_histogram(sampler: Callable, n: int, params: Params, trials: int,
                     rng: RandomSource) -> Counter:
    counts = Counter()
    for _ in range(trials):
        lst = sampler(n, params, rng)
        try:
            counts[render(extract_config(lst))] += 1
        except ValueError:
            counts[INVALID] += 1
    return counts


@dataclass
class DistcheckResult:
    exact: oracle.ExactDistribution
    observed: Counter
    report: oracle.DistanceReport
    passed: bool


def run_distcheck(spec: ExperimentSpec, thresholds: Thresholds = Thresholds()) -> DistcheckResult:
    if spec.mode not in MODES:
        raise ValueError(f"unknown mode {spec.mode!r}; expected one of {', '.join(MODES)}")
    exact = oracle.enumerate_configs(spec.n, spec.params)
    if spec.mode == "permutation":
        law = oracle.permutation_distribution(spec.n, spec.params)
        # scale both laws to a common integer histogram so the report is exact
        denom = math.lcm(*(p.denominator for p in law.entries.values()))
        observed = Counter({c: int(p * denom) for c, p in law.entries.items()})
        report = oracle.compare_distributions(observed, exact, thresholds.min_expected)
        return DistcheckResult(exact, observed, report, law == exact)
    rng = RandomSource(spec.seed)
    observed = config_histogram(SAMPLERS[spec.mode], spec.n, spec.params, spec.trials, rng)
    report = oracle.compare_distributions(observed, exact, thresholds.min_expected)
    passed = (not report.illegal and report.total_variation <= thresholds.tv_max
              and report.p_value >= thresholds.p_min)
    return DistcheckResult(exact, observed, report, passed)


def format_distcheck(spec: ExperimentSpec, result: DistcheckResult) -> str:
    trials = result.report.trials
    lines = [header_line(spec, mode=spec.mode, n=spec.n, trials=spec.trials),
             "config\texact\texpected\tobserved"]
    for config, p in result.exact.entries.items():
        lines.append(f"{config}\t{p.numerator}/{p.denominator}\t{float(p) * trials:.1f}\t"
                     f"{result.observed.get(config, 0)}")
    for config in result.report.illegal:
        lines.append(f"{config}\t0\t0.0\t{result.observed[config]}\tILLEGAL")
    r = result.report
    lines.append(f"tv={r.total_variation:.6f} chi2={r.chi_square:.4f} dof={r.dof} p={r.p_value:.6g}")
    lines.append("PASS" if result.passed else "FAIL")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# cost measurements

def gap_probe(g: int) -> int:
    """Search key falling in gap ``g`` of a list built on keys 0, 2, 4, ..."""
    return 2 * g - 1


def cost_list(n: int, params: Params, rng: RandomSource) -> JumpList:
    return from_sorted(range(0, 2 * n, 2), params, rng)


def search_probes(n: int, probes: int, rng: RandomSource) -> list[int]:
    if n <= FULL_SWEEP_MAX_N:
        return [gap_probe(g) for g in range(n + 1)]
    return [gap_probe(rng.uniform_below(n + 1)) for _ in range(probes)]


def search_costs(lst: JumpList, xs) -> tuple[list[int], list[int]]:
    """Spine and classic comparison counts for each probe."""
    head = lst.header
    spine = [_spine(head, x)[2] for x in xs]
    classic = [_classic(head, x)[2] for x in xs]
    return spine, classic


def insert_rebalance_costs(lst: JumpList, probes: int, rng: RandomSource) -> list[int]:
    """Rebalanced elements of inserts at uniform gaps; each key is removed again."""
    out = []
    for _ in range(probes):
        x = gap_probe(rng.uniform_below(lst.size + 1))
        _, cost = insert(lst, x, rng)
        out.append(cost.rebalanced_elements)
        delete(lst, x, rng)
    return out


def delete_rebalance_costs(lst: JumpList, probes: int, rng: RandomSource) -> list[int]:
    """Rebalanced elements of deleting uniform keys; each key is put back."""
    out = []
    for _ in range(probes):
        x = 2 * rng.uniform_below(lst.size)
        _, cost = delete(lst, x, rng)
        out.append(cost.rebalanced_elements)
        insert(lst, x, rng)
    return out


def memory_figures(lst: JumpList) -> tuple[float, float]:
    """Jump-node fraction (header excluded) and words per key."""
    n = lst.size
    jumps = sum(1 for v in lst.nodes()[1:] if v.jump is not None)
    return jumps / n, (3 * (jumps + 1) + (n - jumps)) / n


def measure_one(metric: str, n: int, params: Params, probes: int, seed, trial: int) -> float:
    rng = RandomSource.derive(seed, f"{n}:{trial}")
    lst = cost_list(n, params, rng)
    if metric in ("spine-search", "classic-search"):
        xs = search_probes(n, probes, rng)
        spine, classic = search_costs(lst, xs)
        values = spine if metric == "spine-search" else classic
        return sum(values) / len(values)
    if metric == "insert-rebal":
        return statistics.fmean(insert_rebalance_costs(lst, probes, rng))
    if metric == "delete-rebal":
        return statistics.fmean(delete_rebalance_costs(lst, probes, rng))
    fraction, words = memory_figures(lst)
    return fraction if metric == "jump-fraction" else words


def _measure(args):
    return measure_one(*args)


@dataclass
class CostRow:
    n: int
    k: int
    w: int
    trials: int
    metric: str
    mean: float
    stderr: float
    prediction: float

    def csv(self) -> str:
        return (f"{self.n},{self.k},{self.w},{self.trials},{self.metric},"
                f"{self.mean:.6f},{self.stderr:.6f},{self.prediction:.6f}")


CSV_HEADER = "n,k,w,trials,metric,mean,stderr,prediction"


def run_cost(spec: ExperimentSpec) -> list[CostRow]:
    if spec.metric not in COST_METRICS:
        raise ValueError(f"unknown metric {spec.metric!r}; expected one of {', '.join(COST_METRICS)}")
    tasks = [(spec.metric, n, spec.params, spec.probes, spec.seed, i)
             for n in spec.sizes for i in range(spec.trials)]
    if spec.jobs > 1:
        with ProcessPoolExecutor(spec.jobs) as pool:
            values = list(pool.map(_measure, tasks, chunksize=1))
    else:
        values = [_measure(t) for t in tasks]
    rows = []
    for idx, n in enumerate(spec.sizes):
        per_list = values[idx * spec.trials:(idx + 1) * spec.trials]
        mean = statistics.fmean(per_list)
        stderr = statistics.stdev(per_list) / math.sqrt(len(per_list)) if len(per_list) > 1 else float("nan")
        rows.append(CostRow(n, spec.params.k, spec.params.w, spec.trials, spec.metric, mean, stderr,
                            theory.predict(spec.metric, n, spec.params)))
    return rows


# ---------------------------------------------------------------------------
# fuzzing

@dataclass
class FuzzResult:
    ok: bool
    ops: int
    seed: int
    failure: str = ""
    rules: set = field(default_factory=set)
    max_size: int = 0


def run_fuzz(params: Params, ops: int, seed: int, max_size: int = 10**4, check_every: int = 1000,
             tamper: Callable[[JumpList, int], None] | None = None) -> FuzzResult:
    """Random insert/delete/contains/rank_select traffic checked against a sorted list."""
    rng = RandomSource(seed)
    driver = RandomSource((seed, "ops"))
    lst = JumpList(params, rng)
    ref: list[int] = []
    universe = 2 * max_size
    peak = 0

    def fail(step, message, rules=()):
        return FuzzResult(False, step + 1, seed, f"op {step}: {message}", set(rules), peak)

    def operate(step) -> str | None:
        roll = driver.uniform_below(100)
        if len(ref) >= max_size:
            roll = 50
        x = driver.uniform_below(universe)
        pos = bisect.bisect_left(ref, x)
        present = pos < len(ref) and ref[pos] == x
        if roll < 45:
            inserted, _ = insert(lst, x)
            if inserted == present:
                return f"insert({x}) returned {inserted}"
            if inserted:
                ref.insert(pos, x)
        elif roll < 75:
            removed, _ = delete(lst, x)
            if removed != present:
                return f"delete({x}) returned {removed}"
            if removed:
                del ref[pos]
        elif roll < 88:
            got = contains(lst, x)
            if got != (present, pos):
                return f"contains({x}) = {got}, expected {(present, pos)}"
        elif ref:
            r = driver.uniform_below(len(ref))
            got = rank_select(lst, r)
            if got != ref[r]:
                return f"rank_select({r}) = {got}, expected {ref[r]}"
        return None

    def check() -> tuple[str | None, set]:
        report = validate(lst)
        if not report.ok:
            return f"invalid structure: {report.violations[:3]}", report.rules()
        if lst.size != len(ref) or list(lst) != ref:
            return "iteration disagrees with the reference set", set()
        for r, key in enumerate(ref):
            if rank_select(lst, r) != key:
                return f"rank_select({r}) disagrees with the reference set", set()
        return None, set()

    for step in range(ops):
        try:
            message = operate(step)
        except Exception as exc:  # a corrupt structure can break any traversal
            return fail(step, f"{type(exc).__name__}: {exc}", validate(lst).rules())
        if message:
            return fail(step, message, validate(lst).rules())
        peak = max(peak, len(ref))
        if tamper is not None:
            tamper(lst, step)
        if (step + 1) % check_every == 0 or step == ops - 1:
            message, rules = check()
            if message:
                return fail(step, message, rules)
    return FuzzResult(True, ops, seed, max_size=peak)


# ---------------------------------------------------------------------------
# dumps

def dump_text(lst: JumpList) -> str:
    """Canonical config string, then the sublist tree with keys and nsize values."""
    nodes = lst.nodes()
    index = {id(v): i for i, v in enumerate(nodes)}
    lines = [render(extract_config(lst))]

    def label(i):
        return "-inf" if i == 0 else repr(nodes[i].key)

    def walk(lo, m, depth):
        pad = "  " * depth
        head = nodes[lo]
        if head.jump is None:
            keys = " ".join(label(i) for i in range(lo, lo + m))
            lines.append(f"{pad}leaf[{m}]: {keys}")
            return
        j = index[id(head.jump)] - lo
        lines.append(f"{pad}jump[{m}] {label(lo)} -> {label(lo + j)} nsize={head.nsize}")
        walk(lo + 1, j - 1, depth + 1)
        walk(lo + j, m - j, depth + 1)

    walk(0, len(nodes), 0)
    return "\n".join(lines) + "\n"
