"""Acceptance criteria AC1-AC9 at full size.

Each criterion records a one-line ``detail`` with the measured numbers; the
conftest prints one PASS/FAIL line per criterion at the end of the run.
Seeds are fixed here and never tuned.
"""

import math
from collections import Counter

import pytest
from scipy import stats

from jumplists import Params
from jumplists.harness import (
    SAMPLERS,
    config_histogram,
    cost_list,
    delete_rebalance_costs,
    insert_rebalance_costs,
    memory_figures,
    run_fuzz,
    search_costs,
    search_probes,
)
from jumplists.oracle import (
    compare_distributions,
    conditional_jump_index_law,
    enumerate_configs,
    jump_index_law,
    permutation_distribution,
)
from jumplists.rng import RandomSource, draw_jump_index, draw_jump_index_conditional

from helpers import exhaust

pytestmark = pytest.mark.acceptance

SEED = 0
TV_MAX = 0.01
P_MIN = 1e-4
DIST_TRIALS = 200_000
DIST_CASES = [(1, 2, 6), (3, 4, 7)]

COST_N = 10**5
LN = math.log(COST_N)
SEARCH_LISTS = 50
SEARCH_PROBES = 1000
UPDATE_OPS = 10**4


def ids(cases):
    return [f"k{k}w{w}n{n}" for k, w, n in cases]


def test_ac1_permutation_law_is_exact(record_property):
    checked = 0
    for k, w in [(1, 2), (1, 3), (3, 4)]:
        params = Params(k, w)
        for n in range(1, 8):
            assert permutation_distribution(n, params) == enumerate_configs(n, params), (k, w, n)
            checked += 1
    record_property("detail", f"{checked} (k,w,n) cases equal as exact rationals")


def _distcheck(mode, k, w, n, record_property):
    params = Params(k, w)
    observed = config_histogram(SAMPLERS[mode], n, params, DIST_TRIALS, RandomSource((SEED, mode, k, w, n)))
    report = compare_distributions(observed, enumerate_configs(n, params))
    record_property("detail", f"k={k} w={w} n={n}: tv={report.total_variation:.4f} "
                              f"p={report.p_value:.3g} illegal={len(report.illegal)}")
    assert not report.illegal
    assert report.total_variation <= TV_MAX
    assert report.p_value >= P_MIN


@pytest.mark.parametrize("k,w,n", DIST_CASES, ids=ids(DIST_CASES))
def test_ac2_insert_built_lists_follow_the_law(k, w, n, record_property):
    _distcheck("insert-built", k, w, n, record_property)


@pytest.mark.parametrize("k,w,n", DIST_CASES, ids=ids(DIST_CASES))
def test_ac3_delete_perturbed_lists_follow_the_law(k, w, n, record_property):
    _distcheck("delete-perturbed", k, w, n, record_property)


@pytest.fixture(scope="module")
def search_corpus():
    """Spine and classic counts over 50 lists x 1000 sampled gaps per parameter pair."""
    corpus = {}
    for k, w in [(1, 2), (3, 4)]:
        spine, classic = [], []
        for trial in range(SEARCH_LISTS):
            rng = RandomSource.derive((SEED, "search", k, w), trial)
            lst = cost_list(COST_N, Params(k, w), rng)
            s, c = search_costs(lst, search_probes(COST_N, SEARCH_PROBES, rng))
            spine += s
            classic += c
        corpus[k] = (spine, classic)
    return corpus


def test_ac4_spine_search_constant(search_corpus, record_property):
    ratio = {k: sum(s) / len(s) / LN for k, (s, _) in search_corpus.items()}
    record_property("detail", f"spine/ln n: k=1 {ratio[1]:.3f} (window 1.7-2.3), "
                              f"k=3 {ratio[3]:.3f} (window 1.4-2.0)")
    assert all(len(s) >= 5 * 10**4 for s, _ in search_corpus.values())
    assert 1.7 <= ratio[1] <= 2.3
    assert 1.4 <= ratio[3] <= 2.0
    assert ratio[3] < ratio[1]


def test_ac5_spine_against_classic(search_corpus, record_property):
    violations = {k: sum(a > b for a, b in zip(s, c)) for k, (s, c) in search_corpus.items()}
    probes = len(search_corpus[1][0])
    _, classic = search_corpus[1]
    classic_ratio = sum(classic) / len(classic) / LN
    record_property("detail", f"classic/ln n k=1 {classic_ratio:.3f} (window 2.5-3.5); "
                              f"probes with spine > classic: k=1 {violations[1]}, k=3 {violations[3]} "
                              f"of {probes} each")
    assert 2.5 <= classic_ratio <= 3.5
    assert sum(violations.values()) == 0


@pytest.mark.parametrize("k,w,low,high", [(1, 2, 1.5, 2.5), (3, 4, 4.2, 6.2)], ids=["k1w2", "k3w4"])
def test_ac6_rebalanced_elements(k, w, low, high, record_property):
    params = Params(k, w)
    rng = RandomSource((SEED, "insert", k, w))
    ins = insert_rebalance_costs(cost_list(COST_N, params, rng), UPDATE_OPS, rng)
    rng = RandomSource((SEED, "delete", k, w))
    dele = delete_rebalance_costs(cost_list(COST_N, params, rng), UPDATE_OPS, rng)
    a, b = sum(ins) / len(ins) / LN, sum(dele) / len(dele) / LN
    record_property("detail", f"k={k} w={w}: insert {a:.3f}, delete {b:.3f} per ln n "
                              f"(window {low}-{high}, {UPDATE_OPS} ops each)")
    assert low <= a <= high
    assert low <= b <= high


def test_ac7_memory(record_property):
    n = 10**6
    fraction, words = memory_figures(cost_list(n, Params(1, 2), RandomSource((SEED, "mem", 2))))
    _, wide_words = memory_figures(cost_list(n, Params(1, 100), RandomSource((SEED, "mem", 100))))
    record_property("detail", f"w=2: jump fraction {fraction:.4f} (<= 0.687), words/key {words:.4f} "
                              f"(<= 2.36); w=100: words/key {wide_words:.4f} (<= 1.05)")
    assert fraction <= 2 / 3 + 0.02
    assert words <= 2.36
    assert wide_words <= 1.05


def test_ac8_fuzz(record_property):
    details = []
    for k, w in [(1, 2), (3, 4)]:
        result = run_fuzz(Params(k, w), 10**5, seed=SEED, max_size=10**4, check_every=1000)
        details.append(f"k={k} w={w}: {'ok' if result.ok else result.failure} peak={result.max_size}")
        record_property("detail", "; ".join(details))
        assert result.ok, result.failure
        assert result.max_size == 10**4


AC9_PAIRS = [(1, 5), (1, 12), (3, 10), (3, 30), (5, 40)]


@pytest.mark.parametrize("k,m", AC9_PAIRS, ids=[f"k{k}m{m}" for k, m in AC9_PAIRS])
def test_ac9_jump_index_sampler(k, m, record_property):
    draws = 10**6
    rng = RandomSource((SEED, "ac9", k, m))
    counts = Counter(draw_jump_index(rng, m, k) for _ in range(draws))
    law = {j: p for j, p in jump_index_law(m, Params(k, k + 1)).items() if p}
    assert set(counts) <= set(law)
    observed = [counts[j] for j in law]
    expected = [float(p) * draws for p in law.values()]
    p_value = stats.chisquare(observed, expected).pvalue
    record_property("detail", f"k={k} m={m}: chi-square p={p_value:.3g}")
    assert p_value >= P_MIN


def test_ac9_conditional_sampler_is_exact(record_property):
    cases = 0
    for k in (1, 3, 5):
        for m in range(k + 2, 13):
            for forced in range(2, m):
                law = exhaust(lambda rng: draw_jump_index_conditional(rng, m, k, forced))
                assert law == conditional_jump_index_law(m, k, forced), (k, m, forced)
                cases += 1
    record_property("detail", f"conditional sampler exact in {cases} (k, m, forced) cases")
