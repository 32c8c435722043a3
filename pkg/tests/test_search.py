import bisect

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jumplists import Params, from_sorted, new
from jumplists.core import from_links
from jumplists.rng import RandomSource
from jumplists.search import _classic, classic_search, contains, rank_select, spine_search
from jumplists.update import CostRecord

K1W2 = Params(1, 2)


@pytest.fixture
def shallow():
    # keys 1..3, header jumps to key 3: config (3:L2L1)
    return from_links([1, 2, 3], {0: 3}, K1W2)


@pytest.fixture
def deeper():
    # keys 1..4, header jumps to key 4 and key 1 jumps to key 3: (4:(2:L1L1)L1)
    return from_links([1, 2, 3, 4], {0: 4, 1: 3}, K1W2)


@pytest.mark.parametrize("x,rank,spine,classic", [
    (0.5, 0, 2, 2),
    (2.5, 2, 4, 4),
    (3.5, 3, 2, 2),
])
def test_hand_counted_shallow(shallow, x, rank, spine, classic):
    s = spine_search(shallow, x)
    c = classic_search(shallow, x)
    assert (s.rank, s.comparisons) == (rank, spine)
    assert (c.rank, c.comparisons) == (rank, classic)


@pytest.mark.parametrize("x,rank,spine,classic", [
    (2.5, 2, 5, 5),
    # the spine descent remembers key 3 and scans only one step from there
    (3.5, 3, 3, 4),
    (4.5, 4, 2, 2),
    # below the minimum: the classic walk stops after one failed next-step,
    # the spine descent still runs down the whole left spine first
    (0.5, 0, 3, 2),
])
def test_hand_counted_deeper(deeper, x, rank, spine, classic):
    assert spine_search(deeper, x).comparisons == spine
    assert classic_search(deeper, x).comparisons == classic
    assert spine_search(deeper, x).rank == classic_search(deeper, x).rank == rank


def test_sentinel_comparisons_reported(shallow):
    r = spine_search(shallow, 10)
    assert r.sentinel_comparisons == 1
    assert spine_search(shallow, 0).sentinel_comparisons == 0


def test_empty_list():
    lst = new()
    r = spine_search(lst, 5)
    assert (r.rank, r.found, r.comparisons, r.sentinel_comparisons) == (0, False, 1, 1)
    assert contains(lst, 5) == (False, 0)
    with pytest.raises(IndexError):
        rank_select(lst, 0)


def test_counter_accumulates(deeper):
    cost = CostRecord()
    spine_search(deeper, 3.5, counter=cost)
    classic_search(deeper, 3.5, counter=cost)
    assert cost.comparisons == 7


def test_found_flag(deeper):
    assert spine_search(deeper, 3).found
    assert spine_search(deeper, 3).rank == 2
    assert not spine_search(deeper, 3.1).found


@st.composite
def lists_and_probes(draw):
    k, w = draw(st.sampled_from([(1, 2), (1, 3), (3, 4), (5, 8)]))
    keys = sorted(draw(st.sets(st.integers(-500, 500), max_size=200)))
    seed = draw(st.integers(0, 2**31))
    probes = draw(st.lists(st.integers(-510, 510), min_size=1, max_size=30))
    return from_sorted(keys, Params(k, w), RandomSource(seed)), keys, probes


@given(lists_and_probes())
@settings(max_examples=120, deadline=None)
def test_searches_agree_with_bisect(data):
    lst, keys, probes = data
    for x in probes:
        rank = bisect.bisect_left(keys, x)
        s, c = spine_search(lst, x), classic_search(lst, x)
        assert s.rank == c.rank == rank
        assert s.found == c.found == (x in keys)
        assert contains(lst, x) == (x in keys, rank)


@given(lists_and_probes())
@settings(max_examples=120, deadline=None)
def test_spine_dominates_unless_classic_stops_early(data):
    # the classic walk can stop at a jump node once next.key >= x; when it
    # instead reaches a plain node it has paid for every left step the spine
    # descent rescans, so it cannot be cheaper
    lst, keys, probes = data
    for x in probes + [k + 0.5 for k in keys]:
        end = _classic(lst.header, x)[0]
        if end.jump is None:
            assert spine_search(lst, x).comparisons <= classic_search(lst, x).comparisons


@given(lists_and_probes())
@settings(max_examples=60, deadline=None)
def test_rank_select_matches_sorted_keys(data):
    lst, keys, _ = data
    assert [rank_select(lst, r) for r in range(len(keys))] == keys
    for bad in (-1, len(keys)):
        with pytest.raises(IndexError):
            rank_select(lst, bad)
