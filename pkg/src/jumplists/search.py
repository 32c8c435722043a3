"""Spine search, classic jump-and-walk search, membership and rank-select.

Comparison counts cover every evaluation of a ``key < x`` predicate, including
the ones made against the sentinel (which resolve to false without touching
the key).  The equality test that decides ``found`` is not counted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import SENTINEL, JumpList, Node


@dataclass
class SearchResult:
    rank: int
    found: bool
    comparisons: int
    sentinel_comparisons: int = 0


def _spine(head: Node, x):
    """Last node with key < x below ``head``, its index, and comparison counts."""
    comps = 0
    idx = 0
    last, last_idx = head, 0
    node = head
    while node.jump is not None:
        comps += 1
        if node.jump.key < x:
            idx += node.nsize + 1
            node = node.jump
            last, last_idx = node, idx
        else:
            node = node.next
            idx += 1
    node, idx = last, last_idx
    hits = 0
    while True:
        nxt = node.next
        comps += 1
        if nxt is SENTINEL:
            hits = 1
            break
        if not nxt.key < x:
            break
        node = nxt
        idx += 1
    return node, idx, comps, hits


def _classic(head: Node, x):
    comps = 0
    idx = 0
    node = head
    hits = 0
    while True:
        if node.jump is not None:
            comps += 1
            if node.jump.key < x:
                idx += node.nsize + 1
                node = node.jump
                continue
        nxt = node.next
        comps += 1
        if nxt is SENTINEL:
            hits += 1
            break
        if not nxt.key < x:
            break
        node = nxt
        idx += 1
    return node, idx, comps, hits


def _found(node: Node, x) -> bool:
    nxt = node.next
    return nxt is not SENTINEL and nxt.key == x


def spine_search(lst: JumpList, x, counter=None) -> SearchResult:
    node, rank, comps, hits = _spine(lst.header, x)
    if counter is not None:
        counter.comparisons += comps
    return SearchResult(rank, _found(node, x), comps, hits)


def classic_search(lst: JumpList, x, counter=None) -> SearchResult:
    node, rank, comps, hits = _classic(lst.header, x)
    if counter is not None:
        counter.comparisons += comps
    return SearchResult(rank, _found(node, x), comps, hits)


def contains(lst: JumpList, x) -> tuple[bool, int]:
    node, rank, _, _ = _spine(lst.header, x)
    return _found(node, x), rank


def rank_select(lst: JumpList, rank: int):
    """Key of zero-based ``rank``; walks ``nsize`` fields only, no key comparisons."""
    if not 0 <= rank < lst.size:
        raise IndexError(f"rank {rank} out of range for {lst.size} keys")
    r = rank + 1
    node = lst.header
    while node.jump is not None:
        if r > node.nsize:
            r -= node.nsize + 1
            node = node.jump
        else:
            r -= 1
            node = node.next
        if r == 0:
            return node.key
    while r:
        node = node.next
        r -= 1
    return node.key
