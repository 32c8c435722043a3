"""Distribution-preserving rebalance, insert and delete.

Nodes are reused in place: a rebalance rewrites the ``jump``/``nsize`` fields
of the sublist's nodes instead of allocating replacements, and the two
"swap the roles of head and successor" maneuvers move the jump fields rather
than the keys.  Sublist heads therefore never change identity, so the
backbone never needs to be reconnected after a recursive restore.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import SENTINEL, JumpList, Node, Params
from .rng import RandomSource, coin_flip, draw_jump_index, draw_jump_index_conditional
from .search import _spine


@dataclass
class CostRecord:
    comparisons: int = 0
    rebalanced_elements: int = 0
    link_updates: int = 0

    def __iadd__(self, other: "CostRecord"):
        self.comparisons += other.comparisons
        self.rebalanced_elements += other.rebalanced_elements
        self.link_updates += other.link_updates
        return self


@dataclass(frozen=True)
class DeletedNode:
    """What a restore needs to know about an unlinked node."""

    key: object
    jump: Node | None
    nsize: int


def _collect(head: Node, m: int) -> list[Node]:
    nodes = [head]
    node = head
    for _ in range(m - 1):
        node = node.next
        nodes.append(node)
    if node is SENTINEL:
        raise ValueError(f"sublist of {m} nodes runs into the sentinel")
    return nodes


def _draw(nodes, lo, m, params, rng, forced=None):
    """Redraw all jumps of ``nodes[lo:lo + m]``; ``forced`` fixes the top index."""
    k, w = params.k, params.w
    stack = [(lo, m, forced)]
    while stack:
        lo, m, j = stack.pop()
        if m <= w:
            for i in range(lo, lo + m):
                v = nodes[i]
                v.jump = None
                v.nsize = 0
            continue
        if j is None:
            j = draw_jump_index(rng, m, k)
        head = nodes[lo]
        head.jump = nodes[lo + j]
        head.nsize = j - 1
        stack.append((lo + j, m - j, None))
        stack.append((lo + 1, j - 1, None))


def rebalance(head: Node, m: int, params: Params, rng: RandomSource,
              cost: CostRecord | None = None) -> Node:
    """Draw fresh jumps for the ``m``-node sublist at ``head``; returns its last node."""
    nodes = _collect(head, m)
    _draw(nodes, 0, m, params, rng)
    if cost is not None:
        cost.rebalanced_elements += m
        cost.link_updates += m
    return nodes[-1]


def set_jump_and_rebalance(head: Node, m: int, j: int, params: Params, rng: RandomSource,
                           cost: CostRecord | None = None) -> Node:
    """Rebalance with the top jump pinned to index ``j``; returns the last node."""
    if m <= params.w:
        raise ValueError(f"a sublist of {m} <= w nodes has no jump")
    if not 2 <= j <= m - 1:
        raise ValueError(f"jump index {j} outside [2, {m - 1}]")
    nodes = _collect(head, m)
    _draw(nodes, 0, m, params, rng, forced=j)
    if cost is not None:
        cost.rebalanced_elements += m
        cost.link_updates += m
    return nodes[-1]


def restore_after_insert(head: Node, m: int, r: int, params: Params, rng: RandomSource,
                         cost: CostRecord | None = None) -> Node:
    """Restore the jump distribution of a sublist that just gained the node at index ``r``.

    ``m`` counts the sublist's nodes including the new one.
    """
    if cost is None:
        cost = CostRecord()
    k, w = params.k, params.w
    top = head
    while True:
        if not 0 <= r < m:
            raise ValueError(f"insert position {r} outside a sublist of {m} nodes")
        if m <= w + 1:
            if m == w + 1:
                rebalance(head, m, params, rng, cost)
            return top
        if coin_flip(rng, Fraction(k, m - 2)):
            # new element belongs to the sample: redraw conditional on it
            j = draw_jump_index_conditional(rng, m, k, max(r, 2))
            set_jump_and_rebalance(head, m, j, params, rng, cost)
            return top
        if r == 0:
            # the new node heads this sublist; it inherits its successor's jump
            succ = head.next
            head.jump, head.nsize = succ.jump, succ.nsize
            succ.jump, succ.nsize = None, 0
            cost.link_updates += 2
        j1 = head.nsize
        if r <= j1 + 1:
            head.nsize = j1 + 1
            head, m, r = head.next, j1 + 1, max(0, r - 1)
        else:
            head, m, r = head.jump, m - 1 - j1, r - 1 - j1


def _delete_probability(m: int, r: int, j1: int, t: int, k: int) -> Fraction:
    """Chance that the deleted node was in the sample that chose the top jump.

    ``j1`` is the next-sublist size before the deletion and ``m`` the node count
    after it, so ``m - 1 - j1`` is the jump-sublist size before minus one.
    """
    if r == j1 + 1:
        return Fraction(1)
    if k == 1:
        return Fraction(int(j1 == 1 and r <= 1))
    if r < j1 + 1:
        return Fraction(t, j1 - 1)
    return Fraction(t, m - 1 - j1)


def restore_after_delete(head: Node, m: int, r: int, deleted: DeletedNode | None,
                         params: Params, rng: RandomSource,
                         cost: CostRecord | None = None) -> Node:
    """Restore the jump distribution of a sublist that just lost the node at index ``r``.

    ``m`` counts the sublist's nodes after the deletion; ``r = 0`` means the
    deleted node was the sublist head, and ``head`` is then its former successor.
    """
    if cost is None:
        cost = CostRecord()
    k, t, w = params.k, params.t, params.w
    top = head
    while True:
        if not 0 <= r <= m:
            raise ValueError(f"delete position {r} outside a sublist of {m} nodes")
        if m <= w:
            if m == w and head.jump is not None:
                head.make_plain()
                cost.link_updates += 1
            return top
        if r == 0:
            if deleted is None or deleted.jump is None:
                raise ValueError("deleting a sublist head requires the deleted node's jump and nsize")
            j1 = deleted.nsize
        else:
            j1 = head.nsize
        if coin_flip(rng, _delete_probability(m, r, j1, t, k)):
            rebalance(head, m, params, rng, cost)
            return top
        if r == 0:
            # impose the deleted head's jump on its successor, which then plays the deleted role
            successor_role = DeletedNode(head.key, head.jump, head.nsize)
            head.jump, head.nsize = deleted.jump, deleted.nsize
            deleted = successor_role
            cost.link_updates += 1
        if r < j1 + 1:
            head.nsize = j1 - 1
            head, m, r = head.next, j1 - 1, max(0, r - 1)
        else:
            head, m, r = head.jump, m - 1 - j1, r - 1 - j1


def insert(lst: JumpList, x, rng: RandomSource | None = None) -> tuple[bool, CostRecord]:
    """Add ``x``; a key already present leaves the list untouched."""
    rng = rng if rng is not None else lst.rng
    node, r, comps, _ = _spine(lst.header, x)
    cost = CostRecord(comparisons=comps)
    nxt = node.next
    if nxt is not SENTINEL and nxt.key == x:
        return False, cost
    node.next = Node(x, nxt)
    cost.link_updates += 2
    lst.size += 1
    restore_after_insert(lst.header, lst.size + 1, r + 1, lst.params, rng, cost)
    return True, cost


def delete(lst: JumpList, x, rng: RandomSource | None = None) -> tuple[bool, CostRecord]:
    """Remove ``x`` if present."""
    rng = rng if rng is not None else lst.rng
    node, r, comps, _ = _spine(lst.header, x)
    cost = CostRecord(comparisons=comps)
    victim = node.next
    if victim is SENTINEL or victim.key != x:
        return False, cost
    node.next = victim.next
    cost.link_updates += 1
    lst.size -= 1
    info = DeletedNode(victim.key, victim.jump, victim.nsize)
    victim.next = victim.jump = None
    restore_after_delete(lst.header, lst.size + 1, r + 1, info, lst.params, rng, cost)
    return True, cost
